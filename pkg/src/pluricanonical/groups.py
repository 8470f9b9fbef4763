"""Finite groups: abelian groups as products of cyclic groups, and arbitrary
groups given by a multiplication table.

Elements of an :class:`AbelianGroup` and characters are plain tuples of
integers; the group is written additively.  Both group classes expose the
same small interface (``elements``, ``mul``, ``inv``, ``identity``,
``element_order``, ``generated``) so the generating-vector search can treat
them alike.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from math import gcd, prod

__all__ = ["AbelianGroup", "CayleyGroup", "GroupError"]

Element = tuple[int, ...]


class GroupError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{n1} + ... + Z_{nk}."""

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        if not self.orders or any(n < 1 for n in self.orders):
            raise GroupError(f"invalid cyclic orders {self.orders}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        e = 1
        for n in self.orders:
            e = _lcm(e, n)
        return e

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def __len__(self):
        return self.order

    def element(self, *exps) -> Element:
        if len(exps) == 1 and isinstance(exps[0], (tuple, list)):
            exps = tuple(exps[0])
        if len(exps) != self.rank:
            raise GroupError(f"expected {self.rank} exponents, got {len(exps)}")
        return tuple(int(e) % n for e, n in zip(exps, self.orders))

    def elements(self) -> list[Element]:
        out = [()]
        for n in self.orders:
            out = [e + (i,) for e in out for i in range(n)]
        return out

    def mul(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    add = mul

    def inv(self, a: Element) -> Element:
        return tuple(-x % n for x, n in zip(a, self.orders))

    def scale(self, a: Element, k: int) -> Element:
        return tuple(x * k % n for x, n in zip(a, self.orders))

    def element_order(self, a: Element) -> int:
        o = 1
        for x, n in zip(a, self.orders):
            o = _lcm(o, n // gcd(x, n))
        return o

    def cyclic_subgroup(self, g: Element) -> list[Element]:
        return [self.scale(g, j) for j in range(self.element_order(g))]

    def generated(self, gens) -> frozenset:
        """Subgroup generated by ``gens`` (as a set of elements)."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = [tuple(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def generates(self, gens) -> bool:
        return len(self.generated(gens)) == self.order

    def intersect_cyclic(self, gens) -> Element:
        """A generator of the intersection of the cyclic subgroups <g> for g in gens.

        Subgroups of cyclic groups are cyclic, so the intersection is generated
        by any of its elements of maximal order.
        """
        gens = list(gens)
        if not gens:
            raise GroupError("need at least one element")
        common = set(self.cyclic_subgroup(gens[0]))
        for g in gens[1:]:
            common &= set(self.cyclic_subgroup(g))
        return max(sorted(common), key=self.element_order)

    def discrete_log(self, base: Element, target: Element) -> int:
        """Least j >= 0 with j*base == target."""
        x = self.identity
        for j in range(self.element_order(base)):
            if x == target:
                return j
            x = self.mul(x, base)
        raise GroupError(f"{target} is not in <{base}>")

    def __str__(self):
        return " + ".join(f"Z{n}" for n in self.orders)


@dataclass(frozen=True)
class CayleyGroup:
    """A finite group given by its multiplication table on ``range(n)``."""

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = ""
    _inverse: tuple[int, ...] = field(default=(), repr=False, compare=False)

    MAX_ORDER = 512

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        n = len(table)
        if n == 0 or n > self.MAX_ORDER:
            raise GroupError(f"group order {n} outside 1..{self.MAX_ORDER}")
        if any(len(row) != n or sorted(row) != list(range(n)) for row in table):
            raise GroupError("table rows must be permutations of range(n)")
        e = self.identity
        if any(table[e][x] != x or table[x][e] != x for x in range(n)):
            raise GroupError(f"{e} is not an identity")
        inverse = []
        for x in range(n):
            inv = [y for y in range(n) if table[x][y] == e]
            if len(inv) != 1 or table[inv[0]][x] != e:
                raise GroupError(f"element {x} has no two-sided inverse")
            inverse.append(inv[0])
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_inverse", tuple(inverse))
        rng = random.Random(n)
        for _ in range(min(2000, n**3)):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupError(f"table is not associative at {(a, b, c)}")

    @classmethod
    def from_permutations(cls, gens, name: str = "") -> "CayleyGroup":
        """Expand permutation generators (image lists on range(d)) to a table."""
        gens = [tuple(int(x) for x in g) for g in gens]
        if not gens:
            raise GroupError("need at least one generator")
        degree = len(gens[0])
        if any(len(g) != degree or sorted(g) != list(range(degree)) for g in gens):
            raise GroupError("generators must be permutations of one common degree")
        ident = tuple(range(degree))
        index = {ident: 0}
        elems = [ident]
        queue = deque([ident])
        while queue:
            p = queue.popleft()
            for g in gens:
                q = tuple(g[i] for i in p)  # apply p then g
                if q not in index:
                    if len(elems) >= cls.MAX_ORDER:
                        raise GroupError(f"group order exceeds {cls.MAX_ORDER}")
                    index[q] = len(elems)
                    elems.append(q)
                    queue.append(q)
        table = [[index[tuple(b[i] for i in a)] for b in elems] for a in elems]
        return cls(tuple(map(tuple, table)), 0, name)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return self.order

    def elements(self) -> list[int]:
        return list(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def generated(self, gens) -> frozenset:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def generates(self, gens) -> bool:
        return len(self.generated(gens)) == self.order

    def __str__(self):
        return self.name or f"<group of order {self.order}>"
