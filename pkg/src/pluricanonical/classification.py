"""Branching data of G-covers of P^1 and their realization by generating vectors."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from pathlib import Path

import yaml

from .groups import AbelianGroup, CayleyGroup, GroupError

__all__ = [
    "TypeTuple",
    "CandidateRecord",
    "admissible_types",
    "enumerate_types",
    "generating_vectors",
    "classify_candidates",
    "load_groups",
    "cyclic_groups",
    "riemann_hurwitz_genus",
]


def riemann_hurwitz_genus(n: int, mults) -> Fraction:
    """Genus of a G-cover of P^1 with |G| = n and the given branching indices."""
    return 1 + Fraction(n, 2) * (-2 + sum(Fraction(m - 1, m) for m in mults))


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def admissible_types(g: int, n: int, r_exact: int | None = None) -> list[tuple[int, ...]]:
    """Sorted types T of genus-g covers with group order n allowed by the necessary conditions.

    Entries are at most 4g + 2 (Wiman) and divide n; the number of branch
    points is at most 4(g - 1)/n + 4; Riemann-Hurwitz holds exactly.
    """
    target = 2 + Fraction(2 * g - 2, n)
    r_max = Fraction(4 * (g - 1), n) + 4
    if r_exact is not None:
        r_max = min(r_max, r_exact)
    allowed = [m for m in _divisors(n) if m <= 4 * g + 2]
    out = []

    def rec(start, prefix, total):
        if total == target and (r_exact is None or len(prefix) == r_exact):
            out.append(tuple(prefix))
        if len(prefix) + 1 > r_max:
            return
        for idx in range(start, len(allowed)):
            m = allowed[idx]
            t = total + Fraction(m - 1, m)
            if t > target:
                break
            rec(idx, prefix + [m], t)

    rec(0, [], Fraction(0))
    return out


@dataclass(frozen=True, order=True)
class TypeTuple:
    n: int
    genera: tuple[int, ...]
    types: tuple[tuple[int, ...], ...]

    @property
    def branch_counts(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.types)

    def __str__(self):
        ts = ", ".join("[" + ",".join(map(str, t)) + "]" for t in self.types)
        return f"n={self.n} g={self.genera} T={ts}"


def enumerate_types(g_max: int, k: int = 3, r_exact: int | None = None) -> list[TypeTuple]:
    """All combinations of k types with genera in 2..g_max and |G| <= 84(g_max - 1)."""
    if g_max < 2:
        raise ValueError("g_max must be at least 2")
    out = []
    for n in range(2, 84 * (g_max - 1) + 1):
        per_factor = [(g, t) for g in range(2, g_max + 1) for t in admissible_types(g, n, r_exact)]
        for combo in combinations_with_replacement(per_factor, k):
            out.append(TypeTuple(n, tuple(g for g, _ in combo), tuple(t for _, t in combo)))
    return out


def generating_vectors(group, mults, count: bool = False):
    """First generating vector of the given type in lexicographic order, or None.

    Elements have the prescribed orders, multiply to the identity and generate
    the group.  With ``count=True`` returns ``(first, number)`` instead.
    """
    mults = tuple(mults)
    if len(mults) < 2:
        raise ValueError("need at least two branching indices")
    elems = group.elements()
    by_order: dict[int, list] = {}
    for x in elems:
        by_order.setdefault(group.element_order(x), []).append(x)
    first, total = None, 0
    for head in product(*(by_order.get(m, []) for m in mults[:-1])):
        acc = group.identity
        for x in head:
            acc = group.mul(acc, x)
        last = group.inv(acc)
        if group.element_order(last) != mults[-1]:
            continue
        vec = head + (last,)
        if not group.generates(vec):
            continue
        if first is None:
            first = vec
            if not count:
                return first
        total += 1
    return (first, total) if count else first


@dataclass(frozen=True)
class CandidateRecord:
    group: object
    tuple: TypeTuple
    witnesses: tuple

    @property
    def group_name(self) -> str:
        return str(self.group)


def classify_candidates(g_max: int, groups, r_exact: int | None = None, k: int = 3) -> list[CandidateRecord]:
    """Type tuples realized by generating vectors in one of the given groups."""
    groups = list(groups)
    if not groups:
        return []
    by_order: dict[int, list] = {}
    for G in groups:
        by_order.setdefault(G.order, []).append(G)
    out = []
    cache: dict = {}
    for tt in enumerate_types(g_max, k, r_exact):
        for G in by_order.get(tt.n, []):
            ws = []
            for t in tt.types:
                key = (id(G), t)
                if key not in cache:
                    cache[key] = generating_vectors(G, t)
                if cache[key] is None:
                    break
                ws.append(cache[key])
            else:
                out.append(CandidateRecord(G, tt, tuple(ws)))
    return out


def cyclic_groups(orders) -> list[AbelianGroup]:
    return [AbelianGroup((n,)) for n in sorted(set(orders))]


def load_groups(path) -> list:
    """Groups from a YAML file with entries ``abelian: [orders]``, ``permutations`` or ``table``."""
    try:
        data = yaml.safe_load(Path(path).read_text("utf-8"))
    except OSError as exc:
        raise GroupError(f"cannot read {path}: {exc.strerror}") from exc
    except yaml.YAMLError as exc:
        raise GroupError(f"{path}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("groups"), list):
        raise GroupError(f"{path}: expected a 'groups' list")
    out = []
    for i, spec in enumerate(data["groups"]):
        name = str(spec.get("name", f"group{i + 1}"))
        if "abelian" in spec:
            out.append(AbelianGroup(tuple(int(x) for x in spec["abelian"])))
        elif "permutations" in spec:
            out.append(CayleyGroup.from_permutations(spec["permutations"], name))
        elif "table" in spec:
            out.append(CayleyGroup(tuple(map(tuple, spec["table"])), int(spec.get("identity", 0)), name))
        else:
            raise GroupError(f"{path}: group {name} needs 'abelian', 'permutations' or 'table'")
    return out
