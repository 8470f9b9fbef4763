"""Stalks of the ideals phi_* O(k eps^* E) at a cyclic quotient singularity.

For 1/m(a_1..a_n) only the lattice points of the singularity lattice with
negative discrepancy contribute.  Each one gives a halfspace
``<x, w> >= -k*u`` in exponent space; the monomials with exponents in the
intersection of these halfspaces with the positive orthant span the stalk.
All arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, gcd, lcm

from .singularity import CyclicSingularityType

__all__ = [
    "RayDatum",
    "MonomialIdeal",
    "negative_rays",
    "primitive_rays",
    "lattice_points",
    "minimal_basis",
    "member",
    "box_bounds",
    "polytope_vertices",
    "stabilization_exponent",
]

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class RayDatum:
    """Scaled lattice point ``w`` and scaled discrepancy ``u`` of one ray."""

    w: tuple[int, ...]
    u: int

    def satisfied(self, alpha, k: int) -> bool:
        return sum(a * b for a, b in zip(alpha, self.w)) >= -k * self.u


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal in n variables, stored by its minimal generators."""

    dim: int
    generators: tuple[Exponent, ...]

    @classmethod
    def from_exponents(cls, dim: int, exps) -> "MonomialIdeal":
        return cls(dim, tuple(sorted(_minimalize(exps))))

    @classmethod
    def unit(cls, dim: int) -> "MonomialIdeal":
        return cls(dim, ((0,) * dim,))

    @property
    def is_unit(self) -> bool:
        return self.generators == ((0,) * self.dim,)

    def __contains__(self, alpha) -> bool:
        return member(self, alpha)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return MonomialIdeal.from_exponents(
            self.dim,
            {tuple(x + y for x, y in zip(a, b)) for a in self.generators for b in other.generators},
        )

    def __pow__(self, k: int) -> "MonomialIdeal":
        if k < 1:
            raise ValueError("power must be positive")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __len__(self):
        return len(self.generators)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize(exps) -> list[Exponent]:
    """Minimal elements under componentwise order (processing by total degree)."""
    kept: list[Exponent] = []
    for e in sorted({tuple(e) for e in exps}, key=lambda e: (sum(e), e)):
        if not any(_divides(k, e) for k in kept):
            kept.append(e)
    return kept


def negative_rays(sing: CyclicSingularityType) -> list[RayDatum]:
    """Rays of negative discrepancy, one per group element of age < 1, by ascending j.

    For the j-th element the point ((j*a_i mod m)/m)_i is scaled by the lcm of
    its denominators.  Non-primitive vectors are kept; their constraints are
    implied by the primitive one in the same direction.
    """
    m = sing.order
    rays = []
    for j in range(1, m):
        coords = [Fraction(j * a % m, m) for a in sing.weights]
        d = sum(coords) - 1
        if d < 0:
            lam = lcm(*(c.denominator for c in coords))
            rays.append(RayDatum(tuple(int(c * lam) for c in coords), int(d * lam)))
    return rays


def primitive_rays(rays) -> list[RayDatum]:
    """Drop rays whose direction already occurs with a primitive generator."""
    best: dict[tuple[int, ...], RayDatum] = {}
    for r in rays:
        g = gcd(*r.w)
        key = tuple(x // g for x in r.w)
        # the constraint is <x, key> >= -u/g; keep the strongest
        cur = best.get(key)
        if cur is None or Fraction(-r.u, g) > Fraction(-cur.u, gcd(*cur.w)):
            best[key] = r
    return [r for r in rays if best.get(tuple(x // gcd(*r.w) for x in r.w)) is r]


def _check_rays(rays):
    rays = list(rays)
    if any(r.u >= 0 for r in rays):
        raise ValueError("rays with nonnegative discrepancy impose no condition; filter them first")
    dims = {len(r.w) for r in rays}
    if len(dims) > 1:
        raise ValueError("rays of mixed dimension")
    return rays


def box_bounds(rays, dim: int) -> tuple[int, ...]:
    """Least l_i > 0 with l_i * e_i in the level-one polyhedron."""
    rays = _check_rays(rays)
    return tuple(
        max([1] + [ceil(Fraction(-r.u, r.w[i])) for r in rays]) for i in range(dim)
    )


def lattice_points(rays, k: int, dim: int | None = None) -> set[Exponent]:
    """Lattice points of Box_{k l} intersected with P_{kD}; they generate I_{kD}."""
    rays = _check_rays(rays)
    if k < 1:
        raise ValueError("k must be positive")
    if dim is None:
        if not rays:
            raise ValueError("dimension required when there are no rays")
        dim = len(rays[0].w)
    bounds = [k * l for l in box_bounds(rays, dim)]
    out: set[Exponent] = set()

    # depth-first over coordinates; prune when even the box corner fails
    def rec(prefix, partial):
        i = len(prefix)
        if i == dim:
            if all(p >= -k * r.u for p, r in zip(partial, rays)):
                out.add(tuple(prefix))
            return
        rest_max = [sum(r.w[j] * bounds[j] for j in range(i + 1, dim)) for r in rays]
        for x in range(bounds[i] + 1):
            nxt = [p + x * r.w[i] for p, r in zip(partial, rays)]
            if all(v + rm >= -k * r.u for v, rm, r in zip(nxt, rest_max, rays)):
                rec(prefix + [x], nxt)

    rec([], [0] * len(rays))
    return out


def minimal_basis(rays, k: int, dim: int | None = None) -> MonomialIdeal:
    """The unique minimal monomial generating set of I_{kD}."""
    rays = _check_rays(rays)
    if dim is None:
        if not rays:
            raise ValueError("dimension required when there are no rays")
        dim = len(rays[0].w)
    if not rays:
        return MonomialIdeal.unit(dim)
    pts = lattice_points(rays, k, dim)
    gens = []
    for a in pts:
        # P is closed upwards, so a is minimal iff no a - e_i lies in P
        if all(
            a[i] == 0 or not all(r.satisfied(a[:i] + (a[i] - 1,) + a[i + 1 :], k) for r in rays)
            for i in range(dim)
        ):
            gens.append(a)
    return MonomialIdeal(dim, tuple(sorted(gens)))


def member(ideal: MonomialIdeal, alpha) -> bool:
    alpha = tuple(alpha)
    if len(alpha) != ideal.dim:
        raise ValueError(f"exponent of length {len(alpha)} for an ideal in {ideal.dim} variables")
    return any(_divides(g, alpha) for g in ideal.generators)


def _solve(rows, rhs):
    """Exact Gaussian elimination; returns None for singular systems."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def polytope_vertices(rays, dim: int | None = None) -> set[tuple[Fraction, ...]]:
    """Vertices of Box_l intersected with P_D, by solving every n-subset of facets."""
    rays = _check_rays(rays)
    if dim is None:
        dim = len(rays[0].w)
    l = box_bounds(rays, dim)
    # each halfspace as (normal, bound): <normal, x> >= bound
    halfspaces = [(tuple(int(i == j) for j in range(dim)), 0) for i in range(dim)]
    halfspaces += [(tuple(-int(i == j) for j in range(dim)), -l[i]) for i in range(dim)]
    halfspaces += [(r.w, -r.u) for r in rays]
    verts = set()
    for subset in combinations(halfspaces, dim):
        x = _solve([h[0] for h in subset], [h[1] for h in subset])
        if x is not None and all(sum(a * b for a, b in zip(h[0], x)) >= h[1] for h in halfspaces):
            verts.add(x)
    return verts


def stabilization_exponent(rays, dim: int | None = None) -> tuple[int, int]:
    """Return ``(s, s_prime)`` with ``s = (n-1) s_prime``.

    ``s_prime`` is the least positive integer clearing all vertex denominators of
    Box_l intersected with P_D; then (I_s)^k = I_{sk} for every k >= 1.
    """
    rays = _check_rays(rays)
    if dim is None:
        dim = len(rays[0].w)
    verts = polytope_vertices(rays, dim)
    s_prime = lcm(1, *(c.denominator for v in verts for c in v))
    return max(dim - 1, 1) * s_prime, s_prime

