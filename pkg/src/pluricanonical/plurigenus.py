"""Invariant pluricanonical monomials that extend over the resolution.

A G-invariant Kuenneth monomial of multidegree (d, .., d) descends to the
quotient; it extends to a resolution iff at every noncanonical point its local
exponent vector lies in the stalk ideal I_d of that cyclic quotient
singularity.  Counting such monomials bounds P_d from below, and gives P_d
exactly when the model attests that invariant sections are spanned by them.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, islice, product

from .curves import ModelError
from .pq import (
    ProductQuotientModel,
    SingularOrbitRecord,
    hodge_invariants,
    invariant_dimension,
    k_squared,
    numerical_cy,
)
from .singularity import CyclicSingularityType
from .toric import MonomialIdeal, RayDatum, member, minimal_basis, negative_rays

__all__ = [
    "StalkCondition",
    "PlurigenusReport",
    "Verdict",
    "VerdictKind",
    "VolumeReport",
    "SurfaceRow",
    "HypothesisError",
    "stalk_conditions",
    "plurigenus_monomial",
    "verify_witness",
    "codimension_check",
    "volume_and_minimality",
    "kodaira_witnesses",
    "cy_verdict",
    "surface_report",
    "format_witness",
]


class HypothesisError(ValueError):
    """Inputs outside the range where a formula is valid."""


@lru_cache(maxsize=None)
def _stalk_ideal(sing: CyclicSingularityType, d: int) -> tuple[tuple[RayDatum, ...], MonomialIdeal]:
    rays = tuple(negative_rays(sing))
    return rays, minimal_basis(rays, d, sing.dim)


@dataclass(frozen=True)
class StalkCondition:
    record: SingularOrbitRecord
    degree: int
    rays: tuple[RayDatum, ...]
    ideal: MonomialIdeal
    order_map: tuple[tuple[int, ...], ...]

    def local_exponent(self, alphas) -> tuple[int, ...]:
        return tuple(sum(a * o for a, o in zip(alpha, om)) for alpha, om in zip(alphas, self.order_map))

    def satisfied(self, alphas) -> bool:
        return member(self.ideal, self.local_exponent(alphas))


def stalk_conditions(pq: ProductQuotientModel, d: int) -> list[StalkCondition]:
    """One condition per noncanonical singular orbit record."""
    if d < 1:
        raise ValueError("d must be positive")
    out = []
    for rec in pq.singular_records:
        if not rec.noncanonical:
            continue
        rays, ideal = _stalk_ideal(rec.raw_type, d)
        out.append(StalkCondition(rec, d, rays, ideal, rec.orders))
    return out


Witness = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PlurigenusReport:
    degree: int
    invariant_dimension: int
    count: int
    witnesses: tuple[Witness, ...] = field(repr=False)
    exact: bool

    def __post_init__(self):
        if not 0 <= self.count <= self.invariant_dimension:
            raise ModelError("monomial count exceeds the invariant dimension")


def _passing_groups(pq: ProductQuotientModel, d: int, conds: list[StalkCondition]):
    """Yield (count, lists) for each combination of per-factor buckets passing every condition.

    Monomials of each factor are bucketed by character and by their local
    orders at the orbits that occur in some condition; all monomials in a
    bucket behave identically.
    """
    G = pq.group
    k = pq.dim
    vectors = [sorted({c.order_map[i] for c in conds}) for i in range(k)]
    slot = [[vectors[i].index(c.order_map[i]) for i in range(k)] for c in conds]
    buckets = []
    for i in range(k):
        by_char: dict = {}
        for alpha, ch in pq.monomials(i, d):
            sig = tuple(sum(a * o for a, o in zip(alpha, v)) for v in vectors[i])
            by_char.setdefault(ch, {}).setdefault(sig, []).append(alpha)
        buckets.append({ch: sorted(sigs.items()) for ch, sigs in by_char.items()})

    def passes(sigs) -> bool:
        for c, sl in zip(conds, slot):
            local = tuple(sigs[i][sl[i]] for i in range(k))
            if not member(c.ideal, local):
                return False
        return True

    def rec(i, total, sigs, lists):
        if i == k - 1:
            need = tuple(-x % n for x, n in zip(total, G.orders))
            for sig, mons in buckets[i].get(need, ()):
                full = sigs + [sig]
                if passes(full):
                    yield lists + [mons]
            return
        for ch in sorted(buckets[i]):
            t = G.mul(total, ch)
            for sig, mons in buckets[i][ch]:
                yield from rec(i + 1, t, sigs + [sig], lists + [mons])

    yield from rec(0, G.identity, [], [])


def plurigenus_monomial(pq: ProductQuotientModel, d: int, witness_cap: int = 32) -> PlurigenusReport:
    conds = stalk_conditions(pq, d)
    count = 0
    groups = []
    for lists in _passing_groups(pq, d, conds):
        n = 1
        for mons in lists:
            n *= len(mons)
        count += n
        groups.append(lists)
    # each product of sorted lists is itself sorted, so a merge yields the
    # lexicographically first witnesses overall
    merged = heapq.merge(*(product(*lists) for lists in groups))
    witnesses = tuple(islice(merged, witness_cap))
    exact = pq.exactness is not None and pq.exactness.covers(d)
    return PlurigenusReport(d, invariant_dimension(pq, d), count, witnesses, exact)


def verify_witness(pq: ProductQuotientModel, d: int, witness: Witness) -> list[str]:
    """Independent re-check of a witness; returns the list of failures."""
    problems = []
    G = pq.group
    L = pq.group.exponent
    if len(witness) != pq.dim:
        return ["wrong number of factors"]
    total = [0] * G.rank  # exponent of zeta_{L * D_i} summed per generator, in units of 1/L
    for i, (f, alpha) in enumerate(zip(pq.factors, witness)):
        c = f.curve
        if any(a < 0 for a in alpha) or c.weighted_degree(alpha) != c.kappa * d:
            problems.append(f"factor {i + 1}: {alpha} is not of degree {c.kappa * d}")
        if any(t is not None and a > t for a, t in zip(alpha, c.truncation)):
            problems.append(f"factor {i + 1}: {alpha} violates truncation")
        D = f.action.denominator
        for j in range(G.rank):
            basis = G.element(*(int(r == j) for r in range(G.rank)))
            e = sum(a * x for a, x in zip(alpha, f.action.exponents(basis)))
            e += d * f.action.twist[j] * (L // G.orders[j])
            if e % D:
                problems.append(f"factor {i + 1}: character not defined")
            total[j] += e // D
    if any(t % L for t in total):
        problems.append("not invariant")
    for rec in pq.singular_records:
        if not rec.noncanonical:
            continue
        local = [sum(a * o for a, o in zip(alpha, om)) for alpha, om in zip(witness, rec.orders)]
        for ray in negative_rays(rec.raw_type):
            if sum(x * w for x, w in zip(local, ray.w)) < -d * ray.u:
                problems.append(f"fails the stalk condition at {','.join(rec.orbits)}")
                break
    return problems


def codimension_check(pq: ProductQuotientModel, d: int = 2) -> int:
    """Invariant monomials of degree d excluded by some stalk condition."""
    rep = plurigenus_monomial(pq, d, witness_cap=0)
    return rep.invariant_dimension - rep.count


@dataclass(frozen=True)
class VolumeReport:
    vol: int
    r: int
    minimal: bool


def volume_and_minimality(p_g: int, q: int, p2: int, k2_resolved, p3: int | None = None) -> VolumeReport:
    """Canonical volume of a general-type surface from P_2, and the number of (-1)-curves to contract."""
    k2_resolved = Fraction(k2_resolved)
    if k2_resolved <= 0 or p2 == 0:
        raise HypothesisError("need K^2 > 0 and P_2 > 0")
    vol = p2 + q - p_g - 1
    if p3 is not None and Fraction(p3 - p2, 2) != vol:
        raise HypothesisError(f"P_3 = {p3} gives volume {Fraction(p3 - p2, 2)}, P_2 gives {vol}")
    r = vol - k2_resolved
    if r < 0 or r.denominator != 1:
        raise HypothesisError(f"vol - K^2 = {r} is not a nonnegative integer")
    return VolumeReport(vol, int(r), r == 0)


def _private_variables(pq: ProductQuotientModel, w: Witness) -> frozenset:
    return frozenset(
        (i, j)
        for i, (f, alpha) in enumerate(zip(pq.factors, w))
        for j, a in enumerate(alpha)
        if a and f.curve.truncation[j] is None
    )


def kodaira_witnesses(pq: ProductQuotientModel, witnesses, limit: int = 200):
    """Three witnesses each using a free generator absent from the other two, or None.

    The ratios of such sections are algebraically independent, so the
    pluricanonical map has image of dimension at least 2.
    """
    ws = list(witnesses)[:limit]
    vars_ = [_private_variables(pq, w) for w in ws]
    for a, b, c in combinations(range(len(ws)), 3):
        if vars_[a] - vars_[b] - vars_[c] and vars_[b] - vars_[a] - vars_[c] and vars_[c] - vars_[a] - vars_[b]:
            return ws[a], ws[b], ws[c]
    return None


class VerdictKind(str, Enum):
    NOT_CY = "NOT_CY"
    CONSISTENT_CY = "CONSISTENT_CY"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    d_max: int
    reports: tuple[PlurigenusReport, ...] = ()
    degree: int | None = None
    reason: str = ""
    kodaira_triple: tuple | None = None

    @property
    def kodaira_at_least_2(self) -> bool:
        return self.kodaira_triple is not None

    def __str__(self):
        if self.kind is VerdictKind.CONSISTENT_CY:
            return f"CONSISTENT_CY({self.d_max})"
        return self.kind.value


def cy_verdict(pq: ProductQuotientModel, d_max: int = 10, witness_pool: int = 200) -> Verdict:
    if d_max < 1:
        raise ValueError("d_max must be positive")
    if pq.dim != 3 or not numerical_cy(pq):
        return Verdict(VerdictKind.NOT_APPLICABLE, d_max, reason="not a numerical Calabi-Yau threefold")
    reports = []
    for d in range(1, d_max + 1):
        rep = plurigenus_monomial(pq, d, witness_cap=witness_pool)
        reports.append(rep)
        if rep.count >= 2:
            triple = kodaira_witnesses(pq, rep.witnesses, witness_pool)
            return Verdict(
                VerdictKind.NOT_CY, d_max, tuple(reports), d,
                f"P_{d} >= {rep.count} independent extending sections", triple,
            )
        if rep.count == 0 and rep.exact:
            return Verdict(VerdictKind.NOT_CY, d_max, tuple(reports), d, f"P_{d} = 0")
    if all(r.exact for r in reports):
        return Verdict(VerdictKind.CONSISTENT_CY, d_max, tuple(reports), reason=f"P_d = 1 for d <= {d_max}")
    return Verdict(
        VerdictKind.INCONCLUSIVE, d_max, tuple(reports),
        reason="monomial counts are only lower bounds for some degree",
    )


@dataclass(frozen=True)
class SurfaceRow:
    g: int
    k2: int
    k2_resolved: Fraction
    p_g: int
    chi: int
    h0_2k_invariant: int
    p2: int
    vol: int
    vol_minus_k2: Fraction
    exact: bool

    def as_tuple(self):
        return (self.g, self.k2, self.k2_resolved, self.p_g, self.chi, self.h0_2k_invariant,
                self.p2, self.vol, self.vol_minus_k2)


def surface_report(pq: ProductQuotientModel) -> SurfaceRow:
    if pq.dim != 2:
        raise ModelError("surface report needs two factors")
    k2, k2r = k_squared(pq)
    inv = hodge_invariants(pq)
    rep = plurigenus_monomial(pq, 2, witness_cap=0)
    q = inv.q[0]
    vol = rep.count + q - inv.p_g - 1
    return SurfaceRow(
        g=pq.factors[0].curve.genus,
        k2=k2,
        k2_resolved=k2r,
        p_g=inv.p_g,
        chi=inv.chi,
        h0_2k_invariant=rep.invariant_dimension,
        p2=rep.count,
        vol=vol,
        vol_minus_k2=vol - k2r,
        exact=rep.exact,
    )


def format_witness(pq: ProductQuotientModel, w: Witness) -> str:
    parts = []
    for i, (f, alpha) in enumerate(zip(pq.factors, w), 1):
        for name, a in zip(f.curve.names, alpha):
            if a:
                parts.append(f"{name}_{i}" + (f"^{a}" if a > 1 else ""))
    return "*".join(parts) or "1"
