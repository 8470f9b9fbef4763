"""Quotients of products of curves by a diagonal abelian action."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import prod

from .curves import (
    ActionSpec,
    MarkedOrbit,
    ModelError,
    ValidationReport,
    WeightedCurve,
    acts_trivially,
    canonical_monomials,
    monomial_character,
    validate_factor,
)
from .groups import AbelianGroup
from .singularity import (
    CyclicSingularityType,
    ReidTaiClass,
    canonical_form,
    is_a_type,
    reid_tai_class,
)

__all__ = [
    "Factor",
    "ProductQuotientModel",
    "SingularOrbitRecord",
    "InvariantsRecord",
    "UnsupportedBasketError",
    "quasi_etale_check",
    "singular_locus",
    "basket",
    "hodge_invariants",
    "invariant_dimension",
    "k_squared",
    "numerical_cy",
]


class UnsupportedBasketError(ModelError):
    """Surface singularity outside the types with a closed-form K^2 correction."""


@dataclass(frozen=True)
class Factor:
    curve: WeightedCurve
    action: ActionSpec
    orbits: tuple[MarkedOrbit, ...]

    def orbit(self, name: str) -> MarkedOrbit:
        for o in self.orbits:
            if o.name == name:
                return o
        raise KeyError(name)


@dataclass(frozen=True)
class Exactness:
    """Attestation that invariant monomials span the pluricanonical sections.

    ``degrees`` is None for every degree, otherwise the attested degrees.
    """

    degrees: frozenset[int] | None
    note: str = ""

    def covers(self, d: int) -> bool:
        return self.degrees is None or d in self.degrees


class ProductQuotientModel:
    def __init__(
        self,
        group: AbelianGroup,
        factors,
        name: str = "",
        exactness: Exactness | None = None,
        validate: bool = True,
    ):
        self.group = group
        self.factors = tuple(factors)
        self.name = name
        self.exactness = exactness
        self._monomials: dict = {}
        if not self.factors:
            raise ModelError("a model needs at least one factor")
        for i, f in enumerate(self.factors):
            if f.action.group != group:
                raise ModelError(f"factor {i + 1} is acted on by {f.action.group}, model group is {group}")
            if len(f.action.weights[0]) != len(f.curve.names):
                raise ModelError(f"factor {i + 1}: action weights do not match the ring generators")
            for o in f.orbits:
                if len(o.orders) != len(f.curve.names):
                    raise ModelError(f"factor {i + 1}, orbit {o.name}: one vanishing order per generator")
        if validate:
            for rep in self.validate():
                rep.raise_for_errors()

    @property
    def dim(self) -> int:
        return len(self.factors)

    def validate(self) -> list[ValidationReport]:
        reports = []
        for i, f in enumerate(self.factors):
            rep = validate_factor(f.curve, f.action, f.orbits)
            rep.subject = f"factor {i + 1}"
            reports.append(rep)
        ok, bad = quasi_etale_check(self)
        if not ok:
            rep = ValidationReport("model")
            rep.errors.append(f"element {bad} fixes a curve in the product")
            reports.append(rep)
        return reports

    def monomials(self, i: int, d: int) -> list:
        """(exponents, character) pairs spanning H^0(dK) of factor i."""
        key = (i, d)
        if key not in self._monomials:
            f = self.factors[i]
            mons = canonical_monomials(f.curve, d)
            self._monomials[key] = [(m, monomial_character(f.curve, f.action, m)) for m in mons]
        return self._monomials[key]

    @cached_property
    def singular_records(self) -> list["SingularOrbitRecord"]:
        return singular_locus(self)


def _has_fixed_points(f: Factor, group: AbelianGroup, h) -> bool:
    return any(h in group.cyclic_subgroup(o.stabilizer) for o in f.orbits)


def quasi_etale_check(pq: ProductQuotientModel):
    """(True, None) when every fixed locus is isolated, else (False, h).

    A nontrivial h fixes a curve exactly when it acts trivially on one factor
    and has fixed points on every other.
    """
    G = pq.group
    trivial = []
    for g in G.elements():
        if g == G.identity:
            continue
        flags = [acts_trivially(f.curve, f.action, g) for f in pq.factors]
        if not any(flags):
            continue
        if all(t or _has_fixed_points(f, G, g) for t, f in zip(flags, pq.factors)):
            trivial.append(g)
    if trivial:
        return False, trivial[0]
    return True, None


@dataclass(frozen=True)
class SingularOrbitRecord:
    orbits: tuple[str, ...]
    generator: tuple[int, ...]
    raw_type: CyclicSingularityType
    canonical_type: CyclicSingularityType
    count: int
    reid_tai: ReidTaiClass
    orders: tuple[tuple[int, ...], ...] = field(compare=False)

    @property
    def order(self) -> int:
        return self.raw_type.order

    @property
    def noncanonical(self) -> bool:
        return self.reid_tai is ReidTaiClass.NONCANONICAL


def singular_locus(pq: ProductQuotientModel) -> list[SingularOrbitRecord]:
    """One record per tuple of marked orbits whose stabilizers meet nontrivially."""
    G = pq.group
    records = []
    for combo in product(*(f.orbits for f in pq.factors)):
        h = G.intersect_cyclic([o.stabilizer for o in combo])
        m = G.element_order(h)
        if m == 1:
            continue
        weights = []
        for o in combo:
            j = G.discrete_log(o.stabilizer, h)
            index = o.stabilizer_order // m
            if j % index:
                raise ModelError("stabilizer intersection is not cyclic")
            weights.append(j // index * o.rotation % m)
        raw = CyclicSingularityType(m, tuple(weights))
        num = prod(o.orbit_size for o in combo) * m
        if num % G.order:
            raise ModelError(f"non-integral orbit count for {[o.name for o in combo]}")
        count = num // G.order * prod(o.multiplicity for o in combo)
        records.append(
            SingularOrbitRecord(
                orbits=tuple(o.name for o in combo),
                generator=h,
                raw_type=raw,
                canonical_type=canonical_form(raw),
                count=count,
                reid_tai=reid_tai_class(raw),
                orders=tuple(o.orders for o in combo),
            )
        )
    return records


def basket(records) -> list[tuple[CyclicSingularityType, int]]:
    """Point counts per canonical type, sorted by (order, weights)."""
    c = Counter()
    for r in records:
        c[r.canonical_type] += r.count
    return sorted(c.items(), key=lambda kv: (kv[0].order, kv[0].weights))


@dataclass(frozen=True)
class InvariantsRecord:
    p_g: int
    q: tuple[int, ...]  # q_1 .. q_{k-1}

    @property
    def chi(self) -> int:
        """Holomorphic Euler characteristic, sum of (-1)^i h^{i,0}."""
        k = len(self.q) + 1
        return 1 + sum((-1) ** (i + 1) * qi for i, qi in enumerate(self.q)) + (-1) ** k * self.p_g


def _character_counts(pq: ProductQuotientModel, i: int, d: int) -> Counter:
    return Counter(ch for _, ch in pq.monomials(i, d))


def _neg(G: AbelianGroup, ch):
    return tuple(-x % n for x, n in zip(ch, G.orders))


def _invariant_count(pq: ProductQuotientModel, buckets) -> int:
    """Number of tuples with trivial total character, by convolving character counts."""
    G = pq.group
    acc = Counter({G.identity: 1})
    for b in buckets[:-1]:
        nxt = Counter()
        for c1, n1 in acc.items():
            for c2, n2 in b.items():
                nxt[G.mul(c1, c2)] += n1 * n2
        acc = nxt
    last = buckets[-1]
    return sum(n * last.get(_neg(G, c), 0) for c, n in acc.items())


def invariant_dimension(pq: ProductQuotientModel, d: int, factors=None) -> int:
    """dim H^0(dK)^G of the product of the chosen factors (default: all)."""
    if d < 1:
        raise ValueError("d must be positive")
    idx = range(pq.dim) if factors is None else factors
    return _invariant_count(pq, [_character_counts(pq, i, d) for i in idx])


def hodge_invariants(pq: ProductQuotientModel) -> InvariantsRecord:
    q = tuple(
        sum(invariant_dimension(pq, 1, s) for s in combinations(range(pq.dim), j))
        for j in range(1, pq.dim)
    )
    return InvariantsRecord(invariant_dimension(pq, 1), q)


def numerical_cy(pq: ProductQuotientModel) -> bool:
    if pq.dim != 3:
        raise ModelError("numerical Calabi-Yau test needs a threefold")
    inv = hodge_invariants(pq)
    return inv.p_g == 1 and inv.q == (0, 0)


def k_squared(pq: ProductQuotientModel) -> tuple[int, Fraction]:
    """(K^2 of the quotient, K^2 of its minimal resolution) for surfaces."""
    if pq.dim != 2:
        raise ModelError("K^2 is computed for surfaces only")
    g1, g2 = (f.curve.genus for f in pq.factors)
    k2 = Fraction(8 * (g1 - 1) * (g2 - 1), pq.group.order)
    if k2.denominator != 1:
        raise ModelError(f"K^2 = {k2} is not an integer")
    resolved = k2
    for t, count in basket(pq.singular_records):
        b = t.order
        if is_a_type(t):
            continue
        if canonical_form(t) == canonical_form(CyclicSingularityType(b, (1, 1))):
            resolved -= count * Fraction((b - 2) ** 2, b)
            continue
        raise UnsupportedBasketError(f"no K^2 correction implemented for {t}")
    return int(k2), resolved
