"""Curves in weighted projective space with an abelian group action.

A :class:`WeightedCurve` knows its canonical ring: ``H^0(dK)`` is spanned by
the monomials of weighted degree ``kappa * d`` whose exponents respect the
truncation rules (one generator power is rewritten through the equation).
An :class:`ActionSpec` records how each group generator scales each ring
generator, with the convention ``g . m = zeta^eps * m`` on sections.
A :class:`MarkedOrbit` carries the local data at points with nontrivial
stabilizer; it is declared in configuration and checked by
:func:`validate_marked_orbit`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .cyclotomic import Cyclotomic, parse_cyclotomic
from .groups import AbelianGroup

__all__ = [
    "WeightedCurve",
    "ActionSpec",
    "MarkedOrbit",
    "ModelError",
    "ValidationError",
    "ValidationReport",
    "parse_polynomial",
    "canonical_monomials",
    "monomial_character",
    "basis_change",
    "validate_marked_orbit",
    "validate_factor",
]

Exponent = tuple[int, ...]


class ModelError(ValueError):
    """Inconsistent model declaration."""


class ValidationError(ModelError):
    """Declared data contradicted by computation."""


def parse_polynomial(text: str, names) -> dict[Exponent, Cyclotomic]:
    """Parse ``"y^2 - x0^6 - (z(8)^3)*x1^6"`` into ``{exponents: coefficient}``."""
    names = list(names)
    index = {n: i for i, n in enumerate(names)}
    s = text.replace(" ", "")
    terms = re.findall(r"([+-]?)((?:\([^()]*\)|[^+-])+)", s)
    if "".join(a + b for a, b in terms) != s or not terms:
        raise ModelError(f"cannot parse polynomial {text!r}")
    poly: dict[Exponent, Cyclotomic] = {}
    for sign, body in terms:
        coef = Cyclotomic.rational(-1 if sign == "-" else 1)
        exps = [0] * len(names)
        for factor in body.split("*"):
            if not factor:
                raise ModelError(f"empty factor in {text!r}")
            if factor.startswith("("):
                coef = coef * parse_cyclotomic(factor[1:-1])
                continue
            m = re.fullmatch(r"([A-Za-z_]\w*)(?:\^(\d+))?", factor)
            if m and m.group(1) in index:
                exps[index[m.group(1)]] += int(m.group(2) or 1)
            elif re.fullmatch(r"\d+(?:/\d+)?", factor):
                coef = coef * Fraction(factor)
            else:
                raise ModelError(f"unknown factor {factor!r} in {text!r}")
        key = tuple(exps)
        poly[key] = poly.get(key, Cyclotomic.rational(0)) + coef
    return {k: v for k, v in poly.items() if v}


@dataclass(frozen=True)
class WeightedCurve:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    equation: dict = field(hash=False, compare=False)
    kappa: int
    genus: int
    truncation: tuple[int | None, ...]
    equation_text: str = ""

    def __post_init__(self):
        n = len(self.names)
        if len(self.degrees) != n or len(self.truncation) != n:
            raise ModelError("names, degrees and truncation must have equal length")
        if self.kappa < 1 or self.genus < 2:
            raise ModelError("need kappa >= 1 and genus >= 2")
        degs = {sum(e * d for e, d in zip(k, self.degrees)) for k in self.equation}
        if len(degs) != 1:
            raise ModelError(f"equation {self.equation_text!r} is not weighted homogeneous")
        for i, t in enumerate(self.truncation):
            if t is None:
                continue
            pure = tuple(t + 1 if j == i else 0 for j in range(n))
            if pure not in self.equation:
                raise ModelError(
                    f"truncation {self.names[i]}^{t} needs the term {self.names[i]}^{t + 1} in the equation"
                )

    @property
    def equation_degree(self) -> int:
        k = next(iter(self.equation))
        return sum(e * d for e, d in zip(k, self.degrees))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def weighted_degree(self, alpha) -> int:
        return sum(a * d for a, d in zip(alpha, self.degrees))

    def evaluate(self, point) -> Cyclotomic:
        total = Cyclotomic.rational(0)
        for exps, c in self.equation.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term = term * x**e
            total = total + term
        return total


def canonical_monomials(curve: WeightedCurve, d: int) -> list[Exponent]:
    """Exponent vectors spanning H^0(dK), in lexicographic order."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    target = curve.kappa * d
    n = len(curve.names)
    out: list[Exponent] = []

    def rec(i, remaining, prefix):
        if i == n - 1:
            deg = curve.degrees[i]
            if remaining % deg == 0:
                e = remaining // deg
                t = curve.truncation[i]
                if t is None or e <= t:
                    out.append(tuple(prefix) + (e,))
            return
        top = remaining // curve.degrees[i]
        t = curve.truncation[i]
        if t is not None:
            top = min(top, t)
        for e in range(top + 1):
            rec(i + 1, remaining - e * curve.degrees[i], prefix + [e])

    rec(0, target, [])
    out.sort()
    return out


@dataclass(frozen=True)
class ActionSpec:
    """Diagonal action of an abelian group on the canonical ring.

    ``weights[j][i]`` is the exponent of ``zeta_{n_j * denominator}`` by which
    the j-th group generator multiplies the i-th ring generator; ``twist[j]``
    is an extra exponent per canonical degree d (it comes from the adjunction
    isomorphism and cancels on degree-zero ratios).
    """

    group: AbelianGroup
    weights: tuple[tuple[int, ...], ...]
    twist: tuple[int, ...]
    denominator: int = 1

    def __post_init__(self):
        if len(self.weights) != self.group.rank or len(self.twist) != self.group.rank:
            raise ModelError("one weight row and one twist per group generator")
        if self.denominator < 1:
            raise ModelError("denominator must be positive")

    @property
    def root_order(self) -> int:
        """L such that every scalar in the action is an L-th root of unity."""
        return self.group.exponent * self.denominator

    def exponents(self, h) -> tuple[int, ...]:
        """Exponents of zeta_L by which ``h`` scales each ring generator."""
        L = self.root_order
        n_gen = len(self.weights[0])
        out = [0] * n_gen
        for j, (hj, nj) in enumerate(zip(h, self.group.orders)):
            scale = L // (nj * self.denominator)
            for i in range(n_gen):
                out[i] += hj * self.weights[j][i] * scale
        return tuple(x % L for x in out)


def monomial_character(curve: WeightedCurve, action: ActionSpec, alpha) -> tuple[int, ...]:
    """Character of a canonical-ring monomial, one entry in Z_{n_j} per generator."""
    deg = curve.weighted_degree(alpha)
    if deg % curve.kappa:
        raise ModelError(f"monomial {alpha} has degree {deg}, not a multiple of kappa={curve.kappa}")
    d = deg // curve.kappa
    D = action.denominator
    out = []
    for row, t, n in zip(action.weights, action.twist, action.group.orders):
        v = sum(a * w for a, w in zip(alpha, row)) + d * t
        if v % D:
            raise ModelError(f"monomial {alpha} has no well-defined character (exponent {v} / {D})")
        out.append(v // D % n)
    return tuple(out)


def basis_change(n: int, matrix) -> list[list[int]]:
    """Inverse modulo n of a change of generators of (Z_n)^k.

    ``matrix[r]`` expresses the r-th new generator in the old ones.  The
    returned rows express each old generator in the new ones; for the
    2x2 matrix ((1, b), (-b, -1)) this is ((e, b e), (-b e, -e)) with
    e = (1 - b^2)^(-1) mod n.
    """
    from sympy import Matrix

    M = Matrix(matrix)
    det = int(M.det())
    if gcd(det, n) != 1:
        raise ModelError(f"change of generators has determinant {det}, not a unit mod {n}")
    inv = M.inv_mod(n)
    return [[int(x) % n for x in inv.row(r)] for r in range(inv.rows)]


def apply_basis_change(n: int, matrix, weights, twist):
    """Weights for the old generators from weights declared for new ones."""
    inv = basis_change(n, matrix)
    k = len(inv)
    n_gen = len(weights[0])
    new_w = tuple(
        tuple(sum(inv[j][r] * weights[r][i] for r in range(k)) % n for i in range(n_gen))
        for j in range(k)
    )
    new_t = tuple(sum(inv[j][r] * twist[r] for r in range(k)) % n for j in range(k))
    return new_w, new_t


# --- points ---------------------------------------------------------------


def _degree_one_chart(curve: WeightedCurve, point) -> int:
    for i, (d, x) in enumerate(zip(curve.degrees, point)):
        if d == 1 and not x.is_zero():
            return i
    raise ModelError(f"point {[str(x) for x in point]} has no nonzero coordinate of degree 1")


def normalize_point(curve: WeightedCurve, point) -> tuple[Cyclotomic, ...]:
    c = _degree_one_chart(curve, point)
    inv = point[c].inverse()
    return tuple(x * inv**d for x, d in zip(point, curve.degrees))


def scales_trivially(curve: WeightedCurve, L: int, exps, indices) -> bool:
    """Whether scaling by zeta_L^exps fixes every point supported on ``indices``.

    This holds iff some t has t^deg_i = zeta_L^e_i for all i in ``indices``.
    """
    indices = list(indices)
    for i in indices:
        if curve.degrees[i] == 1:
            t = exps[i]
            return all((curve.degrees[j] * t - exps[j]) % L == 0 for j in indices)
    M = lcm(*(curve.degrees[i] for i in indices)) if indices else 1
    return any(
        all((j * curve.degrees[i] - exps[i] * M) % (L * M) == 0 for i in indices)
        for j in range(L * M)
    )


def support(point) -> list[int]:
    return [i for i, x in enumerate(point) if not x.is_zero()]


def fixes(curve: WeightedCurve, action: ActionSpec, h, point) -> bool:
    return scales_trivially(curve, action.root_order, action.exponents(h), support(point))


def acts_trivially(curve: WeightedCurve, action: ActionSpec, h) -> bool:
    return scales_trivially(curve, action.root_order, action.exponents(h), range(len(curve.names)))


def act_on_point(curve: WeightedCurve, action: ActionSpec, h, point):
    L = action.root_order
    return tuple(x * Cyclotomic.root(L, e) for x, e in zip(point, action.exponents(h)))


def same_point(curve: WeightedCurve, p, q) -> bool:
    return all(a == b for a, b in zip(normalize_point(curve, p), normalize_point(curve, q)))


@dataclass(frozen=True)
class MarkedOrbit:
    """Orbits of points sharing one stabilizer and identical local data.

    ``points`` holds one representative per orbit; the multiplicity is the
    number of such orbits.  The stabilizer generator acts on a local
    parameter by ``zeta_{|stab|}^rotation``; ``orders[i]`` is the vanishing
    order of the i-th ring generator at each point.
    """

    name: str
    points: tuple[tuple[Cyclotomic, ...], ...] = field(compare=False)
    stabilizer: tuple[int, ...]
    stabilizer_order: int
    rotation: int
    orbit_size: int
    orders: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.points)


@dataclass
class ValidationReport:
    subject: str
    errors: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors

    def raise_for_errors(self):
        if self.errors:
            raise ValidationError(f"{self.subject}: " + "; ".join(self.errors))


# --- truncated power series over Q(zeta) -----------------------------------


def _ser_mul(a, b, prec):
    out = [Cyclotomic.rational(0)] * (prec + 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j in range(0, prec + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + x * b[j]
    return out


def _ser_pow(a, e, prec):
    result = [Cyclotomic.rational(1)] + [Cyclotomic.rational(0)] * prec
    base = list(a)
    while e:
        if e & 1:
            result = _ser_mul(result, base, prec)
        e >>= 1
        if e:
            base = _ser_mul(base, base, prec)
    return result


def _affine_eval(poly, param_idx, dep_idx, dep_series, prec):
    """Series of F(t, z(t)) where the parameter coordinate equals t."""
    total = [Cyclotomic.rational(0)] * (prec + 1)
    cache: dict[int, list] = {}
    for (ea, eb), c in poly.items():
        if ea > prec:
            continue
        if eb not in cache:
            cache[eb] = _ser_pow(dep_series, eb, prec)
        zb = cache[eb]
        for k in range(prec + 1 - ea):
            if not zb[k].is_zero():
                total[k + ea] = total[k + ea] + c * zb[k]
    return total


def local_expansion(curve: WeightedCurve, point, prec: int):
    """Local parameter and vanishing orders at ``point`` by solving the equation as a series.

    Returns ``(chart, param, dependent, orders)``; ``orders[dependent]`` is None
    when the expansion vanishes up to ``prec``.
    """
    if len(curve.names) != 3:
        raise ModelError("series validation supports curves with three ring generators")
    p = normalize_point(curve, point)
    c = _degree_one_chart(curve, point)
    others = [i for i in range(3) if i != c]
    if not curve.evaluate(p).is_zero():
        raise ValidationError(f"point {[str(x) for x in point]} does not satisfy the equation")
    for a, b in (others, others[::-1]):
        if not p[a].is_zero():
            continue
        poly: dict[tuple[int, int], Cyclotomic] = {}
        for exps, coef in curve.equation.items():
            key = (exps[a], exps[b])
            poly[key] = poly.get(key, Cyclotomic.rational(0)) + coef
        # dF/dz_b at the point (z_a = 0, z_b = p_b)
        deriv = Cyclotomic.rational(0)
        for (ea, eb), coef in poly.items():
            if ea == 0 and eb > 0:
                deriv = deriv + coef * eb * p[b] ** (eb - 1)
        if deriv.is_zero():
            continue
        series = [p[b]] + [Cyclotomic.rational(0)] * prec
        for k in range(1, prec + 1):
            r = _affine_eval(poly, a, b, series, prec)[k]
            series[k] = -(r / deriv)
        check = _affine_eval(poly, a, b, series, prec)
        if any(not x.is_zero() for x in check):
            raise ValidationError("series solution failed to cancel the equation")
        orders = [0, 0, 0]
        orders[a] = 1
        orders[b] = next((k for k, x in enumerate(series) if not x.is_zero()), None)
        return c, a, b, tuple(orders)
    raise ValidationError(f"no affine coordinate is a local parameter at {[str(x) for x in point]}")


def validate_marked_orbit(
    curve: WeightedCurve, action: ActionSpec, orbit: MarkedOrbit, exhaustive_limit: int = 25000
) -> ValidationReport:
    """Check declared orbit data against the equation and the action."""
    rep = ValidationReport(f"orbit {orbit.name}")
    G = action.group
    L = action.root_order
    h = orbit.stabilizer
    if G.element_order(h) != orbit.stabilizer_order:
        rep.errors.append(f"stabilizer generator {h} has order {G.element_order(h)}, declared {orbit.stabilizer_order}")
        return rep
    if orbit.orbit_size * orbit.stabilizer_order != G.order:
        rep.errors.append(f"orbit size {orbit.orbit_size} x stabilizer {orbit.stabilizer_order} != |G| = {G.order}")
    if gcd(orbit.rotation, orbit.stabilizer_order) != 1:
        rep.errors.append(f"rotation weight {orbit.rotation} not coprime to {orbit.stabilizer_order}")
    prec = max(orbit.orders) + 2
    exps = action.exponents(h)
    for idx, point in enumerate(orbit.points):
        label = f"point {idx} {[str(x) for x in point]}"
        if len(point) != len(curve.names):
            rep.errors.append(f"{label}: wrong number of coordinates")
            continue
        if not curve.evaluate(point).is_zero():
            rep.errors.append(f"{label}: does not satisfy {curve.equation_text}")
            continue
        if not fixes(curve, action, h, point):
            rep.errors.append(f"{label}: not fixed by the stabilizer generator {h}")
            continue
        if G.order <= exhaustive_limit:
            supp = support(point)
            stab = [g for g in G.elements() if scales_trivially(curve, L, action.exponents(g), supp)]
            if len(stab) != orbit.stabilizer_order:
                rep.errors.append(f"{label}: true stabilizer has order {len(stab)}")
        try:
            chart, param, dep, orders = local_expansion(curve, point, prec)
        except ModelError as exc:
            rep.errors.append(f"{label}: {exc}")
            continue
        for i, (want, got) in enumerate(zip(orbit.orders, orders)):
            if got is None:
                rep.errors.append(f"{label}: order of {curve.names[i]} exceeds {prec}, declared {want}")
            elif want != got:
                rep.errors.append(f"{label}: order of {curve.names[i]} is {got}, declared {want}")
        # character of the local parameter z_param = x_param / x_chart^deg
        def ratio_char(i):
            return (exps[i] - curve.degrees[i] * exps[chart]) % L

        rot = ratio_char(param)
        expected = orbit.rotation * (L // orbit.stabilizer_order) % L
        if rot != expected:
            rep.errors.append(
                f"{label}: stabilizer acts on {curve.names[param]}/{curve.names[chart]} by zeta_{L}^{rot}, "
                f"declared rotation zeta_{orbit.stabilizer_order}^{orbit.rotation}"
            )
        if orders[dep]:
            if ratio_char(dep) != orders[dep] * rot % L:
                rep.errors.append(f"{label}: vanishing order of {curve.names[dep]} inconsistent with its character")
        rep.details.setdefault("parameters", []).append(f"{curve.names[param]}/{curve.names[chart]}")
    if G.order <= 5000 and len(orbit.points) > 1:
        for i, p in enumerate(orbit.points):
            for q in orbit.points[i + 1 :]:
                if any(same_point(curve, act_on_point(curve, action, g, p), q) for g in G.elements()):
                    rep.errors.append(f"representatives {p} and {q} lie in one orbit")
    return rep


def validate_factor(curve: WeightedCurve, action: ActionSpec, orbits) -> ValidationReport:
    """Curve-level checks: genus, semi-invariance, faithfulness, Riemann-Hurwitz."""
    rep = ValidationReport("factor " + (curve.equation_text or "?"))
    n1 = len(canonical_monomials(curve, 1))
    if n1 != curve.genus:
        rep.errors.append(f"{n1} canonical monomials in degree 1, declared genus {curve.genus}")
    G = action.group
    L = action.root_order
    for g in (G.element(*(int(i == j) for i in range(G.rank))) for j in range(G.rank)):
        chars = {sum(e * x for e, x in zip(k, action.exponents(g))) % L for k in curve.equation}
        if len(chars) != 1:
            rep.errors.append(f"equation is not semi-invariant under generator {g}")
    kernel = [g for g in G.elements() if g != G.identity and acts_trivially(curve, action, g)]
    if kernel:
        rep.errors.append(f"action is not faithful: {kernel[0]} acts trivially")
    ram = sum(o.multiplicity * o.orbit_size * (o.stabilizer_order - 1) for o in orbits)
    twice = Fraction(2 * curve.genus - 2 - ram, G.order) + 2
    rep.details["quotient_genus"] = twice / 2
    if twice < 0 or (twice / 2).denominator != 1:
        rep.errors.append(f"Riemann-Hurwitz gives quotient genus {twice / 2}; marked orbits incomplete?")
    for o in orbits:
        sub = validate_marked_orbit(curve, action, o)
        rep.errors.extend(sub.errors)
    return rep
