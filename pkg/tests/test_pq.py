from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from pluricanonical.config import load_config, model_from_config
from pluricanonical.curves import (
    ActionSpec,
    MarkedOrbit,
    ValidationError,
    WeightedCurve,
    act_on_point,
    fixes,
    parse_polynomial,
    same_point,
)
from pluricanonical.cyclotomic import parse_cyclotomic
from pluricanonical.groups import AbelianGroup
from pluricanonical.pq import (
    Factor,
    ProductQuotientModel,
    UnsupportedBasketError,
    basket,
    hodge_invariants,
    invariant_dimension,
    k_squared,
    numerical_cy,
    quasi_etale_check,
)
from pluricanonical.singularity import CyclicSingularityType, ReidTaiClass


def as_basket(pq):
    return {str(t): c for t, c in basket(pq.singular_records)}


def genus2_z2_factor(weights, orbits=()):
    names = ("x0", "x1", "y")
    curve = WeightedCurve(names, (1, 1, 3), parse_polynomial("y^2 - x0^6 - x1^6", names), 1, 2, (None, None, 1))
    return Factor(curve, ActionSpec(AbelianGroup((2,)), (weights,), (0,)), tuple(orbits))


def test_z6_singular_locus(z6):
    assert as_basket(z6) == {"1/3(1,1,1)": 4, "1/3(1,1,2)": 24, "1/6(1,1,1)": 8}
    assert sum(r.count for r in z6.singular_records) == 36
    nc = [r for r in z6.singular_records if r.noncanonical]
    assert [str(r.raw_type) for r in nc] == ["1/6(1,1,1)"]


def test_z8_singular_locus(z8):
    assert as_basket(z8) == {
        "1/8(1,1,3)": 6,
        "1/8(1,1,1)": 2,
        "1/4(1,1,3)": 3,
        "1/4(1,1,1)": 1,
        "1/2(1,1,1)": 32,
    }
    raw = {r.orbits: str(r.raw_type) for r in z8.singular_records}
    assert raw[("q0", "q0", "s12")] == "1/8(3,3,1)"
    assert raw[("q1", "q1", "s12")] == "1/8(1,1,1)"


def test_fermat_b4_basket(fermat):
    assert as_basket(fermat(4)) == {"1/4(1,1)": 4, "1/4(1,3)": 4, "1/2(1,1)": 2}


def test_records_are_consistent(z6, z8, fermat):
    for pq in (z6, z8, fermat(3), fermat(4)):
        for r in pq.singular_records:
            assert r.count > 0
            assert r.order == pq.group.element_order(r.generator)
            assert r.canonical_type.order == r.raw_type.order


def test_noncanonical_flag(z6, z8):
    for pq in (z6, z8):
        assert any(r.reid_tai is ReidTaiClass.NONCANONICAL for r in pq.singular_records)


def _all_special_points(pq, i):
    """Every point of factor i with nontrivial stabilizer, with its stabilizer set."""
    f = pq.factors[i]
    G = pq.group
    pts = []
    for o in f.orbits:
        for rep in o.points:
            for g in G.elements():
                q = act_on_point(f.curve, f.action, g, rep)
                if not any(same_point(f.curve, q, p) for p, _ in pts):
                    stab = frozenset(h for h in G.elements() if fixes(f.curve, f.action, h, q))
                    pts.append((q, stab))
    return pts


@pytest.mark.parametrize("name", ["z6", "z8"])
def test_basket_size_conservation(name, request):
    pq = request.getfixturevalue(name)
    G = pq.group
    per_factor = [_all_special_points(pq, i) for i in range(pq.dim)]
    fixed = 0
    for combo in product(*per_factor):
        common = frozenset.intersection(*(s for _, s in combo))
        if len(common) > 1:
            fixed += 1
    from_records = sum(r.count * G.order // r.order for r in pq.singular_records)
    assert fixed == from_records
    assert fixed == {"z6": 64, "z8": 144}[name]


def test_hodge_invariants(z6, z8, fermat):
    for pq in (z6, z8):
        inv = hodge_invariants(pq)
        assert (inv.p_g, inv.q) == (1, (0, 0))
        assert numerical_cy(pq)
    inv = hodge_invariants(fermat(3))
    assert inv.p_g == 9 and inv.q == (0,)


def test_q1_is_sum_of_single_factors(z8):
    inv = hodge_invariants(z8)
    assert inv.q[0] == sum(invariant_dimension(z8, 1, [i]) for i in range(3))


def _naive_invariants(pq, d):
    G = pq.group
    lists = [pq.monomials(i, d) for i in range(pq.dim)]
    n = 0
    for combo in product(*lists):
        total = G.identity
        for _, ch in combo:
            total = G.mul(total, ch)
        n += total == G.identity
    return n


@pytest.mark.parametrize("name,degrees", [("z6", (1, 2, 3)), ("z8", (1, 2, 3))])
def test_invariant_dimension_matches_naive(name, degrees, request):
    pq = request.getfixturevalue(name)
    for d in degrees:
        assert invariant_dimension(pq, d) == _naive_invariants(pq, d)


def test_invariant_dimension_values(z6, fermat):
    assert invariant_dimension(z6, 1) == 1
    assert invariant_dimension(fermat(3), 2) == 81
    assert invariant_dimension(fermat(4), 2) == 382
    assert _naive_invariants(fermat(3), 2) == 81


def test_chi_identity(fermat):
    for b in (3, 4, 5):
        inv = hodge_invariants(fermat(b))
        assert inv.chi == 1 - inv.q[0] + inv.p_g


def test_k_squared(fermat):
    assert k_squared(fermat(3)) == (72, 71)
    assert k_squared(fermat(5)) == (968, 959)


def test_k_squared_needs_surface(z6):
    with pytest.raises(Exception):
        k_squared(z6)


def test_a_type_only_surface_is_crepant():
    # Z2 acting by x1 -> -x1 on both factors: the product has 1/2(1,1) points only
    orbit = MarkedOrbit("p", tuple(tuple(parse_cyclotomic(c) for c in pt) for pt in (("1", "0", "1"), ("1", "0", "-1"))),
                        (1,), 2, 1, 1, (0, 1, 0))
    f = genus2_z2_factor((0, 1, 0), [orbit])
    pq = ProductQuotientModel(AbelianGroup((2,)), [f, f])
    assert as_basket(pq) == {"1/2(1,1)": 4}
    k2, k2r = k_squared(pq)
    assert k2 == k2r == 4


def test_unsupported_basket():
    data = load_config("fermat_b3")
    pq = model_from_config(data)
    # pretend one point is of a type without a closed-form correction
    from pluricanonical.pq import SingularOrbitRecord

    odd = CyclicSingularityType(5, (1, 2))
    pq.__dict__["singular_records"] = pq.singular_records + [
        SingularOrbitRecord(("x", "y"), (0, 0), odd, odd, 1, ReidTaiClass.NONCANONICAL, ((0, 0, 0), (0, 0, 0)))
    ]
    with pytest.raises(UnsupportedBasketError):
        k_squared(pq)


def test_quasi_etale(z6, fermat):
    assert quasi_etale_check(z6) == (True, None)
    assert quasi_etale_check(fermat(3)) == (True, None)


def test_fixed_curve_detected():
    orbit = MarkedOrbit("p", ((parse_cyclotomic("1"), parse_cyclotomic("0"), parse_cyclotomic("1")),),
                        (1,), 2, 1, 1, (0, 1, 0))
    trivial = genus2_z2_factor((0, 0, 0))
    moving = genus2_z2_factor((0, 1, 0), [orbit])
    pq = ProductQuotientModel(AbelianGroup((2,)), [trivial, moving], validate=False)
    assert quasi_etale_check(pq) == (False, (1,))
    with pytest.raises(ValidationError):
        ProductQuotientModel(AbelianGroup((2,)), [trivial, moving])


def test_numerical_cy_false_for_large_pg():
    f = genus2_z2_factor((0, 1, 0))
    pq = ProductQuotientModel(AbelianGroup((2,)), [f, f, f], validate=False)
    assert hodge_invariants(pq).p_g == 4
    assert not numerical_cy(pq)


def test_bad_orbit_data_rejected():
    data = load_config("z6_cy3")
    data["factors"][0] = dict(data["factors"][0])
    orbits = [dict(o) for o in data["factors"][0]["orbits"]]
    orbits[0]["orders"] = [0, 2, 0]
    data["factors"][0]["orbits"] = orbits
    with pytest.raises(ValidationError):
        model_from_config(data)
