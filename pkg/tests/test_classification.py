from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import cyclic_generating_vector, harvey_cyclic
from pluricanonical.classification import (
    admissible_types,
    classify_candidates,
    cyclic_groups,
    enumerate_types,
    generating_vectors,
    load_groups,
    riemann_hurwitz_genus,
)
from pluricanonical.groups import AbelianGroup, CayleyGroup, GroupError


def check_conditions(g, n, t):
    """Wiman bound, divisibility, branch-point bound, Riemann-Hurwitz."""
    return (
        all(2 <= m <= 4 * g + 2 for m in t)
        and all(n % m == 0 for m in t)
        and len(t) <= Fraction(4 * (g - 1), n) + 4
        and 2 * g - 2 == n * (-2 + sum(Fraction(m - 1, m) for m in t))
    )


def test_small_examples():
    g2 = {(x.n, x.types) for x in enumerate_types(2, r_exact=3)}
    assert (6, ((3, 6, 6),) * 3) in g2
    g3 = {(x.n, x.genera, x.types) for x in enumerate_types(3, r_exact=3)}
    assert (8, (2, 2, 3), ((2, 8, 8), (2, 8, 8), (4, 8, 8))) in g3


def test_no_unramified_or_negative_types():
    assert enumerate_types(2, r_exact=0) == []
    assert all((2, 2, 2) not in x.types for x in enumerate_types(3))


def test_every_tuple_is_admissible():
    for x in enumerate_types(4, r_exact=3):
        assert x.n <= 84 * 3
        for g, t in zip(x.genera, x.types):
            assert check_conditions(g, x.n, t)
            assert riemann_hurwitz_genus(x.n, t) == g


def test_admissible_types_complete_for_small_cases():
    # compare with a direct search over multisets of divisors
    from itertools import combinations_with_replacement

    for n in (6, 8, 12, 24):
        for g in (2, 3):
            divs = [d for d in range(2, n + 1) if n % d == 0]
            brute = set()
            for r in range(3, 7):
                for t in combinations_with_replacement(divs, r):
                    if check_conditions(g, n, t):
                        brute.add(t)
            assert set(admissible_types(g, n)) == brute


def test_generating_vector_examples():
    assert generating_vectors(AbelianGroup((6,)), (3, 6, 6)) == ((2,), (5,), (5,))
    assert generating_vectors(AbelianGroup((8,)), (2, 8, 8)) == ((4,), (1,), (3,))
    assert generating_vectors(AbelianGroup((8,)), (3, 8, 8)) is None
    first, count = generating_vectors(AbelianGroup((6,)), (3, 6, 6), count=True)
    # a in {2,4}, b in {1,5}; c = -(a+b) has order 6 only for (2,5) and (4,1)
    assert first == ((2,), (5,), (5,)) and count == 2


def test_non_abelian_group():
    s3 = CayleyGroup.from_permutations([[1, 0, 2], [1, 2, 0]], "S3")
    w = generating_vectors(s3, (2, 2, 3))
    assert w is not None
    a, b, c = w
    assert s3.mul(s3.mul(a, b), c) == s3.identity
    assert [s3.element_order(x) for x in w] == [2, 2, 3]
    assert generating_vectors(s3, (3, 3, 3)) is None  # <3-cycle> is a proper subgroup


@given(st.integers(2, 24), st.lists(st.integers(2, 24), min_size=3, max_size=3))
def test_cyclic_search_agrees_with_harvey(n, mults):
    mults = sorted(m for m in mults if n % m == 0)
    if len(mults) < 2:
        return
    found = generating_vectors(AbelianGroup((n,)), mults)
    assert (found is not None) == harvey_cyclic(n, mults)


def test_cyclic_search_agrees_with_harvey_exhaustive():
    from itertools import combinations_with_replacement

    for n in range(2, 25):
        divs = [d for d in range(2, n + 1) if n % d == 0]
        for t in combinations_with_replacement(divs, 3):
            found = generating_vectors(AbelianGroup((n,)), t)
            assert (found is not None) == harvey_cyclic(n, t), (n, t)
            if found is not None:
                assert tuple(h[0] for h in found) == cyclic_generating_vector(n, t)


def test_witnesses_are_valid():
    for rec in classify_candidates(6, cyclic_groups([6, 8, 10, 12]), 3):
        G = rec.group
        for t, w in zip(rec.tuple.types, rec.witnesses):
            assert [G.element_order(h) for h in w] == list(t)
            total = G.identity
            for h in w:
                total = G.mul(total, h)
            assert total == G.identity
            assert G.generates(w)


def test_classify_empty_group_list():
    assert classify_candidates(6, []) == []


def test_order_mismatch_is_skipped():
    assert all(r.tuple.n == 8 for r in classify_candidates(3, [AbelianGroup((8,))], 3))


def test_load_groups(tmp_path):
    p = tmp_path / "groups.yaml"
    p.write_text(
        "groups:\n"
        "  - {name: Z6, abelian: [6]}\n"
        "  - {name: S3, permutations: [[1, 0, 2], [1, 2, 0]]}\n"
        "  - {name: Z2, table: [[0, 1], [1, 0]]}\n"
    )
    gs = load_groups(p)
    assert [g.order for g in gs] == [6, 6, 2]
    with pytest.raises(GroupError):
        load_groups(tmp_path / "missing.yaml")
    bad = tmp_path / "bad.yaml"
    bad.write_text("groups:\n  - {name: X}\n")
    with pytest.raises(GroupError):
        load_groups(bad)
