import pytest
from hypothesis import given
from hypothesis import strategies as st

from pluricanonical.groups import AbelianGroup, CayleyGroup, GroupError

small_groups = st.lists(st.integers(1, 9), min_size=1, max_size=2).map(lambda o: AbelianGroup(tuple(o)))


def test_abelian_basics():
    G = AbelianGroup((9, 9))
    assert G.order == 81 and G.exponent == 9 and G.rank == 2
    assert G.element(1, 10) == (1, 1)
    assert G.element_order((3, 0)) == 3
    assert G.element_order((3, 1)) == 9
    assert G.inv((2, 5)) == (7, 4)
    assert G.generates([(1, 0), (0, 1)])
    assert not G.generates([(1, 1), (2, 2)])


def test_intersect_cyclic_and_discrete_log():
    G = AbelianGroup((8,))
    h = G.intersect_cyclic([(1,), (2,), (4,)])
    assert G.element_order(h) == 2
    assert G.discrete_log((3,), (1,)) == 3
    with pytest.raises(GroupError):
        G.discrete_log((2,), (1,))


@given(small_groups, st.data())
def test_intersection_matches_brute_force(G, data):
    elems = G.elements()
    gens = data.draw(st.lists(st.sampled_from(elems), min_size=1, max_size=3))
    common = set(G.elements())
    for g in gens:
        common &= {G.scale(g, j) for j in range(G.order)}
    h = G.intersect_cyclic(gens)
    assert set(G.cyclic_subgroup(h)) == common


@given(small_groups, st.data())
def test_order_divides_exponent(G, data):
    g = data.draw(st.sampled_from(G.elements()))
    o = G.element_order(g)
    assert G.exponent % o == 0
    assert G.scale(g, o) == G.identity


def test_cayley_from_permutations():
    s3 = CayleyGroup.from_permutations([[1, 0, 2], [1, 2, 0]], "S3")
    assert s3.order == 6
    orders = sorted(s3.element_order(x) for x in s3.elements())
    assert orders == [1, 2, 2, 2, 3, 3]
    assert str(s3) == "S3"
    a4 = CayleyGroup.from_permutations([[1, 2, 0, 3], [1, 0, 3, 2]])
    assert a4.order == 12
    for x in a4.elements():
        assert a4.mul(x, a4.inv(x)) == a4.identity


def test_cayley_rejects_bad_tables():
    with pytest.raises(GroupError):
        CayleyGroup(((0, 1), (0, 1)))
    with pytest.raises(GroupError):
        CayleyGroup(((1, 0), (0, 1)))  # 0 is not an identity


def test_cayley_generation_by_closure():
    d4 = CayleyGroup.from_permutations([[1, 2, 3, 0], [0, 3, 2, 1]])
    assert d4.order == 8
    r = next(x for x in d4.elements() if d4.element_order(x) == 4)
    assert not d4.generates([r])
    assert len(d4.generated([r])) == 4
