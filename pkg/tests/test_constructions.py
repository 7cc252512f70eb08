import random
from fractions import Fraction

import pytest

from posetspace.catalog import all_topologies, posets_up_to, random_poset
from posetspace.constructions import (
    EmptyFactorList,
    FiniteTopSpace,
    INF,
    MetricAxiomViolation,
    NotDescending,
    NotOpen,
    RationalMetric,
    formal_ball_poset,
    gdelta_mf_poset,
    gdelta_uf_poset,
    open_subspace_uf,
    point_chain,
    precompact_open_poset,
    product_poset,
)
from posetspace.topology import PosetSpace


# --- products ---------------------------------------------------------------


def test_product_antichains(antichain2):
    r = product_poset([antichain2, antichain2])
    assert len(r.poset) == 9  # tops adjoined to both factors
    assert len(r.space.points) == 4
    assert r.ok


def test_product_chains(chain2):
    r = product_poset([chain2, chain2])
    assert len(r.space.points) == 1
    assert r.ok


def test_product_single_factor(vee):
    r = product_poset([vee])
    assert len(r.space.points) == len(PosetSpace(vee, "mf").points)
    assert r.ok
    # identity on coordinates: each tuple maps to the filter with the same generator
    for combo, i in r.phi.items():
        assert r.phi_inv[i] == combo


def test_product_empty_factor_list():
    with pytest.raises(EmptyFactorList):
        product_poset([])


def test_product_counts_small_sweep():
    posets = posets_up_to(3)
    for p1 in posets:
        for p2 in posets:
            r = product_poset([p1, p2])
            assert r.ok, (p1.name, p2.name, r.failure)
            n1 = len(PosetSpace(p1, "mf").points)
            n2 = len(PosetSpace(p2, "mf").points)
            assert len(r.space.points) == n1 * n2


def test_product_three_factors(chain2, antichain2, vee):
    r = product_poset([chain2, antichain2, vee])
    assert r.ok
    assert len(r.space.points) == 1 * 2 * 2


def test_product_random_triples():
    rng = random.Random(31)
    for _ in range(30):
        factors = [random_poset(rng, rng.randint(1, 4)) for _ in range(3)]
        r = product_poset(factors)
        assert r.ok
        want = 1
        for f in factors:
            want *= len(PosetSpace(f, "mf").points)
        assert len(r.space.points) == want


# --- G-delta, maximal side ---------------------------------------------------


def test_gdelta_mf_whole_space(vee):
    r = gdelta_mf_poset(vee, [["a", "b", "c"]])
    assert r.ok and not r.empty_intersection
    assert len(r.stage_space.points) == 2


def test_gdelta_mf_single_point_open(vee):
    # the open generated by the element a alone cuts the space to one point
    r = gdelta_mf_poset(vee, [["a"]])
    assert r.ok
    assert len(r.stage_space.points) == 1
    back = {r.psi[j] for j in r.psi}
    assert back == set(r.intersection)


def test_gdelta_mf_element_set_with_top(vee):
    # {a, c} as an element set generates the union of both basic opens,
    # which is the whole space, so nothing is cut away
    r = gdelta_mf_poset(vee, [["a", "c"]])
    assert r.ok
    assert len(r.stage_space.points) == 2


def test_gdelta_mf_empty_intersection(vee):
    r = gdelta_mf_poset(vee, [["a"], ["b"]])
    assert r.empty_intersection
    assert r.ok
    assert len(r.stage_space.points) == 0


def test_gdelta_mf_stage_cap(vee):
    r = gdelta_mf_poset(vee, [["a"], ["a", "b"]])
    assert r.stage_cap == 3


def test_gdelta_mf_random_instances():
    rng = random.Random(42)
    for _ in range(120):
        p = random_poset(rng, rng.randint(1, 5))
        k = rng.randint(0, 3)
        opens = [
            [e for e in p.elements if rng.random() < 0.6] for _ in range(k)
        ]
        r = gdelta_mf_poset(p, opens)
        assert r.ok, (p.pairs(), opens, r.failure)
        assert len(r.stage_space.points) == len(r.intersection)


# --- open subspaces and G-delta, unbounded side -------------------------------


def test_open_subspace_whole(vee):
    sp = PosetSpace(vee, "uf")
    r = open_subspace_uf(vee, sp.whole)
    assert r.kept == vee.elements
    assert r.ok


def test_open_subspace_basic(vee):
    sp = PosetSpace(vee, "uf")
    r = open_subspace_uf(vee, sp.basic_open("a"))
    assert r.kept == ("a",)
    assert len(r.sub_space.points) == 1
    assert r.ok


def test_open_subspace_empty(vee):
    r = open_subspace_uf(vee, frozenset())
    assert r.kept == ()
    assert len(r.sub_space.points) == 0
    assert r.ok


def test_open_subspace_rejects_non_point_set(vee):
    # finite filter spaces are discrete, so every genuine point set is open;
    # only sets that are not point sets at all can be rejected
    sp = PosetSpace(vee, "uf")
    assert all(sp.is_open(frozenset(s)) for s in [(), (0,), (1,), (0, 1)])
    with pytest.raises(NotOpen):
        open_subspace_uf(vee, frozenset([5]))


def test_open_subspace_every_open_works(vee):
    sp = PosetSpace(vee, "uf")
    for r in range(2 ** len(sp.points)):
        u = frozenset(i for i in range(len(sp.points)) if r >> i & 1)
        assert open_subspace_uf(vee, u).ok


def test_gdelta_uf_whole(vee):
    r = gdelta_uf_poset(vee, [["a", "b", "c"]])
    assert r.ok
    assert all(r.claims.values())
    assert {f.members for f in r.sub_space.points} == {
        f.members for f in PosetSpace(vee, "uf").points
    }


def test_gdelta_uf_single_open(vee):
    r = gdelta_uf_poset(vee, [["a"], ["a"]])
    assert r.ok
    assert len(r.sub_space.points) == 1
    assert r.sub_space.points[0].members == {"a", "c"}
    assert r.ranks == {"a": INF, "c": 0}


def test_gdelta_uf_not_descending(vee):
    with pytest.raises(NotDescending):
        gdelta_uf_poset(vee, [["a"], ["a", "b"]])


def test_uf_rank_is_antitone():
    # smaller basic opens never get smaller ranks
    rng = random.Random(13)
    for _ in range(60):
        p = random_poset(rng, rng.randint(1, 5))
        space = PosetSpace(p, "uf")
        opens = []
        current = list(p.elements)
        for _ in range(rng.randint(1, 3)):
            current = [e for e in current if rng.random() < 0.8]
            opens.append(list(current))
        r = gdelta_uf_poset(p, opens)
        for a in r.carrier:
            for b in r.carrier:
                if space.basic_open(a) <= space.basic_open(b):
                    assert r.ranks[a] >= r.ranks[b]


def test_gdelta_uf_random_instances():
    rng = random.Random(7)
    for _ in range(120):
        p = random_poset(rng, rng.randint(1, 5))
        k = rng.randint(0, 3)
        opens = []
        elems = list(p.elements)
        current = list(elems)
        space = PosetSpace(p, "uf")
        for _ in range(k):
            current = [e for e in current if rng.random() < 0.8]
            opens.append(list(current))
        # make the element sets descending as point sets by construction
        pts = [space.open_from_elements(u) for u in opens]
        if any(not b <= a for a, b in zip(pts, pts[1:])):
            continue
        r = gdelta_uf_poset(p, opens)
        assert r.ok, (p.pairs(), opens, r.failure, r.claims)


# --- formal balls -------------------------------------------------------------


@pytest.fixture
def two_points():
    return RationalMetric(["p0", "p1"], {("p0", "p1"): 1}, "two")


def test_metric_validation():
    with pytest.raises(MetricAxiomViolation):
        RationalMetric(["a", "b"], {("a", "b"): 0})
    with pytest.raises(MetricAxiomViolation):
        RationalMetric(["a", "b"], {})
    with pytest.raises(MetricAxiomViolation):
        RationalMetric(
            ["a", "b", "c"],
            {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 5},
        )


def test_ball_order_examples(two_points):
    balls = formal_ball_poset(two_points, max_denom=8, max_radius=2)
    assert balls.leq("B(p0,1/2)", "B(p1,2)")  # 1 + 1/2 < 2
    assert not balls.leq("B(p0,1/2)", "B(p1,1)")  # 1 + 1/2 >= 1
    assert balls.leq("B(p0,1/2)", "B(p0,1/2)")


def test_halving_chain_descends(two_points):
    balls = formal_ball_poset(two_points, max_denom=64, max_radius=2)
    chain = point_chain(balls, "p0", 6)
    for above, below in zip(chain.chain, chain.chain[1:]):
        assert balls.leq(below, above) and below != above


def test_chain_separates_points(two_points):
    balls = formal_ball_poset(two_points, max_denom=64, max_radius=2)
    chain = point_chain(balls, "p0", 6)
    half_min = two_points.min_positive_distance() / 2
    deep = [c for c in chain.chain if balls.decode(c)[1] < half_min]
    assert deep
    assert all(not balls.contains_point(c, "p1") for c in deep)
    assert all(balls.contains_point(c, "p0") for c in chain.chain)


def test_ball_membership_mod_grid(two_points):
    balls = formal_ball_poset(two_points, max_denom=64, max_radius=2)
    chain = point_chain(balls, "p0", 6)
    # balls around p0 are generated members exactly when the radius clears
    # the center distance by at least the grid floor
    assert chain.generates("B(p0,1)")
    assert chain.generates("B(p1,2)")
    assert not chain.generates("B(p1,1)")


def test_strict_relation_transitive_on_grid(two_points):
    balls = formal_ball_poset(two_points, max_denom=4, max_radius=1)
    grid = [
        balls.encode(p, Fraction(k, 4))
        for p in two_points.points
        for k in range(1, 5)
    ]
    lt = {(x, y) for x in grid for y in grid if x != y and balls.leq(x, y)}
    for x, y in lt:
        for z in grid:
            if (y, z) in lt:
                assert (x, z) in lt
    # antisymmetry of the reflexive closure
    assert not any((y, x) in lt for x, y in lt)


def test_refinements_monotone_and_strict(two_points):
    balls = formal_ball_poset(two_points, max_denom=8, max_radius=2)
    root = "B(p0,2)"
    r1 = balls.refinements(root, 1)
    r2 = balls.refinements(root, 2)
    assert set(r1) <= set(r2)
    assert all(balls.leq(r, root) and r != root for r in r2)


def test_ball_incompatibility(two_points):
    balls = formal_ball_poset(two_points, max_denom=8, max_radius=2)
    assert balls.incompatible("B(p0,1/4)", "B(p1,1/4)") is True
    assert balls.incompatible("B(p0,2)", "B(p1,2)") is False


# --- precompact-open poset -----------------------------------------------------


def test_precompact_discrete_two_point():
    r = precompact_open_poset(FiniteTopSpace.discrete(["x", "y"]))
    assert len(r.poset) == 3
    assert len(r.space.points) == 2
    assert r.hausdorff and r.bijective and r.opens_correspond


def test_precompact_discrete_one_point():
    r = precompact_open_poset(FiniteTopSpace.discrete(["x"]))
    assert len(r.poset) == 1
    assert len(r.space.points) == 1
    assert r.bijective


def test_precompact_sierpinski_flags_failure():
    r = precompact_open_poset(FiniteTopSpace.sierpinski())
    assert not r.hausdorff
    assert not r.bijective


def test_precompact_order_valid_on_small_topologies():
    for n in range(1, 4):
        for space in all_topologies(n):
            r = precompact_open_poset(space)
            p = r.poset
            for a in p.elements:
                assert p.leq(a, a)
                for b in p.elements:
                    if p.leq(a, b) and p.leq(b, a):
                        assert a == b
                    for c in p.elements:
                        if p.leq(a, b) and p.leq(b, c):
                            assert p.leq(a, c)
            if r.hausdorff:
                assert r.bijective and r.opens_correspond
