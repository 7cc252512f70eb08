import itertools

import pytest

from posetspace.catalog import labeled_posets, posets_up_to
from posetspace.poset_core import (
    AntisymmetryViolation,
    BinaryTreePoset,
    DuplicateElement,
    FinitePoset,
    InvalidElementId,
    IrreflexivityViolation,
    UnknownElement,
    UnknownElementInPair,
    incompatible,
    poset_to_strict,
    spot_check_generated,
    strict_to_poset,
    validate_poset,
)


def test_singleton_reflexive_closure():
    p = validate_poset(["a"], [])
    assert p.pairs() == [("a", "a")]


def test_chain_closure(chain2):
    assert set(chain2.pairs()) == {("x", "x"), ("y", "y"), ("x", "y")}


def test_hasse_input_is_closed_transitively():
    p = validate_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq("a", "c")


def test_antisymmetry_violation():
    with pytest.raises(AntisymmetryViolation) as err:
        validate_poset(["p", "q"], [("p", "q"), ("q", "p")])
    assert set(err.value.pair) == {"p", "q"}


def test_cycle_through_closure_is_caught():
    with pytest.raises(AntisymmetryViolation):
        validate_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])


def test_duplicate_and_unknown_elements():
    with pytest.raises(DuplicateElement):
        validate_poset(["a", "a"], [])
    with pytest.raises(UnknownElementInPair):
        validate_poset(["a"], [("a", "z")])
    with pytest.raises(InvalidElementId):
        validate_poset(["a b"], [])


def test_order_axioms_hold_exhaustively():
    # brute-force re-check of all three axioms on every poset with <= 4 elements
    for p in posets_up_to(4):
        names = p.elements
        for a in names:
            assert p.leq(a, a)
        for a, b in itertools.product(names, repeat=2):
            if p.leq(a, b) and p.leq(b, a):
                assert a == b
        for a, b, c in itertools.product(names, repeat=3):
            if p.leq(a, b) and p.leq(b, c):
                assert p.leq(a, c)


def test_incompatible_on_vee(vee):
    assert incompatible(vee, "a", "b") is True
    assert incompatible(vee, "a", "c") is False


def test_incompatible_on_chain(chain2):
    assert incompatible(chain2, "x", "y") is False


def test_incompatible_is_irreflexive_and_symmetric():
    for p in posets_up_to(4):
        for a in p.elements:
            assert incompatible(p, a, a) is False
            for b in p.elements:
                assert incompatible(p, a, b) == incompatible(p, b, a)


def test_incompatible_unknown_element(vee):
    with pytest.raises(UnknownElement):
        incompatible(vee, "a", "zz")


def test_strict_to_poset_chain(chain2):
    assert strict_to_poset(["x", "y"], [("x", "y")], "chain2") == chain2


def test_strict_empty_gives_antichain(antichain2):
    assert strict_to_poset(["a", "b"], [], "antichain2") == antichain2


def test_strict_reflexive_pair_rejected():
    with pytest.raises(IrreflexivityViolation):
        strict_to_poset(["p"], [("p", "p")])


def test_strict_cycle_rejected_via_closure():
    with pytest.raises(IrreflexivityViolation) as err:
        strict_to_poset(["a", "b"], [("a", "b"), ("b", "a")])
    assert err.value.derived


def test_strict_round_trip_exhaustive():
    # strict orders on <= 4 elements are exactly the strict parts of posets
    for p in posets_up_to(4):
        strict = poset_to_strict(p)
        assert strict_to_poset(p.elements, strict, p.name) == p


def test_round_trip_other_direction(chain2):
    assert poset_to_strict(strict_to_poset(["x", "y"], [("x", "y")])) == [("x", "y")]


def test_filters_coincide_across_conversion():
    # the same sets are filters whether the order is given strictly or not
    from posetspace.filters import enumerate_filters

    for p in posets_up_to(3):
        q = strict_to_poset(p.elements, poset_to_strict(p), p.name)
        assert [f.members for f in enumerate_filters(p, "all")] == [
            f.members for f in enumerate_filters(q, "all")
        ]
        assert [f.members for f in enumerate_filters(p, "maximal")] == [
            f.members for f in enumerate_filters(q, "maximal")
        ]
        assert [f.members for f in enumerate_filters(p, "unbounded")] == [
            f.members for f in enumerate_filters(q, "unbounded")
        ]


def test_minimals_and_greatest(vee, chain2, antichain2):
    assert vee.minimals() == ("a", "b")
    assert vee.greatest() == "c"
    assert chain2.greatest() == "y"
    assert antichain2.greatest() is None


def test_restrict_and_dual(vee):
    sub = vee.restrict(["a", "c"])
    assert sub.elements == ("a", "c")
    assert sub.leq("a", "c")
    dual = vee.dual()
    assert dual.leq("c", "a") and not dual.leq("a", "c")
    assert dual.dual() == FinitePoset(vee.elements, [vee.up_mask(i) for i in range(3)], "x")


def test_labeled_poset_counts():
    assert [len(labeled_posets(n)) for n in range(6)] == [1, 1, 3, 19, 219, 4231]


def test_binary_tree_provider_contract():
    tree = BinaryTreePoset()
    spot_check_generated(tree, budget=2)
    assert tree.leq("010", "01")
    assert not tree.leq("01", "010")
    assert tree.incompatible("00", "01") is True
    assert tree.incompatible("0", "01") is False
    assert tree.refinements("e", 1) == ["0", "1"]
