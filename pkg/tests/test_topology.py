import pytest

from posetspace.catalog import posets_up_to
from posetspace.topology import (
    NotABasis,
    PosetSpace,
    reduce_countable_subposet,
    restriction_homeomorphism_check,
    separation_check,
)
from posetspace.poset_core import UnknownElement, validate_poset


def test_basic_open_examples(vee, chain2):
    mf = PosetSpace(vee, "mf")
    assert mf.basic_open("c") == {0, 1}
    assert mf.basic_open("a") == {0}
    one = PosetSpace(chain2, "mf")
    assert one.basic_open("y") == {0}
    with pytest.raises(UnknownElement):
        mf.basic_open("zz")


def test_basic_open_monotone():
    for p in posets_up_to(4):
        sp = PosetSpace(p, "mf")
        for a in p.elements:
            for b in p.elements:
                if p.leq(a, b):
                    assert sp.basic_open(a) <= sp.basic_open(b)


def test_separation_chain2_uf(chain2):
    rep = separation_check(PosetSpace(chain2, "uf"))
    assert rep.t0 and rep.t1 and rep.uf_equals_mf


def test_one_point_space():
    p = validate_poset(["a"], [])
    rep = separation_check(PosetSpace(p, "mf"))
    assert rep.t0 and rep.t1


def test_separation_sweep_small():
    # acceptance covers <= 5; keep the module test at <= 4 for speed
    for p in posets_up_to(4):
        mf = separation_check(PosetSpace(p, "mf"))
        assert mf.t1 and mf.t0
        uf = separation_check(PosetSpace(p, "uf"))
        assert uf.t0
        if uf.t1:
            assert uf.uf_equals_mf


def test_is_open(vee):
    sp = PosetSpace(vee, "mf")
    assert sp.is_open(frozenset())
    assert sp.is_open(sp.whole)
    assert sp.is_open(sp.basic_open("a"))


def test_reduce_vee(vee):
    result = reduce_countable_subposet(vee, ["a", "b"])
    assert set(result.kept) >= {"a", "b"}
    assert len(PosetSpace(result.subposet, "mf").points) == 2
    assert restriction_homeomorphism_check(vee, result.subposet).ok


def test_reduce_identity_seed(vee):
    result = reduce_countable_subposet(vee, vee.elements)
    assert result.kept == vee.elements
    rep = restriction_homeomorphism_check(vee, result.subposet)
    assert rep.ok


def test_reduce_chain2_seed_x(chain2):
    result = reduce_countable_subposet(chain2, ["x"])
    assert result.kept == ("x",)
    assert restriction_homeomorphism_check(chain2, result.subposet).ok


def test_reduce_rejects_non_basis(vee):
    with pytest.raises(NotABasis):
        reduce_countable_subposet(vee, ["c"])


def test_reduce_output_always_homeomorphic():
    # every valid seed basis on every small poset
    for p in posets_up_to(3):
        sp = PosetSpace(p, "mf")
        for r in range(1, 2 ** len(p)):
            seed = [e for i, e in enumerate(p.elements) if r >> i & 1]
            try:
                result = reduce_countable_subposet(p, seed)
            except NotABasis:
                continue
            assert restriction_homeomorphism_check(p, result.subposet).ok, (p.name, seed)


def test_restriction_check_counterexample(vee):
    rep = restriction_homeomorphism_check(vee, ["c"])
    assert not rep.ok


def test_restriction_identity(vee):
    assert restriction_homeomorphism_check(vee, vee.elements).ok
