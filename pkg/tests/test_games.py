import random

import pytest

from posetspace.catalog import posets_up_to, random_dense_sets, random_poset
from posetspace.games import (
    ConditionViolated,
    SelectorFailed,
    baire_generic_filter,
    canonical_choquet_strategy,
    choquet_referee,
    element_set_selector,
    is_dense_elements,
    landing_filter,
    scripted_random_choquet_i,
    splitting_strategy,
    star_game_referee,
    star_game_solve,
)
from posetspace.poset_core import BinaryTreePoset, incompatible
from posetspace.topology import PosetSpace


# --- strong Choquet ------------------------------------------------------------


def test_canonical_strategy_legality(vee):
    space = PosetSpace(vee, "mf")
    transcript = choquet_referee(
        space, scripted_random_choquet_i(3), canonical_choquet_strategy(space), 10
    )
    assert transcript.illegal is None
    witnesses = [r.witness_ii for r in transcript.rounds]
    for prev, cur in zip(witnesses, witnesses[1:]):
        assert vee.leq(cur, prev)
    for r in transcript.rounds:
        assert r.point in r.open_ii <= r.open_i
    assert transcript.winner_at_horizon == "II"
    assert transcript.intersection


def test_canonical_answer_to_whole_space(vee):
    #I plays the whole space with the point containing a: the least eligible
    # element is a itself, so II answers with its basic open
    space = PosetSpace(vee, "mf")
    strategy = canonical_choquet_strategy(space)

    def opener(position):
        return space.whole, 0  # the point generated by a

    t = choquet_referee(space, opener, strategy, 1)
    assert t.rounds[0].witness_ii == "a"
    assert t.rounds[0].open_ii == space.basic_open("a")


def test_canonical_answer_on_chain(chain2):
    space = PosetSpace(chain2, "mf")
    strategy = canonical_choquet_strategy(space)

    def opener(position):
        return space.basic_open("y"), 0

    t = choquet_referee(space, opener, strategy, 1)
    assert t.rounds[0].witness_ii == "x"  # least element whose open fits
    assert t.rounds[0].open_ii <= space.basic_open("y")


def test_one_point_space_game(chain2):
    space = PosetSpace(chain2, "mf")
    t = choquet_referee(
        space, scripted_random_choquet_i(0), canonical_choquet_strategy(space), 5
    )
    assert t.intersection == space.whole


def test_illegal_point_outside_open(vee):
    space = PosetSpace(vee, "mf")

    def bad_i(position):
        return space.basic_open("a"), 1  # the b-side point is outside N_a

    t = choquet_referee(space, bad_i, canonical_choquet_strategy(space), 3)
    assert t.illegal is not None and t.illegal.player == "I"
    assert t.winner_at_horizon == "II"


def test_illegal_open_escaping_answer(vee):
    space = PosetSpace(vee, "mf")
    moves = iter([(space.basic_open("a"), 0), (space.whole, 1)])

    def escaping_i(position):
        return next(moves)

    t = choquet_referee(space, escaping_i, canonical_choquet_strategy(space), 2)
    assert t.illegal is not None and t.illegal.round_no == 1


def test_illegal_answer_by_ii(vee):
    space = PosetSpace(vee, "mf")

    def bad_ii(position):
        return frozenset()  # misses the point

    t = choquet_referee(space, scripted_random_choquet_i(1), bad_ii, 2)
    assert t.illegal is not None and t.illegal.player == "II"
    assert t.winner_at_horizon == "I"


def test_referee_deterministic(vee):
    space = PosetSpace(vee, "mf")

    def run():
        return choquet_referee(
            space, scripted_random_choquet_i(9), canonical_choquet_strategy(space), 8
        ).log_lines()

    assert run() == run()


def test_canonical_wins_small_sweep():
    for p in posets_up_to(3):
        space = PosetSpace(p, "mf")
        if not space.points:
            continue
        for seed in range(5):
            t = choquet_referee(
                space, scripted_random_choquet_i(seed), canonical_choquet_strategy(space), 10
            )
            assert t.illegal is None
            assert t.intersection, (p.name, seed)


# --- star game -------------------------------------------------------------------


def test_star_chain2(chain2):
    sol = star_game_solve(chain2)
    assert sol.winner == "II"
    assert sol.fixed_point == frozenset()


def test_star_antichain2(antichain2):
    sol = star_game_solve(antichain2)
    assert sol.winner == "II"
    assert sol.fixed_point == frozenset()


def height_oracle(poset):
    """Independent check: recurse on strictly smaller elements only."""
    good = {}

    def rec(p):
        if p in good:
            return good[p]
        good[p] = False  # incompatible pair members are strictly below p
        below = [q for q in poset.elements if poset.lt(q, p)]
        for i, p1 in enumerate(below):
            for p2 in below[i + 1:]:
                if incompatible(poset, p1, p2) and rec(p1) and rec(p2):
                    good[p] = True
                    return True
        return good[p]

    return frozenset(p for p in poset.elements if rec(p))


def test_star_solver_matches_height_oracle_small():
    for p in posets_up_to(4):
        sol = star_game_solve(p)
        assert sol.fixed_point == height_oracle(p)
        assert sol.winner == "II"


def test_star_referee_bintree_follows_guide():
    tree = BinaryTreePoset()
    bits = [0, 1, 0, 1, 1, 0, 1, 0, 0, 1] * 2
    play = star_game_referee(tree, splitting_strategy(tree), bits, 20)
    assert len(play.chain.chain) == 20
    for t, node in enumerate(play.chain.chain):
        assert node == "".join(str(b) for b in bits[: t + 1])
    assert play.log_lines()[0] == "round 0: I <0,1> | II 1"


def test_star_referee_guides_differ():
    tree = BinaryTreePoset()
    f = [0, 0, 1, 0, 1]
    g = [0, 0, 0, 0, 1]  # first difference at bit 2
    pf = star_game_referee(tree, splitting_strategy(tree), f, 5)
    pg = star_game_referee(tree, splitting_strategy(tree), g, 5)
    k = next(i for i in range(5) if f[i] != g[i])
    assert tree.incompatible(pf.chain.chain[k], pg.chain.chain[k])
    for i in range(k):
        assert pf.chain.chain[i] == pg.chain.chain[i]


def test_star_referee_flags_compatible_pair():
    tree = BinaryTreePoset()

    def cheating(current, round_no):
        return "0", "00"  # comparable, hence compatible

    with pytest.raises(ConditionViolated) as err:
        star_game_referee(tree, cheating, [0, 0], 2)
    assert err.value.round_no == 0


def test_star_referee_flags_non_refining_pair():
    tree = BinaryTreePoset()

    def stuck(current, round_no):
        return "0", "1"  # never descends below the previous pick

    with pytest.raises(ConditionViolated) as err:
        star_game_referee(tree, stuck, [0, 0, 0], 3)
    assert err.value.round_no == 1


def test_star_referee_needs_enough_guide_bits():
    tree = BinaryTreePoset()
    with pytest.raises(ValueError):
        star_game_referee(tree, splitting_strategy(tree), [0], 5)


# --- generic filters ---------------------------------------------------------------


def test_baire_chain2(chain2):
    sel = element_set_selector(chain2, ["x"])
    play = baire_generic_filter(chain2, [sel], "y", 1)
    assert play.chain == ("y", "x")
    assert play.chain == baire_generic_filter(chain2, [sel], "y", 4).chain


def test_baire_bintree_lengthens():
    tree = BinaryTreePoset()

    def extend_to(i):
        def sel(p):
            bits = tree.bits(p)
            return tree.encode(bits + "0" * max(1, i - len(bits)))

        return sel

    selectors = [extend_to(i) for i in range(1, 51)]
    play = baire_generic_filter(tree, selectors, "e", 50)
    lengths = [len(tree.bits(c)) for c in play.chain]
    assert lengths == sorted(set(lengths))
    assert lengths[-1] >= 50


def test_baire_selector_failure(vee):
    def liar(p):
        return "c"  # c is not below a

    with pytest.raises(SelectorFailed):
        baire_generic_filter(vee, [liar], "a", 1)


def test_element_selector_reports_non_density(vee):
    sel = element_set_selector(vee, ["a"])
    with pytest.raises(SelectorFailed):
        baire_generic_filter(vee, [sel], "b", 1)
    assert not is_dense_elements(vee, ["a"])
    assert is_dense_elements(vee, ["a", "b"])


def test_baire_lands_in_every_open(vee):
    dense = [frozenset({"a", "b"}), frozenset({"a", "b"})]
    selectors = [element_set_selector(vee, d) for d in dense]
    play = baire_generic_filter(vee, selectors, "c", 2)
    filt = landing_filter(vee, play)
    space = PosetSpace(vee, "mf")
    idx = space.point_index(filt)
    for d in dense:
        assert idx in space.open_from_elements(d)


def test_baire_random_instances():
    rng = random.Random(5)
    for _ in range(60):
        p = random_poset(rng, rng.randint(1, 5))
        dense = random_dense_sets(rng, p, rng.randint(1, 3))
        selectors = [element_set_selector(p, d) for d in dense]
        start = rng.choice(p.elements)
        play = baire_generic_filter(p, selectors, start, len(dense))
        filt = landing_filter(p, play)
        space = PosetSpace(p, "mf")
        idx = space.point_index(filt)
        for d in dense:
            assert idx in space.open_from_elements(d)
