"""Referees, strategies, and solvers for the two games, plus generic filters.

The strong Choquet game is played on a filter space: player I shrinks an
open set around a chosen point, player II answers with a sub-open around
that point.  The star game is played on the poset itself: player I keeps
producing incompatible pairs below player II's picks.  Infinite games are
truncated at a caller-supplied horizon and verdicts at the horizon are
bounded statements, except for the finite-poset star game, which the
solver settles exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .poset_core import FinitePoset, PosetError, incompatible
from .filters import ChainFilter, Filter, upward_closure
from .topology import PosetSpace


class IllegalMove(Exception):
    def __init__(self, player, round_no, reason):
        super().__init__(f"illegal move by {player} in round {round_no}: {reason}")
        self.player = player
        self.round_no = round_no
        self.reason = reason


class ConditionViolated(PosetError):
    def __init__(self, round_no, reason):
        super().__init__(f"round {round_no}: {reason}")
        self.round_no = round_no
        self.reason = reason


class SelectorFailed(PosetError):
    def __init__(self, index, element, reason="selector returned an illegal element"):
        super().__init__(f"dense-open selector {index} failed at {element!r}: {reason}")
        self.index = index
        self.element = element


@dataclass(frozen=True)
class Strategy:
    """A deterministic callable from positions to moves, with a name."""

    name: str
    move: object

    def __call__(self, *args):
        return self.move(*args)

    def __str__(self):
        return self.name


# ---------------------------------------------------------------------------
# strong Choquet game


@dataclass(frozen=True)
class ChoquetRound:
    open_i: frozenset
    point: int
    open_ii: frozenset
    witness_ii: object = None  # generating poset element of II's basic open, if any


@dataclass
class ChoquetTranscript:
    space: PosetSpace
    rounds: list = field(default_factory=list)
    illegal: IllegalMove | None = None

    @property
    def intersection(self) -> frozenset:
        out = self.space.whole
        for r in self.rounds:
            out &= r.open_ii
        return out

    @property
    def winner_at_horizon(self) -> str:
        if self.illegal is not None:
            return "II" if self.illegal.player == "I" else "I"
        return "II" if self.intersection else "I"

    def log_lines(self):
        lines = []
        for t, r in enumerate(self.rounds):
            lines.append(
                f"round {t}: I ({self.space.set_str(r.open_i)}, {self.space.points[r.point]})"
                f" | II {self.space.set_str(r.open_ii)}"
            )
        if self.illegal is not None:
            lines.append(f"illegal: {self.illegal}")
        lines.append(f"winner-at-horizon: {self.winner_at_horizon}")
        return lines


def canonical_choquet_strategy(space: PosetSpace) -> Strategy:
    """Player II answers with the basic open of the least eligible element.

    Eligible means: the element lies in the filter just played, its basic
    open sits inside player I's open, and it refines the element that
    generated II's previous answer, so II's witnesses descend in the
    poset.  A legal game always leaves an eligible element.
    """

    def move(position):
        prev = None
        for r in position.rounds:
            if r.witness_ii is not None:
                prev = r.witness_ii
        u, x = position.pending
        filt = position.space.points[x]
        for q in position.space.poset.elements:
            if q not in filt.members:
                continue
            if prev is not None and not position.space.poset.leq(q, prev):
                continue
            if position.space.basic_open(q) <= u:
                return q
        raise AssertionError("no eligible element; the inputs broke the game rules")

    return Strategy("canonical-least-refinement", move)


def scripted_random_choquet_i(seed: int) -> Strategy:
    """A legal player-I script: random basic open inside II's last answer."""
    rng = random.Random(seed)

    def move(position):
        space = position.space
        if position.rounds:
            prev = position.rounds[-1].open_ii
        else:
            prev = space.whole
        eligible = [
            p for p in space.poset.elements
            if space.basic_open(p) and space.basic_open(p) <= prev
        ]
        p = rng.choice(eligible)
        u = space.basic_open(p)
        x = rng.choice(sorted(u))
        return u, x

    return Strategy(f"scripted-random-{seed}", move)


class _Position:
    def __init__(self, space):
        self.space = space
        self.rounds = []
        self.pending = None


def choquet_referee(space: PosetSpace, strategy_i, strategy_ii, rounds: int) -> ChoquetTranscript:
    """Play the strong Choquet game for a bounded number of rounds.

    Enforces every legality rule; an illegal move aborts the run with the
    offender losing.  At the horizon the nonemptiness of the intersection
    of II's opens decides the bounded verdict.
    """
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    transcript = ChoquetTranscript(space)
    pos = _Position(space)
    for t in range(rounds):
        try:
            u, x = strategy_i(pos)
            u = frozenset(u)
            if not space.is_open(u):
                raise IllegalMove("I", t, "played set is not open")
            if x not in u:
                raise IllegalMove("I", t, "point lies outside the played open")
            if pos.rounds and not u <= pos.rounds[-1].open_ii:
                raise IllegalMove("I", t, "open not inside II's previous answer")
        except IllegalMove as bad:
            transcript.illegal = bad
            return transcript
        pos.pending = (u, x)
        try:
            answer = strategy_ii(pos)
            if isinstance(answer, tuple):
                v, witness = answer
            elif isinstance(answer, (frozenset, set)):
                v, witness = frozenset(answer), None
            else:
                v, witness = space.basic_open(answer), answer
            if not space.is_open(v):
                raise IllegalMove("II", t, "played set is not open")
            if x not in v:
                raise IllegalMove("II", t, "answer misses player I's point")
            if not v <= u:
                raise IllegalMove("II", t, "answer not inside player I's open")
        except IllegalMove as bad:
            transcript.illegal = bad
            return transcript
        rnd = ChoquetRound(u, x, v, witness)
        pos.rounds.append(rnd)
        pos.pending = None
        transcript.rounds.append(rnd)
    return transcript


# ---------------------------------------------------------------------------
# the star game


@dataclass(frozen=True)
class StarSolution:
    winner: str
    fixed_point: frozenset
    strategy: Strategy
    iterations: int
    witness_pairs: tuple = ()  # (element, pair) rows of player I's table, when I wins


def star_game_solve(poset: FinitePoset) -> StarSolution:
    """Solve the star game on a finite poset exactly.

    Computes the greatest set S of elements below which an incompatible
    pair with both members in S exists, by shrinking from the whole
    carrier.  Player I wins exactly when some starting incompatible pair
    has both members in S; otherwise any behaviour of player II wins, and
    the returned strategy is the constant first pick.  On finite posets
    the set always empties, because a minimal element of S would need
    strictly smaller members of S below it.
    """
    elems = poset.elements
    s = set(elems)
    iterations = 0

    def splittable(p, pool):
        dp = [q for q in pool if poset.leq(q, p)]
        for i, p1 in enumerate(dp):
            for p2 in dp[i + 1:]:
                if incompatible(poset, p1, p2):
                    return (p1, p2)
        return None

    while True:
        iterations += 1
        keep = {p for p in s if splittable(p, s)}
        if keep == s:
            break
        s = keep

    opener = None
    pool = sorted(s, key=poset.index)
    for i, p1 in enumerate(pool):
        for p2 in pool[i + 1:]:
            if incompatible(poset, p1, p2):
                opener = (p1, p2)
                break
        if opener:
            break

    if opener is not None:
        table = {p: splittable(p, s) for p in sorted(s, key=poset.index)}

        def move_i(current, round_no):
            return opener if current is None else table[current]

        return StarSolution(
            "I", frozenset(s), Strategy("split-inside-core", move_i), iterations,
            tuple(sorted(table.items())),
        )

    def move_ii(pair, round_no):
        return 1

    return StarSolution("II", frozenset(s), Strategy("constant-first-pick", move_ii), iterations)


def splitting_strategy(tree) -> Strategy:
    """Player I plays the two one-bit extensions of the current node."""

    def move(current, round_no):
        base = tree.bits(current) if current is not None else ""
        return tree.encode(base + "0"), tree.encode(base + "1")

    return Strategy("one-bit-splits", move)


@dataclass(frozen=True)
class StarPlay:
    chain: ChainFilter
    pairs: tuple
    picks: tuple

    def log_lines(self):
        return [
            f"round {t}: I <{p1},{p2}> | II {n}"
            for t, ((p1, p2), n) in enumerate(zip(self.pairs, self.picks))
        ]


def _incompatible_on(poset, a, b, budget):
    exact = getattr(poset, "incompatible", None)
    if isinstance(poset, FinitePoset):
        return incompatible(poset, a, b)
    if exact is not None:
        known = exact(a, b)
        if known is not None:
            return known
    # bounded search for a common refinement; absence is a bounded verdict
    for r in poset.refinements(a, budget):
        if poset.leq(r, b):
            return False
    return True


def star_game_referee(poset, strategy_i, f, rounds: int, budget: int = 6) -> StarPlay:
    """Play strategy_i against the bit-guided player II.

    ``f`` supplies player II's picks: bit 0 keeps the first component of
    player I's pair, bit 1 the second.  Both win conditions are verified
    every round; a violation raises ConditionViolated with the round,
    which signals that the strategy is not winning at this depth.  The
    descending sequence of picked elements is returned as a chain filter.
    """
    bits = list(f)
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    if len(bits) < rounds:
        raise ValueError("the guide sequence is shorter than the number of rounds")
    current = None
    chain = []
    pairs = []
    picks = []
    for t in range(rounds):
        p1, p2 = strategy_i(current, t)
        if current is not None:
            if not (poset.leq(p1, current) and poset.leq(p2, current)):
                raise ConditionViolated(t, "pair does not refine player II's previous pick")
        if not _incompatible_on(poset, p1, p2, budget):
            raise ConditionViolated(t, f"pair <{p1},{p2}> is compatible")
        n = 1 if int(bits[t]) == 0 else 2
        current = p1 if n == 1 else p2
        pairs.append((p1, p2))
        picks.append(n)
        chain.append(current)
    return StarPlay(ChainFilter.make(poset, chain), tuple(pairs), tuple(picks))


# ---------------------------------------------------------------------------
# generic filters from dense opens


def element_set_selector(poset: FinitePoset, dense_elements):
    """Selector for a dense open given by an element set.

    Returns the least element of the set strictly below the input, or
    the input itself when it already lies in the set and nothing
    strictly smaller does; returns None when the set is not dense below
    the input.
    """
    dense = [e for e in poset.elements if e in set(dense_elements)]

    def select(p):
        for q in dense:
            if poset.lt(q, p):
                return q
        if p in dense:
            return p
        return None

    return select


def is_dense_elements(poset: FinitePoset, dense_elements) -> bool:
    dense = set(dense_elements)
    return all(
        any(poset.leq(q, p) for q in dense) for p in poset.elements
    )


def baire_generic_filter(poset, selectors, start, rounds: int) -> ChainFilter:
    """Descend through the supplied dense opens, one selector per round.

    Selectors cycle when there are fewer than ``rounds``.  Every returned
    element must lie below the current one; anything else (or None)
    raises SelectorFailed, which signals that the selector's set is not
    dense.  On a finite poset the generated filter extends to a maximal
    filter lying in every visited dense open.
    """
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    if not selectors:
        raise ValueError("at least one dense-open selector is required")
    current = start
    chain = [start]
    for i in range(rounds):
        sel = selectors[i % len(selectors)]
        q = sel(current)
        if q is None:
            raise SelectorFailed(i, current, "no element of the dense open below this point")
        if not poset.leq(q, current):
            raise SelectorFailed(i, current, f"returned {q!r}, which is not below")
        chain.append(q)
        current = q
    return ChainFilter.make(poset, chain)


def landing_filter(poset: FinitePoset, play: ChainFilter) -> Filter:
    """Extend the chain's generated filter to a maximal filter of a finite poset."""
    from .filters import extend_to_maximal

    base = Filter(poset, upward_closure(poset, {play.last()}))
    return extend_to_maximal(poset, base)
