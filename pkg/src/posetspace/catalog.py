"""Exhaustive and seeded-random instance generation at desk scale.

Labeled posets are enumerated by deciding each unordered pair of
elements (incomparable, below, or above) in a fixed order, pruning
assignments that break transitivity; the decided part of the relation
stays transitively closed throughout, so a single intermediate element
witnesses every violation.  Topologies are enumerated through their
specialization preorders.
"""

from __future__ import annotations

import functools
import itertools

from .poset_core import FinitePoset
from .constructions import FiniteTopSpace

_NAMES = "abcdefgh"


@functools.lru_cache(maxsize=None)
def labeled_posets(n: int) -> tuple:
    """All partial orders on n labeled elements, up to relation identity."""
    if n == 0:
        return (FinitePoset((), (), "empty"),)
    pairs = [(i, j) for j in range(n) for i in range(j)]
    lt = [[False] * n for _ in range(n)]
    out = []

    def emit():
        masks = []
        for i in range(n):
            m = 1 << i
            for j in range(n):
                if lt[i][j]:
                    m |= 1 << j
            masks.append(m)
        out.append(FinitePoset(tuple(_NAMES[:n]), tuple(masks), f"P{len(out)}"))

    def rec(k):
        if k == len(pairs):
            emit()
            return
        i, j = pairs[k]
        forced_ij = any(lt[i][m] and lt[m][j] for m in range(i))
        forced_ji = any(lt[j][m] and lt[m][i] for m in range(i))
        if forced_ij and forced_ji:
            return
        if not forced_ij and not forced_ji:
            rec(k + 1)
        if not forced_ji and all(
            (not lt[m][i] or lt[m][j]) and (not lt[j][m] or lt[i][m]) for m in range(i)
        ):
            lt[i][j] = True
            rec(k + 1)
            lt[i][j] = False
        if not forced_ij and all(
            (not lt[m][j] or lt[m][i]) and (not lt[i][m] or lt[j][m]) for m in range(i)
        ):
            lt[j][i] = True
            rec(k + 1)
            lt[j][i] = False

    rec(0)
    return tuple(out)


def posets_up_to(n: int, include_empty=False):
    """All labeled posets with between one (or zero) and n elements."""
    start = 0 if include_empty else 1
    out = []
    for k in range(start, n + 1):
        out.extend(labeled_posets(k))
    return out


def random_poset(rng, n: int, edge_prob: float = 0.4, name="random") -> FinitePoset:
    """A random labeled poset: a random DAG on index order, closed transitively."""
    from .poset_core import _transitive_close

    masks = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                masks[i] |= 1 << j
    return FinitePoset(tuple(_NAMES[:n]), tuple(_transitive_close(masks)), name)


@functools.lru_cache(maxsize=None)
def all_topologies(n: int) -> tuple:
    """All topologies on n labeled points, via their specialization preorders."""
    points = tuple(f"x{i}" for i in range(n))
    preorders = set()
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    for combo in range(1 << len(offdiag)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for bit, (i, j) in enumerate(offdiag):
            if combo >> bit & 1:
                rel[i][j] = True
        changed = True
        while changed:
            changed = False
            for i in range(n):
                for j in range(n):
                    if rel[i][j]:
                        for k in range(n):
                            if rel[j][k] and not rel[i][k]:
                                rel[i][k] = True
                                changed = True
        preorders.add(tuple(tuple(row) for row in rel))
    spaces = []
    for rel in sorted(preorders):
        opens = set()
        for subset in itertools.chain.from_iterable(
            itertools.combinations(range(n), r) for r in range(n + 1)
        ):
            s = set(subset)
            if all(not rel[i][j] or j in s for i in s for j in range(n)):
                opens.add(frozenset(s))
        spaces.append(FiniteTopSpace(points, opens, sorted(opens, key=lambda s: (len(s), sorted(s))),
                                     name=f"T{len(spaces)}"))
    return tuple(spaces)


def random_dense_sets(rng, poset: FinitePoset, count: int):
    """Seeded dense element sets: random subsets patched below uncovered elements."""
    out = []
    for _ in range(count):
        dense = {e for e in poset.elements if rng.random() < 0.4}
        for p in poset.elements:
            if not any(poset.leq(q, p) for q in dense):
                below = [q for q in poset.elements if poset.leq(q, p)]
                dense.add(rng.choice(below))
        out.append(frozenset(dense))
    return out
