"""Cross-validation of the layer-restricted Morse algorithms against
naive full-digraph implementations.

The production code searches cycles and gradient paths only across two
adjacent cardinality layers; these oracles walk the whole modified
inclusion digraph with no such restriction.
"""

import random

from morseres.complexes import l2, taylor
from morseres.morse import (
    Matching,
    _reachable_lower,
    is_acyclic,
    matching_l2,
    prune_taylor_first_power,
)


def full_digraph(faces, matching):
    """All edges of the modified digraph: inclusions pointing down,
    matched edges reversed."""
    Y = set(faces)
    up = matching.up
    down = matching.down
    succ = {f: [] for f in Y}
    for f in Y:
        m = f
        while m:
            low = m & -m
            m ^= low
            sub = f ^ low
            if sub not in Y:
                continue
            if down.get(f) == sub:
                succ[sub].append(f)
            else:
                succ[f].append(sub)
    assert all(up.get(small) == big for big, small in matching.pairs)
    return succ


def has_cycle_anywhere(succ):
    color = {}
    for start in succ:
        if color.get(start):
            continue
        stack = [(start, iter(succ[start]))]
        color[start] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                continue
            c = color.get(nxt, 0)
            if c == 1:
                return True
            if c == 0:
                color[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return False


def reachable_anywhere(succ, start):
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for node in frontier:
            for other in succ[node]:
                if other not in seen:
                    seen.add(other)
                    nxt.append(other)
        frontier = nxt
    return seen


def random_matching(faces, seed):
    """Greedy matching over a shuffled list of inclusion edges."""
    Y = set(faces)
    rng = random.Random(seed)
    candidates = []
    for f in Y:
        m = f
        while m:
            low = m & -m
            m ^= low
            if f ^ low in Y:
                candidates.append((f, f ^ low))
    rng.shuffle(candidates)
    used = set()
    pairs = []
    for big, small in candidates:
        if big in used or small in used:
            continue
        used.add(big)
        used.add(small)
        pairs.append((big, small))
    return Matching(tuple(sorted(pairs)))


def test_acyclicity_agrees_with_full_digraph_on_random_matchings():
    cases = [list(l2(3).faces()), list(taylor(4).faces()), list(l2(4).faces(card=None))]
    outcomes = set()
    for faces in cases:
        for seed in range(40):
            matching = random_matching(faces, seed)
            fast = is_acyclic(faces, matching)
            slow = not has_cycle_anywhere(full_digraph(faces, matching))
            assert fast == slow, (seed, len(faces))
            outcomes.add(fast)
    # the random draw must exercise both verdicts for the test to mean anything
    assert outcomes == {True, False}


def test_acyclicity_agrees_on_production_matchings():
    for q, s in ((3, 3), (4, 3), (4, 4)):
        cx = l2(q)
        faces = list(cx.faces())
        _, matching = matching_l2(q, s)
        assert is_acyclic(faces, matching)
        assert not has_cycle_anywhere(full_digraph(faces, matching))
    fp = prune_taylor_first_power(4, 3)
    faces = list(fp.complex.faces())
    assert not has_cycle_anywhere(full_digraph(faces, fp.matching))


def test_gradient_reachability_agrees_with_full_walk():
    for q, s in ((3, 3), (4, 3)):
        cx = l2(q)
        faces = list(cx.faces())
        _, matching = matching_l2(q, s)
        succ = full_digraph(faces, matching)
        critical = sorted(set(faces) - matching.matched_faces)
        for tau in critical:
            if tau.bit_count() < 2:
                continue
            fast = _reachable_lower(set(faces), matching, tau)
            wander = reachable_anywhere(succ, tau)
            slow = {
                f
                for f in critical
                if f.bit_count() == tau.bit_count() - 1 and f in wander
            }
            assert fast == slow, (q, s, tau)
