"""Discrete Morse matchings: the generic engine, the specific matching
that prunes the pair complex under one divisibility relation, critical
cells in closed form, gradient paths and the resulting cell order.

Faces are bitmasks over the ambient complex's vertex list; the empty
face is excluded from matchings (it is always critical and carries no
cell of the resolution).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

from .complexes import LabeledComplex, SimplicialComplex, l2, taylor
from .errors import CapacityError


@dataclass(frozen=True)
class MatchingSpec:
    """A totally ordered list of pivot faces and a vertex choice per
    pivot, with the chosen vertex outside its face."""

    complex: SimplicialComplex
    order: tuple[int, ...]
    omega: Mapping[int, int]

    def __post_init__(self):
        for sigma in self.order:
            v = self.omega[sigma]
            if sigma >> v & 1:
                raise ValueError(
                    f"omega assigns vertex bit {v} inside its own face {sigma:b}"
                )


@dataclass(frozen=True)
class Matching:
    """Directed matched edges (bigger, smaller), each face used once."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for big, small in self.pairs:
            if small & big != small or big.bit_count() != small.bit_count() + 1:
                raise ValueError("matched edge must drop exactly one vertex")
            if big in seen or small in seen:
                raise ValueError("a face occurs in more than one matched edge")
            seen.add(big)
            seen.add(small)

    def __len__(self) -> int:
        return len(self.pairs)

    @cached_property
    def up(self) -> dict[int, int]:
        return {small: big for big, small in self.pairs}

    @cached_property
    def down(self) -> dict[int, int]:
        return {big: small for big, small in self.pairs}

    @cached_property
    def matched_faces(self) -> frozenset[int]:
        out = set()
        for big, small in self.pairs:
            out.add(big)
            out.add(small)
        return frozenset(out)


def _partition(faces: Iterable[int], spec: MatchingSpec) -> dict[int, set[int]]:
    """Group the faces that contain a pivot by the largest pivot they
    contain (scanning the order from the top)."""
    groups: dict[int, set[int]] = {}
    rev = tuple(reversed(spec.order))
    for gamma in faces:
        for sigma in rev:
            if sigma & gamma == sigma:
                groups.setdefault(sigma, set()).add(gamma)
                break
    return groups


def build_matching(faces: Iterable[int], spec: MatchingSpec) -> Matching:
    """Within each group, match tau against tau minus the chosen vertex
    whenever both lie in the group."""
    groups = _partition(faces, spec)
    pairs = []
    for sigma, members in groups.items():
        vbit = 1 << spec.omega[sigma]
        for tau in members:
            if tau & vbit and tau ^ vbit in members:
                pairs.append((tau, tau ^ vbit))
    pairs.sort(key=lambda e: (e[0].bit_count(), e[0], e[1]))
    return Matching(tuple(pairs))


def critical_cells(faces: Iterable[int], spec: MatchingSpec) -> frozenset[int]:
    """Faces in no group, plus group members whose vertex-extension
    leaves the group."""
    faces = set(faces)
    groups = _partition(faces, spec)
    critical = set(faces)
    for sigma, members in groups.items():
        vbit = 1 << spec.omega[sigma]
        for tau in members:
            if tau | vbit in members:
                critical.discard(tau)
    return frozenset(critical)


def is_acyclic(faces: Iterable[int], matching: Matching) -> bool:
    """No directed cycle after reversing the matched edges.

    Cycles necessarily alternate between two adjacent cardinalities, so
    the search runs per level on the bigger partners only.
    """
    Y = set(faces)
    up = matching.up
    down = matching.down
    by_card: dict[int, list[int]] = {}
    for big in down:
        by_card.setdefault(big.bit_count(), []).append(big)

    for card, nodes in sorted(by_card.items()):
        def successors(big):
            partner = down[big]
            m = big
            while m:
                low = m & -m
                m ^= low
                sub = big ^ low
                if sub == partner or sub not in Y:
                    continue
                nxt = up.get(sub)
                if nxt is not None:
                    yield nxt

        color: dict[int, int] = {}
        for start in nodes:
            if color.get(start):
                continue
            stack = [(start, successors(start))]
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
                    return False
                if c == 0:
                    color[nxt] = 1
                    stack.append((nxt, successors(nxt)))
    return True


def is_homogeneous(matching: Matching, labels: LabeledComplex) -> bool:
    """Every matched edge joins faces with equal lcm labels."""
    return all(labels.label(big) == labels.label(small) for big, small in matching.pairs)


# ---------------------------------------------------------------------------
# The matching on the pair complex for one relation (1, {2..s})
# ---------------------------------------------------------------------------


def _p(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i <= j else (j, i)


def _check_qs(q: int, s: int) -> None:
    if not 3 <= s <= q:
        raise ValueError(f"need 3 <= s <= q (got q={q}, s={s})")


def _pivot_faces(q: int, s: int):
    """The pivot faces by type, each as (pair list, j)."""
    ks = range(2, s + 1)
    type1 = [([_p(k, j) for k in ks], j) for j in range(1, q + 1)]
    type2 = []
    for j in range(s + 1, q + 1):
        stack = [()]
        for _ in ks:
            stack = [t + (o,) for t in stack for o in (1, j)]
        for t in stack:
            if 1 in t and j in t:
                type2.append(([_p(k, tk) for k, tk in zip(ks, t)], j))
    type3 = []
    for u in range(s + 1, q + 1):
        for j in range(u + 1, q + 1):
            type3.append(([_p(k, 1) for k in ks] + [(u, j)], j))
    return type1, type2, type3


def matching_l2(
    q: int, s: int, shuffle_seed: int | None = None
) -> tuple[MatchingSpec, Matching]:
    """The matching that prunes the pair complex given (1, {2..s}).

    Pivot faces come in three types ordered type1 < type2 < type3; ties
    within a type are broken by sorted vertex lists (or shuffled when a
    seed is supplied; the critical set does not depend on the choice).
    The chosen vertex is always the pair (1, j) for the face's j.
    """
    _check_qs(q, s)
    cx = l2(q)
    order = []
    omega = {}
    for group in _pivot_faces(q, s):
        group = sorted(group, key=lambda fj: tuple(sorted(fj[0])))
        if shuffle_seed is not None:
            random.Random(shuffle_seed * 1009 + len(order)).shuffle(group)
        for pairs, j in group:
            mask = cx.mask(pairs)
            order.append(mask)
            omega[mask] = cx.vertex_bit((1, j))
    spec = MatchingSpec(cx, tuple(order), omega)
    matching = build_matching(cx.faces(), spec)
    return spec, matching


@lru_cache(maxsize=32)
def _regions(q: int, s: int):
    cx = l2(q)
    base = cx.mask([_p(k, 1) for k in range(2, s + 1)])
    mid = cx.mask([(i, k) for i in range(2, s + 1) for k in range(i + 1, s + 1)])
    tail = cx.mask([(1, j) for j in range(s + 1, q + 1)])
    return cx, base, mid, tail


@lru_cache(maxsize=32)
def critical_closed_form_l2(q: int, s: int) -> frozenset[int]:
    """Critical faces directly from their description: faces containing
    no type-1/type-2 pivot, plus the base-and-middle family."""
    _check_qs(q, s)
    cx, base, mid, tail = _regions(q, s)
    type1, type2, _ = _pivot_faces(q, s)
    blockers = [cx.mask(pairs) for pairs, _ in type1 + type2]

    critical = {
        f for f in cx.faces() if not any(b & f == b for b in blockers)
    }

    mid_bits = [1 << k for k in range(mid.bit_length()) if mid >> k & 1]
    tail_bits = [1 << k for k in range(tail.bit_length()) if tail >> k & 1]
    for gsub in range(1, 1 << len(mid_bits)):
        gmask = 0
        for t, bit in enumerate(mid_bits):
            if gsub >> t & 1:
                gmask |= bit
        for tsub in range(1 << len(tail_bits)):
            tmask = 0
            for t, bit in enumerate(tail_bits):
                if tsub >> t & 1:
                    tmask |= bit
            critical.add(base | gmask | tmask)
    return frozenset(critical)


def critical_counts(q: int, s: int, length: int | None = None) -> tuple[int, ...]:
    """Number of critical faces per dimension (cardinality minus one)."""
    counts: dict[int, int] = {}
    for f in critical_closed_form_l2(q, s):
        d = f.bit_count() - 1
        counts[d] = counts.get(d, 0) + 1
    top = max(counts)
    if length is None:
        length = top + 1
    return tuple(counts.get(d, 0) for d in range(length))


@dataclass(frozen=True)
class FirstPowerPrune:
    """Pruned simplex for the first power: all faces avoiding {2..s},
    together with the matching that removes the rest."""

    complex: SimplicialComplex
    gamma: SimplicialComplex
    spec: MatchingSpec
    matching: Matching


def prune_taylor_first_power(q: int, s: int) -> FirstPowerPrune:
    _check_qs(q, s)
    tx = taylor(q)
    sigma = tx.mask(range(2, s + 1))
    spec = MatchingSpec(tx, (sigma,), {sigma: tx.vertex_bit(1)})
    matching = build_matching(tx.faces(), spec)
    gamma = SimplicialComplex(
        tx.vertices,
        [[v for v in range(1, q + 1) if v != k] for k in range(2, s + 1)],
    )
    return FirstPowerPrune(tx, gamma, spec, matching)


# ---------------------------------------------------------------------------
# Gradient paths and the order among critical cells
# ---------------------------------------------------------------------------


def _reachable_lower(Y: set[int], matching: Matching, tau: int) -> set[int]:
    """Critical faces one dimension down reachable from tau by an
    alternating descend/ascend walk."""
    up = matching.up
    down = matching.down
    matched = matching.matched_faces
    found: set[int] = set()
    seen_upper = {tau}
    seen_lower: set[int] = set()
    frontier = [tau]
    while frontier:
        nxt = []
        for big in frontier:
            partner = down.get(big)
            m = big
            while m:
                low = m & -m
                m ^= low
                sub = big ^ low
                if sub == partner or sub not in Y or sub in seen_lower:
                    continue
                seen_lower.add(sub)
                if sub not in matched:
                    found.add(sub)
                    continue
                upper = up.get(sub)
                if upper is not None and upper not in seen_upper:
                    seen_upper.add(upper)
                    nxt.append(upper)
        frontier = nxt
    return found


def gradient_path_exists(
    faces: Iterable[int], matching: Matching, tau: int, sigma: int
) -> bool:
    """Reachability of sigma from tau in the reversed-matching digraph;
    a plain inclusion counts as a length-one path."""
    Y = set(faces)
    if tau not in Y or sigma not in Y:
        raise ValueError("endpoints must be faces of the matched set")
    matched = matching.matched_faces
    if tau in matched or sigma in matched:
        raise ValueError("gradient-path endpoints must be critical")
    if sigma.bit_count() != tau.bit_count() - 1:
        raise ValueError("target must be one dimension below the source")
    return sigma in _reachable_lower(Y, matching, tau)


def cell_order_closed_form(q: int, s: int, sigma: int, tau: int) -> bool:
    """Whether the cell of sigma lies under the cell of tau.

    Inclusion always suffices; when tau is of the base-and-middle form
    with a single middle vertex, swapping that vertex for (1, 1) and
    dropping one of (1, 2)..(1, s) also yields a lower cell.
    """
    critical = critical_closed_form_l2(q, s)
    if sigma not in critical or tau not in critical:
        raise ValueError("cell order is defined on critical faces only")
    if sigma.bit_count() != tau.bit_count() - 1:
        raise ValueError("faces must lie in adjacent dimensions")
    if sigma & tau == sigma:
        return True
    cx, base, mid, tail = _regions(q, s)
    gamma = tau & mid
    type_b = tau & base == base and tau & ~(base | mid | tail) == 0 and gamma != 0
    if not type_b or gamma.bit_count() != 1:
        return False
    core = (tau ^ gamma) | 1 << cx.vertex_bit((1, 1))
    for ell in range(2, s + 1):
        if sigma == core ^ 1 << cx.vertex_bit((1, ell)):
            return True
    return False


@dataclass(frozen=True)
class MorseComplex:
    """Critical cells grouped by dimension plus the order relation among
    cells of adjacent dimensions (None when not computed)."""

    complex: SimplicialComplex
    cells: tuple[tuple[int, ...], ...]
    order: frozenset[tuple[int, int]] | None

    def counts(self, length: int | None = None) -> tuple[int, ...]:
        out = tuple(len(c) for c in self.cells)
        if length is None:
            return out
        return out + (0,) * (length - len(out))

    @property
    def all_cells(self) -> frozenset[int]:
        return frozenset(c for group in self.cells for c in group)


def morse_complex(
    q: int,
    s: int,
    with_order: bool | None = None,
    cross_check: bool = False,
) -> MorseComplex:
    """Cells of the pruned complex; the order relation is computed by the
    closed form (q <= 5 by default) and optionally cross-checked against
    gradient-path reachability."""
    _check_qs(q, s)
    if q > 6:
        raise CapacityError(f"morse complex bounded at q <= 6 (got q={q})")
    critical = critical_closed_form_l2(q, s)
    cx = l2(q)
    top = max(f.bit_count() for f in critical)
    cells = tuple(
        tuple(sorted(f for f in critical if f.bit_count() == d + 1))
        for d in range(top)
    )
    if with_order is None:
        with_order = q <= 5
    order = None
    if with_order:
        pairs = set()
        for d in range(1, top):
            for tau in cells[d]:
                for sigma in cells[d - 1]:
                    if cell_order_closed_form(q, s, sigma, tau):
                        pairs.add((sigma, tau))
        if cross_check:
            _, matching = matching_l2(q, s)
            Y = set(cx.faces())
            for d in range(1, top):
                lower = set(cells[d - 1])
                for tau in cells[d]:
                    reached = _reachable_lower(Y, matching, tau) & lower
                    closed = {s_ for s_ in cells[d - 1] if (s_, tau) in pairs}
                    if reached != closed:
                        raise AssertionError(
                            f"cell order mismatch at q={q}, s={s}, tau={tau:b}"
                        )
        order = frozenset(pairs)
    return MorseComplex(cx, cells, order)
