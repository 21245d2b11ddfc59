"""Independent Betti-number oracle.

Graded Betti numbers are read off reduced homology of the subcomplex of
the full generator simplex whose lcm labels strictly divide a fixed lcm
value; a second route through order complexes of open lcm intervals is
kept for cross-checking.  Ranks are computed exactly: bitsets over GF(2)
and fraction-free integer elimination for the rationals.  No floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd
from typing import Sequence

from .errors import CapacityError, NonMinimalIdealError
from .monomials import (
    Monomial,
    MonomialIdeal,
    level_masks,
    mask_divides,
    mask_lcm,
)
from .complexes import SimplicialComplex

GF2 = "gf2"
RATIONAL = "rational"

DEFAULT_GENERATOR_CAP = 15


def normalize_field(field: str) -> str:
    f = field.lower()
    if f in ("gf2", "f2", "gf(2)"):
        return GF2
    if f in ("rational", "rat", "q"):
        return RATIONAL
    raise ValueError(f"unknown field tag {field!r}")


def gf2_rank(columns: Sequence[int]) -> int:
    """Rank of a matrix whose columns are bitmasks of row indices."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            low = col & -col
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = col
                rank += 1
                break
            col ^= piv
    return rank


def exact_rank(columns: Sequence[dict[int, int]]) -> int:
    """Rank over the rationals of sparse integer columns, by
    fraction-free elimination with gcd normalization."""
    pivots: list[tuple[int, int, dict[int, int]]] = []
    rank = 0
    for col in columns:
        col = {r: v for r, v in col.items() if v}
        for prow, pval, pcol in pivots:
            cv = col.get(prow)
            if not cv:
                continue
            new = {r: v * pval for r, v in col.items()}
            for r, v in pcol.items():
                new[r] = new.get(r, 0) - cv * v
            col = {r: v for r, v in new.items() if v}
            if col:
                g = 0
                for v in col.values():
                    g = gcd(g, v)
                if g > 1:
                    col = {r: v // g for r, v in col.items()}
        if col:
            prow = min(col, key=lambda r: (abs(col[r]) != 1, abs(col[r]), r))
            pivots.append((prow, col[prow], col))
            rank += 1
    return rank


def _boundary_rank(
    upper: Sequence[tuple[int, ...]], lower_index: dict[tuple[int, ...], int], field: str
) -> int:
    """Rank of the boundary map from faces `upper` (as sorted vertex
    tuples) to the faces indexed by `lower_index`."""
    if field == GF2:
        cols = []
        for face in upper:
            bits = 0
            for k in range(len(face)):
                sub = face[:k] + face[k + 1 :]
                bits |= 1 << lower_index[sub]
            cols.append(bits)
        return gf2_rank(cols)
    cols = []
    for face in upper:
        col = {}
        for k in range(len(face)):
            sub = face[:k] + face[k + 1 :]
            col[lower_index[sub]] = -1 if k & 1 else 1
        cols.append(col)
    return exact_rank(cols)


def homology_dims(faces: Sequence[tuple[int, ...]], field: str = GF2) -> tuple[int, ...]:
    """Reduced homology dimensions of an inclusion-closed face list.

    Faces are sorted vertex tuples; the empty tuple is the empty face.
    Returns (dim H~_{-1}, dim H~_0, ...).  A void input (no faces at
    all) yields all zeros; the list [()] yields H~_{-1} = 1.
    """
    field = normalize_field(field)
    if not faces:
        return ()
    by_card: dict[int, list[tuple[int, ...]]] = {}
    for f in faces:
        by_card.setdefault(len(f), []).append(f)
    top = max(by_card)
    counts = [len(by_card.get(k, ())) for k in range(top + 1)]
    ranks = [0] * (top + 2)
    if counts[0] and top >= 1 and counts[1]:
        ranks[1] = 1
    for k in range(2, top + 1):
        lower = sorted(by_card.get(k - 1, ()))
        index = {f: i for i, f in enumerate(lower)}
        ranks[k] = _boundary_rank(sorted(by_card.get(k, ())), index, field)
    return tuple(counts[k] - ranks[k] - ranks[k + 1] for k in range(top + 1))


def reduced_homology_dims(cx: SimplicialComplex, field: str = GF2) -> tuple[int, ...]:
    """Reduced homology of a simplicial complex, empty face included."""
    if cx.is_void:
        return ()
    faces = [cx.members(m) for m in cx.faces(include_empty=True)]
    return homology_dims(faces, field)


@dataclass(frozen=True)
class LcmLattice:
    """Distinct lcms of generator subsets, ordered by divisibility;
    bottom element 1, closed under pairwise lcm."""

    elements: tuple[Monomial, ...]

    def __contains__(self, m: Monomial) -> bool:
        return m in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _levels_to_monomial(levels: tuple[int, ...], ideal: MonomialIdeal) -> Monomial:
    n = len(ideal.ring)
    exps = [0] * n
    for lv in levels:
        for v in range(n):
            if lv >> v & 1:
                exps[v] += 1
    return Monomial(ideal.ring, exps)


def _lattice_levels(gmasks: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    height = len(gmasks[0])
    bottom = (0,) * height
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gmasks:
                j = mask_lcm(m, g)
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(seen)


def lcm_lattice(ideal: MonomialIdeal) -> LcmLattice:
    _, gmasks = level_masks(list(ideal.generators))
    levels = _lattice_levels(gmasks)
    elems = [_levels_to_monomial(lv, ideal) for lv in levels]
    elems.sort(key=lambda m: (m.degree, m.exponents))
    return LcmLattice(tuple(elems))


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers over the lcm lattice."""

    field: str
    q: int
    entries: tuple[tuple[int, Monomial, int], ...]

    def total(self, length: int | None = None) -> tuple[int, ...]:
        acc: dict[int, int] = {}
        for i, _, v in self.entries:
            acc[i] = acc.get(i, 0) + v
        top = max(acc, default=0)
        if length is None:
            length = top + 1
        return tuple(acc.get(i, 0) for i in range(length))

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _, v in self.entries if v)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "field": self.field,
            "generators": self.q,
            "total": list(self.total()),
            "projectiveDimension": self.projective_dimension,
            "graded": [
                {"degree": i, "lcm": str(m), "betti": v} for i, m, v in self.entries
            ],
        }


def _validate_ideal(ideal: MonomialIdeal, cap: int) -> None:
    if ideal.q == 0:
        raise ValueError("the zero ideal has no Betti table")
    if not ideal.is_minimal:
        raise NonMinimalIdealError(
            "generators are not minimal; call minimalize() and retry"
        )
    if ideal.q > cap:
        raise CapacityError(
            f"{ideal.q} generators exceeds the homology bound ({cap})"
        )


@lru_cache(maxsize=64)
def graded_betti(
    ideal: MonomialIdeal, field: str = GF2, cap: int = DEFAULT_GENERATOR_CAP
) -> BettiTable:
    """Graded Betti numbers from homology of strict-divisor subcomplexes
    of the generator simplex, one per lcm-lattice element."""
    field = normalize_field(field)
    _validate_ideal(ideal, cap)
    _, gmasks = level_masks(list(ideal.generators))
    g = ideal.q
    entries = []
    for m_levels in _lattice_levels(gmasks):
        if not any(m_levels):
            continue
        support = [k for k in range(g) if mask_divides(gmasks[k], m_levels)]
        faces = []
        stack = [((), (0,) * len(m_levels), 0)]
        while stack:
            face, lcm, start = stack.pop()
            faces.append(face)
            for t in range(start, len(support)):
                nlcm = mask_lcm(lcm, gmasks[support[t]])
                if nlcm != m_levels:
                    stack.append((face + (support[t],), nlcm, t + 1))
        dims = homology_dims(faces, field)
        monomial = _levels_to_monomial(m_levels, ideal)
        for i, v in enumerate(dims):
            if v:
                entries.append((i, monomial, v))
    entries.sort(key=lambda e: (e[0], e[1].degree, e[1].exponents))
    return BettiTable(field, g, tuple(entries))


def graded_betti_via_interval(
    ideal: MonomialIdeal, field: str = GF2, cap: int = 6
) -> BettiTable:
    """The same table via order complexes of open lcm-lattice intervals;
    an independent formulation used to cross-check the strict-divisor
    route on small inputs."""
    field = normalize_field(field)
    _validate_ideal(ideal, cap)
    _, gmasks = level_masks(list(ideal.generators))
    lattice = _lattice_levels(gmasks)
    entries = []
    for m_levels in lattice:
        if not any(m_levels):
            continue
        inside = [
            x
            for x in lattice
            if x != m_levels and any(x) and mask_divides(x, m_levels)
        ]
        # sorted level tuples are a linear extension of divisibility, so
        # chains can be grown in increasing index order
        below = [
            {t for t in range(k) if mask_divides(inside[t], inside[k])}
            for k in range(len(inside))
        ]
        chains = []
        stack = [((), tuple(range(len(inside))))]
        while stack:
            chain, candidates = stack.pop()
            chains.append(chain)
            for k in candidates:
                stack.append(
                    (chain + (k,), tuple(t for t in candidates if t > k and k in below[t]))
                )
        dims = homology_dims(sorted(chains), field)
        monomial = _levels_to_monomial(m_levels, ideal)
        for i, v in enumerate(dims):
            if v:
                entries.append((i, monomial, v))
    entries.sort(key=lambda e: (e[0], e[1].degree, e[1].exponents))
    return BettiTable(field, ideal.q, tuple(entries))


def total_betti(
    ideal: MonomialIdeal, field: str = GF2, length: int | None = None
) -> tuple[int, ...]:
    return graded_betti(ideal, field).total(length)


def projective_dimension(ideal: MonomialIdeal, field: str = GF2) -> int:
    return graded_betti(ideal, field).projective_dimension


def pd_formula(q: int, s: int) -> tuple[int, int]:
    """Projective dimensions of the extremal ideal and of its square for
    one relation (1, {2..s}): (q - 2, C(q,2) - (q - s + 2)) and when
    q = s the second entry is C(q,2) - 1."""
    if not 3 <= s <= q:
        raise ValueError(f"need 3 <= s <= q (got q={q}, s={s})")
    first = q - 2
    second = comb(q, 2) - (q - s + 2) if q > s else comb(q, 2) - 1
    return first, second
