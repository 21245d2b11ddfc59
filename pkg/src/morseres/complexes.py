"""Simplicial complexes: the full simplex on generators, the complex of
generator pairs used for second powers, face enumeration and lcm labels.

Faces are plain integers: bitmasks over the complex's vertex list.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .monomials import Monomial, MonomialIdeal, lcm_of


def n2_pairs(q: int) -> tuple[tuple[int, int], ...]:
    """Multiset pairs (i, j) with 1 <= i <= j <= q in lexicographic order."""
    return tuple((i, j) for i in range(1, q + 1) for j in range(i, q + 1))


class SimplicialComplex:
    """Facet-defined complex over an ordered vertex list.

    Facets are normalized to an antichain (dominated facets dropped).
    A face is any subset of a facet, encoded as a bitmask whose bit k
    refers to ``vertices[k]``.
    """

    def __init__(self, vertices: Sequence, facets: Iterable[Iterable]):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertices must be distinct")
        self._index = {v: k for k, v in enumerate(self.vertices)}
        raw = []
        for f in facets:
            raw.append(f if isinstance(f, int) else self.mask(f))
        maximal = []
        for m in sorted(set(raw), key=lambda x: (-x.bit_count(), x)):
            if not any(m & big == m for big in maximal):
                maximal.append(m)
        if len(maximal) > 1 and 0 in maximal:
            maximal.remove(0)
        self.facets = tuple(sorted(maximal, key=lambda x: (x.bit_count(), x)))

    def mask(self, labels: Iterable) -> int:
        m = 0
        for v in labels:
            m |= 1 << self._index[v]
        return m

    def members(self, face: int) -> tuple:
        return tuple(self.vertices[k] for k in range(len(self.vertices)) if face >> k & 1)

    def vertex_bit(self, label) -> int:
        return self._index[label]

    @property
    def is_void(self) -> bool:
        return not self.facets

    def is_face(self, face) -> bool:
        if not isinstance(face, int):
            face = self.mask(face)
        return any(face & f == face for f in self.facets)

    @cached_property
    def _face_list(self) -> tuple[int, ...]:
        seen = set()
        for facet in self.facets:
            bits = [1 << k for k in range(facet.bit_length()) if facet >> k & 1]
            n = len(bits)
            for sub in range(1 << n):
                m = 0
                for t in range(n):
                    if sub >> t & 1:
                        m |= bits[t]
                seen.add(m)
        return tuple(sorted(seen, key=lambda x: (x.bit_count(), x)))

    def faces(self, card: int | None = None, include_empty: bool = False) -> Iterator[int]:
        """Yield each face exactly once, ordered by (cardinality, mask)."""
        for m in self._face_list:
            if m == 0 and not include_empty:
                continue
            if card is not None and m.bit_count() != card:
                continue
            yield m

    def f_vector(self) -> tuple[int, ...]:
        """(f_0, f_1, ..., f_{d+1}) with f_0 = 1 for the empty face."""
        if self.is_void:
            return (0,)
        counts: dict[int, int] = {}
        for m in self._face_list:
            counts[m.bit_count()] = counts.get(m.bit_count(), 0) + 1
        top = max(counts)
        return tuple(counts.get(k, 0) for k in range(top + 1))

    @property
    def dim(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1


def taylor(q: int) -> SimplicialComplex:
    """Full simplex on generator indices 1..q."""
    if q < 1:
        raise ValueError("q must be >= 1")
    verts = tuple(range(1, q + 1))
    return SimplicialComplex(verts, [verts])


def l2(q: int) -> SimplicialComplex:
    """Complex on the pair vertices (i, j), i <= j, supporting resolutions
    of second powers of square-free ideals on q generators.

    Facets: the block of all square-free pairs {(i, j) : i < j} and, for
    each i, the star {(i, j) : j in 1..q}.  For q <= 2 normalization
    leaves only the stars.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    verts = n2_pairs(q)
    block = [(i, j) for i in range(1, q + 1) for j in range(i + 1, q + 1)]
    stars = [
        [(min(i, j), max(i, j)) for j in range(1, q + 1)]
        for i in range(1, q + 1)
    ]
    return SimplicialComplex(verts, [block] + stars)


class LabeledComplex:
    """Complex plus one monomial generator per vertex; faces are labeled
    with the lcm of their vertex labels (computed lazily)."""

    __slots__ = ("complex", "ideal", "_cache")

    def __init__(self, complex: SimplicialComplex, ideal: MonomialIdeal):
        if len(ideal.generators) != len(complex.vertices):
            raise ValueError("need exactly one generator per vertex")
        self.complex = complex
        self.ideal = ideal
        self._cache: dict[int, Monomial] = {}

    def label(self, face: int) -> Monomial:
        got = self._cache.get(face)
        if got is None:
            gens = self.ideal.generators
            got = lcm_of(
                (gens[k] for k in range(face.bit_length()) if face >> k & 1),
                ring=self.ideal.ring,
            )
            self._cache[face] = got
        return got
