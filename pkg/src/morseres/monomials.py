"""Exact monomial arithmetic over finite named variable sets.

Monomials are exponent vectors over an immutable, ordered variable set.
Everything here is pure and hashable, so values can be shared freely.
"""

from __future__ import annotations

import json
import re
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import RingMismatchError


class VariableSet:
    """Ordered collection of distinct variable names.

    The order is fixed at construction and defines the positions of
    exponent vectors.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        if any(not n for n in names):
            raise ValueError("variable names must be non-empty strings")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VariableSet({list(self.names)!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def one(self) -> "Monomial":
        return Monomial(self, (0,) * len(self.names))

    def monomial(self, exponents: Sequence[int]) -> "Monomial":
        return Monomial(self, exponents)

    def variable(self, name: str) -> "Monomial":
        e = [0] * len(self.names)
        e[self._index[name]] = 1
        return Monomial(self, e)

    def parse(self, text: str) -> "Monomial":
        """Parse juxtaposed variable names with optional ``^k`` exponents.

        Names are matched greedily (longest first), so subset-indexed
        names such as ``y_{12}`` and ``y_{123}`` coexist.  ``1`` denotes
        the empty product.
        """
        s = re.sub(r"[\s*·]+", "", text)
        if s in ("", "1"):
            return self.one()
        by_length = sorted(self.names, key=len, reverse=True)
        exps = [0] * len(self.names)
        pos = 0
        while pos < len(s):
            for name in by_length:
                if s.startswith(name, pos):
                    pos += len(name)
                    k = 1
                    if pos < len(s) and s[pos] == "^":
                        m = re.match(r"\^(\d+)", s[pos:])
                        if not m:
                            raise ValueError(f"malformed exponent at {s[pos:]!r}")
                        k = int(m.group(1))
                        pos += m.end()
                    exps[self._index[name]] += k
                    break
            else:
                raise ValueError(f"cannot match a variable at {s[pos:]!r}")
        return Monomial(self, exps)


class Monomial:
    """Exponent vector over a :class:`VariableSet`; the zero vector is 1."""

    __slots__ = ("ring", "exponents")

    def __init__(self, ring: VariableSet, exponents: Sequence[int]):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != len(ring):
            raise ValueError("exponent vector length must equal variable count")
        if any(e < 0 for e in exponents):
            raise ValueError("exponents must be non-negative")
        self.ring = ring
        self.exponents = exponents

    def _check(self, other: "Monomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError("monomials live over different variable sets")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Monomial)
            and self.ring == other.ring
            and self.exponents == other.exponents
        )

    def __hash__(self) -> int:
        return hash(self.exponents)

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def __str__(self) -> str:
        parts = []
        for name, e in zip(self.ring.names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "".join(parts) or "1"

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(self.ring, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(self.ring, tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_one(self) -> bool:
        return not any(self.exponents)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, e in enumerate(self.exponents) if e)


def lcm_of(monomials: Iterable[Monomial], ring: VariableSet | None = None) -> Monomial:
    """Componentwise maximum; the lcm of the empty collection is 1."""
    acc = None
    for m in monomials:
        acc = m if acc is None else acc.lcm(m)
    if acc is None:
        if ring is None:
            raise ValueError("lcm of the empty collection needs an explicit ring")
        return ring.one()
    return acc


def product_of(a: Monomial, b: Monomial) -> Monomial:
    return a * b


def divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


def degree_vectors(q: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of length q summing to r, in descending
    lexicographic order.

    For r = 2 this matches the order of pairs (i, j), i <= j, sorted
    lexicographically, so power-generator indices line up with pair
    vertices.
    """
    out = []
    for combo in combinations_with_replacement(range(q), r):
        v = [0] * q
        for i in combo:
            v[i] += 1
        out.append(tuple(v))
    return tuple(out)


class MonomialIdeal:
    """Ordered list of monomial generators; order defines indices 1..q.

    Duplicate or mutually divisible generators are allowed (some callers
    index relations by generator slots); :meth:`minimalize` produces the
    minimal view.
    """

    __slots__ = ("ring", "generators")

    def __init__(self, ring: VariableSet, generators: Iterable[Monomial]):
        generators = tuple(generators)
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError("generator over a different variable set")
        self.ring = ring
        self.generators = generators

    @property
    def q(self) -> int:
        return len(self.generators)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialIdeal)
            and self.ring == other.ring
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.generators))

    def __repr__(self) -> str:
        return f"MonomialIdeal({', '.join(map(str, self.generators))})"

    @property
    def is_minimal(self) -> bool:
        gs = self.generators
        for i, g in enumerate(gs):
            for j, h in enumerate(gs):
                if i != j and h.divides(g) and (h != g or j < i):
                    return False
        return True

    def minimalize(self) -> "MonomialIdeal":
        """Drop generators divisible by another generator (first duplicate wins)."""
        gs = self.generators
        kept = []
        for i, g in enumerate(gs):
            redundant = any(
                i != j and h.divides(g) and (h != g or j < i) for j, h in enumerate(gs)
            )
            if not redundant:
                kept.append(g)
        return MonomialIdeal(self.ring, kept)

    def power(self, r: int) -> "MonomialIdeal":
        """Products of r generators, ordered by :func:`degree_vectors`."""
        if r < 1:
            raise ValueError("power must be >= 1")
        gens = []
        for vec in degree_vectors(self.q, r):
            m = self.ring.one()
            for i, a in enumerate(vec):
                for _ in range(a):
                    m = m * self.generators[i]
            gens.append(m)
        return MonomialIdeal(self.ring, gens)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "variables": list(self.ring.names),
            "generators": [str(g) for g in self.generators],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MonomialIdeal":
        ring = VariableSet(data["variables"])
        return cls(ring, [ring.parse(g) for g in data["generators"]])

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "MonomialIdeal":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def level_masks(monomials: Sequence[Monomial]) -> tuple[int, list[tuple[int, ...]]]:
    """Pack exponent vectors into per-threshold bitmasks.

    Returns (height, masks) where masks[k][t] has bit v set iff the
    exponent of variable v in monomial k exceeds t.  lcm is then a
    per-level OR and divisibility a per-level subset test, which keeps
    the exhaustive sweeps cheap.
    """
    height = max((max(m.exponents, default=0) for m in monomials), default=0)
    height = max(height, 1)
    packed = []
    for m in monomials:
        levels = []
        for t in range(height):
            bits = 0
            for v, e in enumerate(m.exponents):
                if e > t:
                    bits |= 1 << v
            levels.append(bits)
        packed.append(tuple(levels))
    return height, packed


def mask_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x | y for x, y in zip(a, b))


def mask_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x & ~y == 0 for x, y in zip(a, b))
