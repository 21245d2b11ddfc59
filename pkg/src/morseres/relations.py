"""Divisibility relations on monomial ideals and on their squares.

A relation (b, B) states that generator b divides the lcm of the
generators indexed by B.  This module detects relations by brute force,
generates the predicted relation families for squares of ideals with a
single relation (1, {2..s}), and verifies the predicted
characterizations exhaustively against the extremal ideals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import extremal
from .complexes import l2, n2_pairs
from .errors import CapacityError
from .monomials import (
    MonomialIdeal,
    level_masks,
    lcm_of,
    mask_divides,
    mask_lcm,
)

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class DivRel:
    """Generator b divides lcm of the generators indexed by B."""

    b: int
    B: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "B", frozenset(int(x) for x in self.B))
        if not self.B:
            raise ValueError("B must be non-empty")

    @property
    def trivial(self) -> bool:
        return self.b in self.B

    def extends(self, other: "DivRel") -> bool:
        return self.b == other.b and other.B <= self.B

    def sort_key(self):
        return (self.b, tuple(sorted(self.B)))

    def to_dict(self) -> dict:
        return {"b": self.b, "B": sorted(self.B)}

    @classmethod
    def from_dict(cls, data: dict) -> "DivRel":
        return cls(int(data["b"]), frozenset(data["B"]))

    def __repr__(self) -> str:
        return f"DivRel({self.b}, {{{', '.join(map(str, sorted(self.B)))}}})"


@dataclass(frozen=True)
class RelationReport:
    all: tuple[DivRel, ...]
    minimal: tuple[DivRel, ...]
    trivial_count: int

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "all": [r.to_dict() for r in self.all],
            "minimal": [r.to_dict() for r in self.minimal],
            "trivialCount": self.trivial_count,
        }


def relation_holds(ideal: MonomialIdeal, rel: DivRel) -> bool:
    q = ideal.q
    if not 1 <= rel.b <= q or not all(1 <= x <= q for x in rel.B):
        raise ValueError(f"relation {rel!r} has indices outside 1..{q}")
    gens = ideal.generators
    target = lcm_of([gens[i - 1] for i in rel.B], ring=ideal.ring)
    return gens[rel.b - 1].divides(target)


def _subset_lcm_table(masks: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """lcm level-tuple for every subset of the generator list."""
    g = len(masks)
    height = len(masks[0]) if masks else 1
    bottom = (0,) * height
    table = [bottom] * (1 << g)
    for m in range(1, 1 << g):
        low = m & -m
        table[m] = mask_lcm(table[m ^ low], masks[low.bit_length() - 1])
    return table


def _held_nontrivial(ideal: MonomialIdeal, limit: int):
    """Per generator b (0-based), the set of subset-masks B (b excluded)
    whose lcm is divisible by generator b."""
    g = ideal.q
    if g > limit:
        raise CapacityError(
            f"{g} generators exceeds the brute-force relation bound ({limit})"
        )
    _, masks = level_masks(list(ideal.generators))
    table = _subset_lcm_table(masks)
    held = []
    for b in range(g):
        bbit = 1 << b
        gen = masks[b]
        got = set()
        for m in range(1, 1 << g):
            if m & bbit:
                continue
            if mask_divides(gen, table[m]):
                got.add(m)
        held.append(got)
    return held


def _minimal_masks(held: set[int]) -> list[int]:
    """Minimal members of an up-closed family of bitmasks."""
    out = []
    for m in held:
        mm = m
        minimal = True
        while mm:
            low = mm & -mm
            mm ^= low
            if (m ^ low) in held:
                minimal = False
                break
        if minimal:
            out.append(m)
    return out


def _mask_members(m: int) -> frozenset[int]:
    return frozenset(k + 1 for k in range(m.bit_length()) if m >> k & 1)


def minimal_relations(ideal: MonomialIdeal, limit: int = BRUTE_FORCE_LIMIT) -> frozenset[DivRel]:
    """Brute-force minimal divisibility relations (non-trivial, with no
    held relation on a proper subset)."""
    held = _held_nontrivial(ideal, limit)
    out = set()
    for b, got in enumerate(held):
        for m in _minimal_masks(got):
            out.add(DivRel(b + 1, _mask_members(m)))
    return frozenset(out)


def all_relations(ideal: MonomialIdeal, limit: int = BRUTE_FORCE_LIMIT) -> RelationReport:
    """Every relation (b, B) that holds, the minimal ones, and the count
    of trivial ones (b in B, which always hold)."""
    g = ideal.q
    held = _held_nontrivial(ideal, limit)
    rels = []
    minimal = []
    trivial_count = 0
    for b in range(g):
        bbit = 1 << b
        for m in range(1, 1 << g):
            if m & bbit:
                rels.append(DivRel(b + 1, _mask_members(m)))
                trivial_count += 1
        got = held[b]
        rels.extend(DivRel(b + 1, _mask_members(m)) for m in sorted(got))
        minimal.extend(DivRel(b + 1, _mask_members(m)) for m in _minimal_masks(got))
    rels.sort(key=DivRel.sort_key)
    minimal.sort(key=DivRel.sort_key)
    return RelationReport(tuple(rels), tuple(minimal), trivial_count)


# ---------------------------------------------------------------------------
# Predicted relations between the generators of a square
# ---------------------------------------------------------------------------


def _pair_index(q: int) -> dict[tuple[int, int], int]:
    return {p: k + 1 for k, p in enumerate(n2_pairs(q))}


def _p(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i <= j else (j, i)


def square_relation_families(q: int, s: int | None = None) -> dict[str, frozenset[DivRel]]:
    """The relation families on the generators of a square, keyed
    "1", "2", "3a", "3b", "4a", "4b".

    Families 1 and 2 hold for any square-free ideal; the rest assume the
    ideal satisfies (1, {2..s}).  Indices refer to the canonical order
    of pair generators.
    """
    if s is not None and not 3 <= s <= q:
        raise ValueError(f"s={s} outside 3..q={q}")
    idx = _pair_index(q)
    fam: dict[str, set[DivRel]] = {k: set() for k in ("1", "2", "3a", "3b", "4a", "4b")}

    for i in range(1, q + 1):
        for j in range(i + 1, q + 1):
            for a in range(1, q + 1):
                if a not in (i, j):
                    fam["1"].add(DivRel(idx[(i, j)], {idx[(j, j)], idx[_p(i, a)]}))
            for b in range(1, q + 1):
                if b != i:
                    fam["2"].add(DivRel(idx[(i, j)], {idx[(i, i)], idx[_p(j, b)]}))

    if s is not None:
        ks = range(2, s + 1)

        def assignments(options):
            stack = [()]
            for opts in options:
                stack = [t + (o,) for t in stack for o in opts]
            return stack

        # (3a): j = 1, t_k in {1, k}
        for t in assignments([(1, k) for k in ks]):
            B = {idx[_p(k, tk)] for k, tk in zip(ks, t)}
            fam["3a"].add(DivRel(idx[(1, 1)], B))

        for j in range(s + 1, q + 1):
            # (3b): j > s, t_k in {1, j, k}, j among the t_k
            for t in assignments([(1, j, k) for k in ks]):
                if j in t:
                    B = {idx[_p(k, tk)] for k, tk in zip(ks, t)}
                    fam["3b"].add(DivRel(idx[(1, j)], B))
            # (4a): u > s, u != j, t_k in {1, k}
            for u in range(s + 1, q + 1):
                if u == j:
                    continue
                for t in assignments([(1, k) for k in ks]):
                    B = {idx[_p(k, tk)] for k, tk in zip(ks, t)}
                    B.add(idx[_p(u, j)])
                    fam["4a"].add(DivRel(idx[(1, j)], B))

        # (4b): j = u > 1, t_k > 1
        for j in range(2, q + 1):
            for t in assignments([tuple(range(2, q + 1)) for _ in ks]):
                B = {idx[_p(k, tk)] for k, tk in zip(ks, t)}
                B.add(idx[(j, j)])
                fam["4b"].add(DivRel(idx[(1, j)], B))

    return {k: frozenset(v) for k, v in fam.items()}


def predicted_square_relations(q: int, s: int | None = None) -> frozenset[DivRel]:
    fam = square_relation_families(q, s)
    out: set[DivRel] = set()
    for rels in fam.values():
        out |= rels
    return frozenset(out)


def predicted_minimal_square_relations(
    q: int, s: int | None = None
) -> tuple[frozenset[DivRel], frozenset[DivRel]]:
    """(predicted minimal set, relations of family 4b dropped as
    extensions of another 4b or a 3b relation)."""
    fam = square_relation_families(q, s)
    kept = set(fam["1"] | fam["2"] | fam["3a"] | fam["3b"] | fam["4a"])
    dropped = set()
    bases = fam["4b"] | fam["3b"]
    for r in fam["4b"]:
        if any(o.b == r.b and o.B < r.B for o in bases):
            dropped.add(r)
        else:
            kept.add(r)
    return frozenset(kept), frozenset(dropped)


# ---------------------------------------------------------------------------
# Exhaustive verification of the divisibility characterizations
# ---------------------------------------------------------------------------


def _predict_taylor_empty(q: int, has, i: int, j: int) -> bool:
    if i == j:
        return False
    if has(j, j) and any(has(*_p(i, a)) for a in range(1, q + 1) if a not in (i, j)):
        return True
    if has(i, i) and any(has(*_p(j, b)) for b in range(1, q + 1) if b != i):
        return True
    return False


def _predict_taylor_one(q: int, s: int, has, i: int, j: int) -> bool:
    if _predict_taylor_empty(q, has, i, j):
        return True
    if i != 1:
        return False
    if j == 1:
        return all(has(1, k) or has(k, k) for k in range(2, s + 1))
    if j > s:
        options = []
        for k in range(2, s + 1):
            opts = [t for t in (1, j, k) if has(*_p(k, t))]
            if not opts:
                options = None
                break
            options.append(opts)
        if options is not None and any(j in opts for opts in options):
            return True
        if any(has(*_p(u, j)) for u in range(s + 1, q + 1) if u != j):
            if all(has(1, k) or has(k, k) for k in range(2, s + 1)):
                return True
    if has(j, j):
        if all(any(has(*_p(k, t)) for t in range(2, q + 1)) for k in range(2, s + 1)):
            return True
    return False


def _predict_l2_one(q: int, s: int, has, i: int, j: int) -> bool:
    if i != 1:
        return False
    if all(has(*_p(k, j)) for k in range(2, s + 1)):
        return True
    if j > s:
        options = []
        for k in range(2, s + 1):
            opts = [t for t in (1, j) if has(*_p(k, t))]
            if not opts:
                options = None
                break
            options.append(opts)
        if (
            options is not None
            and any(1 in opts for opts in options)
            and any(j in opts for opts in options)
        ):
            return True
        if all(has(1, k) for k in range(2, s + 1)) and any(
            has(*_p(j, u)) for u in range(s + 1, q + 1) if u != j
        ):
            return True
    return False


@dataclass(frozen=True)
class CharacterizationReport:
    q: int
    s: int | None
    scope: str
    pairs_checked: int
    holds_count: int
    counterexamples: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "q": self.q,
            "s": self.s,
            "scope": self.scope,
            "pairsChecked": self.pairs_checked,
            "holdsCount": self.holds_count,
            "counterexamples": [
                {"pair": list(v), "faces": [list(p) for p in sig]}
                for v, sig in self.counterexamples
            ],
        }


def verify_square_characterization(
    q: int, s: int | None, scope: str
) -> CharacterizationReport:
    """Compare brute-force divisibility of pair generators against the
    predicted characterization, over every admissible (vertex, face) pair.

    scope "taylor" sweeps all subsets of the pair vertices (q <= 5);
    scope "l2" sweeps faces of the pair complex (q <= 6).
    """
    if scope not in ("taylor", "l2"):
        raise ValueError("scope must be 'taylor' or 'l2'")
    if scope == "taylor" and q > 5:
        raise CapacityError(f"taylor scope bounded at q <= 5 (got q={q})")
    if scope == "l2" and q > 6:
        raise CapacityError(f"l2 scope bounded at q <= 6 (got q={q})")

    rels = extremal.single_relation(s) if s is not None else ()
    ideal = extremal.extremal_generators(q, rels)
    pairs = n2_pairs(q)
    products = [
        ideal.generators[i - 1] * ideal.generators[j - 1] for (i, j) in pairs
    ]
    _, pmasks = level_masks(products)
    nv = len(pairs)

    if s is None:
        def predict(has, i, j, _q=q):
            if scope == "l2":
                return False
            return _predict_taylor_empty(_q, has, i, j)
    elif scope == "taylor":
        def predict(has, i, j, _q=q, _s=s):
            return _predict_taylor_one(_q, _s, has, i, j)
    else:
        def predict(has, i, j, _q=q, _s=s):
            return _predict_l2_one(_q, _s, has, i, j)

    bit_of = {p: k for k, p in enumerate(pairs)}

    def run_pairs(sigma_lcm_pairs):
        checked = 0
        holds = 0
        bad = []
        for sigma, lcm_levels, candidates in sigma_lcm_pairs:
            def has(a, b, _sigma=sigma):
                return _sigma >> bit_of[(a, b)] & 1

            for v in candidates:
                i, j = pairs[v]
                brute = mask_divides(pmasks[v], lcm_levels)
                if brute:
                    holds += 1
                if brute != predict(has, i, j):
                    if len(bad) < 32:
                        members = tuple(
                            pairs[k] for k in range(nv) if sigma >> k & 1
                        )
                        bad.append(((i, j), members))
                checked += 1
        return checked, holds, bad

    if scope == "taylor":
        table = _subset_lcm_table(pmasks)

        def sweep():
            for sigma in range(1 << nv):
                yield sigma, table[sigma], [v for v in range(nv) if not sigma >> v & 1]

    else:
        cx = l2(q)
        height = len(pmasks[0])
        bottom = (0,) * height
        lcm_by_face: dict[int, tuple[int, ...]] = {0: bottom}
        face_list = list(cx.faces())
        for f in face_list:
            low = f & -f
            lcm_by_face[f] = mask_lcm(lcm_by_face[f ^ low], pmasks[low.bit_length() - 1])

        def sweep():
            for f in face_list:
                m = f
                while m:
                    low = m & -m
                    m ^= low
                    v = low.bit_length() - 1
                    yield f ^ low, lcm_by_face[f ^ low], [v]

    checked, holds, bad = run_pairs(sweep())
    return CharacterizationReport(q, s, scope, checked, holds, tuple(bad))


@dataclass(frozen=True)
class AuditReport:
    q: int
    s: int
    brute_minimal: frozenset[DivRel]
    predicted_minimal: frozenset[DivRel]
    dropped_4b: frozenset[DivRel]

    @property
    def matches(self) -> bool:
        return self.brute_minimal == self.predicted_minimal

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "q": self.q,
            "s": self.s,
            "matches": self.matches,
            "bruteMinimal": [r.to_dict() for r in sorted(self.brute_minimal, key=DivRel.sort_key)],
            "predictedMinimal": [
                r.to_dict() for r in sorted(self.predicted_minimal, key=DivRel.sort_key)
            ],
            "dropped4b": [r.to_dict() for r in sorted(self.dropped_4b, key=DivRel.sort_key)],
        }


def minimality_audit(q: int, s: int) -> AuditReport:
    """Brute-force minimal relations of the extremal square versus the
    predicted minimal families (with the 4b extension filter)."""
    if not 3 <= s <= q <= 5:
        raise CapacityError(f"minimality audit bounded at 3 <= s <= q <= 5 (got q={q}, s={s})")
    square = extremal.power_generators(q, extremal.single_relation(s), 2)
    brute = minimal_relations(square, limit=16)
    predicted, dropped = predicted_minimal_square_relations(q, s)
    return AuditReport(q, s, brute, predicted, dropped)
