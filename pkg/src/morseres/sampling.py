"""Seeded generation of square-free ideals satisfying a divisibility
relation, for randomized property suites."""

from __future__ import annotations

import random
from typing import Iterator

from .monomials import Monomial, MonomialIdeal, VariableSet, lcm_of

LETTERS = "abcdefghijklmnop"


def random_squarefree_ideal(
    q: int = 4,
    s: int = 3,
    seed: int | None = 0,
    num_vars: int = 6,
    rng: random.Random | None = None,
    max_tries: int = 10_000,
) -> MonomialIdeal:
    """A minimally generated square-free ideal on q generators whose
    first generator divides lcm of generators 2..s.

    Deterministic for a fixed seed; generators 2..q are random
    square-free monomials, generator 1 is a random divisor of the lcm of
    generators 2..s, and draws are rejected until the generating set is
    minimal.
    """
    if not 3 <= s <= q:
        raise ValueError(f"need 3 <= s <= q (got q={q}, s={s})")
    if num_vars > len(LETTERS):
        raise ValueError(f"at most {len(LETTERS)} variables supported")
    rng = rng if rng is not None else random.Random(seed)
    ring = VariableSet(LETTERS[:num_vars])

    def draw_from(indices):
        while True:
            picked = [v for v in indices if rng.random() < 0.5]
            if len(picked) >= 2:
                exps = [0] * num_vars
                for v in picked:
                    exps[v] = 1
                return Monomial(ring, exps)

    for _ in range(max_tries):
        rest = [draw_from(range(num_vars)) for _ in range(q - 1)]
        target = lcm_of(rest[: s - 1], ring=ring)
        if len(target.support) < 2:
            continue
        first = draw_from(sorted(target.support))
        ideal = MonomialIdeal(ring, [first] + rest)
        if ideal.is_minimal:
            return ideal
    raise RuntimeError("failed to draw a minimal ideal; widen num_vars")


def random_ideals(
    trials: int,
    q: int = 4,
    s: int = 3,
    seed: int = 0,
    num_vars: int = 6,
) -> Iterator[MonomialIdeal]:
    """A deterministic stream of `trials` ideals for one seed."""
    rng = random.Random(seed)
    for _ in range(trials):
        yield random_squarefree_ideal(q, s, rng=rng, num_vars=num_vars)
