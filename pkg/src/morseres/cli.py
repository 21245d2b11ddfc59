"""Command-line interface: constructions, reports and verification
suites reproducing the documented cell counts and Betti numbers.

Every run is deterministic for a fixed configuration; randomized suites
take an explicit seed.  JSON artifacts carry ``"schema": 1``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import betti as betti_mod
from . import morse as morse_mod
from . import relations as rel_mod
from .complexes import LabeledComplex, SimplicialComplex, l2, taylor
from .extremal import extremal_generators, power_generators, single_relation
from .monomials import MonomialIdeal, VariableSet
from .sampling import random_ideals


def _emit(payload, args, csv_rows=None) -> None:
    if getattr(args, "format", "json") == "csv" and csv_rows is not None:
        text = "\n".join(",".join(str(c) for c in row) for row in csv_rows) + "\n"
    elif isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_rel(text: str) -> tuple[int, frozenset[int]]:
    b, _, rest = text.partition(":")
    members = frozenset(int(x) for x in rest.replace(" ", "").split(",") if x)
    if not members:
        raise argparse.ArgumentTypeError(f"relation {text!r} must look like '1:2,3'")
    return int(b), members


def _face_json(cx: SimplicialComplex, mask: int):
    return [list(v) if isinstance(v, tuple) else v for v in cx.members(mask)]


def _face_name(cx: SimplicialComplex, mask: int) -> str:
    return " ".join(
        f"{v[0]}{v[1]}" if isinstance(v, tuple) else str(v) for v in cx.members(mask)
    )


def cmd_extremal(args) -> int:
    rels = tuple(args.rel or ())
    ideal = (
        power_generators(args.q, rels, args.power)
        if args.power > 1
        else extremal_generators(args.q, rels)
    )
    _emit(ideal.to_dict(), args)
    return 0


def cmd_relations(args) -> int:
    ideal = MonomialIdeal.load(args.ideal)
    report = rel_mod.all_relations(ideal, limit=args.limit)
    payload = report.to_dict()
    if args.minimal_only:
        payload.pop("all")
    _emit(payload, args)
    return 0


def cmd_complex(args) -> int:
    cx = taylor(args.q) if args.type == "taylor" else l2(args.q)
    if args.faces:
        payload = {
            "schema": 1,
            "type": args.type,
            "q": args.q,
            "faces": [_face_json(cx, m) for m in cx.faces()],
        }
    else:
        payload = {
            "schema": 1,
            "type": args.type,
            "q": args.q,
            "fvector": list(cx.f_vector()),
        }
    _emit(payload, args)
    return 0


def cmd_morse(args) -> int:
    q, s = args.q, args.s
    if args.emit == "cells":
        mc = morse_mod.morse_complex(q, s, with_order=False)
        payload = {
            "schema": 1,
            "q": q,
            "s": s,
            "counts": list(mc.counts()),
            "cells": [
                [_face_json(mc.complex, f) for f in group] for group in mc.cells
            ],
        }
        _emit(payload, args)
        return 0
    if args.emit == "matching":
        spec, matching = morse_mod.matching_l2(q, s)
        cx = spec.complex
        payload = {
            "schema": 1,
            "q": q,
            "s": s,
            "pivots": [_face_json(cx, f) for f in spec.order],
            "edges": [
                [_face_json(cx, big), _face_json(cx, small)]
                for big, small in matching.pairs
            ],
        }
        _emit(payload, args)
        return 0
    mc = morse_mod.morse_complex(q, s, with_order=True)
    if args.emit == "order":
        payload = {
            "schema": 1,
            "q": q,
            "s": s,
            "order": [
                [_face_json(mc.complex, t), _face_json(mc.complex, s_)]
                for s_, t in sorted(mc.order)
            ],
        }
        _emit(payload, args)
        return 0
    lines = [f'digraph cells_q{q}_s{s} {{']
    for group in mc.cells:
        for f in group:
            lines.append(f'  "{_face_name(mc.complex, f)}";')
    for s_, t in sorted(mc.order):
        lines.append(
            f'  "{_face_name(mc.complex, t)}" -> "{_face_name(mc.complex, s_)}";'
        )
    lines.append("}")
    _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_betti(args) -> int:
    ideal = MonomialIdeal.load(args.ideal)
    table = betti_mod.graded_betti(ideal, args.field)
    payload = table.to_dict()
    if not args.graded:
        payload.pop("graded")
    rows = [["degree", "lcm", "betti"]] + [
        [i, str(m), v] for i, m, v in table.entries
    ]
    _emit(payload, args, csv_rows=rows if args.graded else None)
    return 0


def cmd_pd(args) -> int:
    first, second = betti_mod.pd_formula(args.q, args.s)
    _emit(
        {"schema": 1, "q": args.q, "s": args.s, "ideal": first, "square": second},
        args,
    )
    return 0


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


def _check(name: str, got, expected) -> dict:
    ok = got == expected
    return {"name": name, "ok": ok, "got": got, "expected": expected}


def suite_table1() -> list[dict]:
    got1 = list(l2(4).f_vector()[1:])
    got2 = list(morse_mod.critical_counts(4, 3, length=6))
    return [
        _check("pair-complex q=4 cell counts", got1, [10, 27, 32, 19, 6, 1]),
        _check("pruned q=4 s=3 cell counts", got2, [10, 21, 15, 3, 0, 0]),
    ]


def _example_ideals() -> dict[str, MonomialIdeal]:
    r1 = VariableSet("abcdefg")
    r2 = VariableSet("abcdef")
    return {
        "I1": MonomialIdeal(r1, [r1.parse(t) for t in ("ab", "bcd", "aef", "cg")]),
        "I2": MonomialIdeal(r2, [r2.parse(t) for t in ("ab", "bcd", "aef", "ce")]),
    }


def suite_examples() -> list[dict]:
    ideals = _example_ideals()
    sq1 = ideals["I1"].power(2)
    sq2 = ideals["I2"].power(2).minimalize()
    sqd = power_generators(4, [(1, {2, 3}), (4, {2, 3})], 2)
    checks = [
        _check("I1 square Betti", list(betti_mod.total_betti(sq1, length=4)), [10, 17, 9, 1]),
        _check("I1 square pd", betti_mod.projective_dimension(sq1), 3),
        _check("I2 square Betti (minimalized)", list(betti_mod.total_betti(sq2, length=4)), [9, 14, 6, 0]),
        _check("I2 square pd", betti_mod.projective_dimension(sq2), 2),
        _check(
            "two-relation extremal square Betti",
            list(betti_mod.total_betti(sqd, length=4)),
            [10, 21, 14, 2],
        ),
        _check("two-relation extremal square pd", betti_mod.projective_dimension(sqd), 3),
    ]
    for name, ideal in (("I1 square", sq1), ("I2 square", sq2), ("two-relation square", sqd)):
        checks.append(
            _check(
                f"{name} fields agree",
                list(betti_mod.total_betti(ideal, "rational")),
                list(betti_mod.total_betti(ideal, "gf2")),
            )
        )
    return checks


def suite_pd(qmax: int = 6) -> list[dict]:
    checks = []
    for q in range(3, qmax + 1):
        for s in range(3, q + 1):
            first, second = betti_mod.pd_formula(q, s)
            gamma = morse_mod.prune_taylor_first_power(q, s).gamma
            got_first = max(f.bit_count() for f in gamma.faces()) - 1
            crit = morse_mod.critical_closed_form_l2(q, s)
            got_second = max(f.bit_count() for f in crit) - 1
            checks.append(
                _check(f"pd q={q} s={s}", [got_first, got_second], [first, second])
            )
    return checks


def suite_characterization(qmax: int = 5) -> list[dict]:
    checks = []
    for q in range(1, min(qmax, 3) + 1):
        rep = rel_mod.verify_square_characterization(q, None, "taylor")
        checks.append(
            _check(f"characterization taylor q={q} (no relation)", len(rep.counterexamples), 0)
        )
    if qmax >= 4:
        rep = rel_mod.verify_square_characterization(4, 3, "taylor")
        checks.append(_check("characterization taylor q=4 s=3", len(rep.counterexamples), 0))
    for q in range(3, min(qmax, 6) + 1):
        for s in range(3, q + 1):
            rep = rel_mod.verify_square_characterization(q, s, "l2")
            checks.append(
                _check(f"characterization l2 q={q} s={s}", len(rep.counterexamples), 0)
            )
    for q in range(3, min(qmax, 5) + 1):
        for s in range(3, q + 1):
            audit = rel_mod.minimality_audit(q, s)
            checks.append(_check(f"minimality audit q={q} s={s}", audit.matches, True))
    return checks


def suite_engine(qmax: int = 6) -> list[dict]:
    checks = []
    for q in range(3, qmax + 1):
        cx = l2(q)
        faces = list(cx.faces())
        for s in range(3, q + 1):
            spec, matching = morse_mod.matching_l2(q, s)
            engine = morse_mod.critical_cells(faces, spec)
            closed = morse_mod.critical_closed_form_l2(q, s)
            checks.append(_check(f"engine=closed-form q={q} s={s}", engine == closed, True))
            checks.append(
                _check(f"acyclic q={q} s={s}", morse_mod.is_acyclic(faces, matching), True)
            )
    return checks


def suite_homogeneity(trials: int = 100, seed: int = 0) -> list[dict]:
    checks = []
    for q in range(3, 6):
        for s in range(3, q + 1):
            spec, matching = morse_mod.matching_l2(q, s)
            labels = LabeledComplex(spec.complex, power_generators(q, single_relation(s), 2))
            checks.append(
                _check(
                    f"homogeneous extremal labels q={q} s={s}",
                    morse_mod.is_homogeneous(matching, labels),
                    True,
                )
            )
    spec, matching = morse_mod.matching_l2(4, 3)
    bad = 0
    for ideal in random_ideals(trials, q=4, s=3, seed=seed):
        labels = LabeledComplex(spec.complex, ideal.power(2))
        if not morse_mod.is_homogeneous(matching, labels):
            bad += 1
    checks.append(_check(f"homogeneous over {trials} random ideals", bad, 0))
    return checks


def suite_minimality() -> list[dict]:
    checks = []
    for q, expected in ((3, [6, 6, 1]), (4, [10, 21, 15, 3])):
        square = power_generators(q, single_relation(3), 2)
        got = list(betti_mod.total_betti(square))
        counts = list(morse_mod.critical_counts(q, 3))
        checks.append(_check(f"oracle equals cell counts q={q} s=3", got, expected))
        checks.append(_check(f"cell counts q={q} s=3", counts, expected))
    return checks


def suite_upper_bound(trials: int = 100, seed: int = 0) -> list[dict]:
    bound = morse_mod.critical_counts(4, 3, length=6)
    violations = 0
    for ideal in random_ideals(trials, q=4, s=3, seed=seed):
        square = ideal.power(2).minimalize()
        totals = betti_mod.total_betti(square, length=6)
        if any(b > c for b, c in zip(totals, bound)):
            violations += 1
    return [_check(f"Betti bound over {trials} random ideals", violations, 0)]


def suite_cell_order() -> list[dict]:
    checks = []
    for q, s in ((3, 3), (4, 3), (4, 4), (5, 3)):
        try:
            morse_mod.morse_complex(q, s, with_order=True, cross_check=True)
            ok = True
        except AssertionError:
            ok = False
        checks.append(_check(f"cell order closed form q={q} s={s}", ok, True))
    return checks


def suite_first_power() -> list[dict]:
    checks = []
    fp = morse_mod.prune_taylor_first_power(4, 3)
    checks.append(
        _check("pruned simplex q=4 s=3 f-tail", list(fp.gamma.f_vector()[1:]), [4, 5, 2])
    )
    for name, rels in (
        ("one relation", [(1, {2, 3})]),
        ("two relations", [(1, {2, 3}), (4, {2, 3})]),
    ):
        ideal = extremal_generators(4, rels)
        checks.append(
            _check(
                f"extremal first-power Betti ({name})",
                list(betti_mod.total_betti(ideal, length=3)),
                [4, 5, 2],
            )
        )
    return checks


SUITES = {
    "table1": lambda args: suite_table1(),
    "examples": lambda args: suite_examples(),
    "pd": lambda args: suite_pd(args.qmax or 6),
    "characterization": lambda args: suite_characterization(args.qmax or 5),
    "engine": lambda args: suite_engine(args.qmax or 6),
    "homogeneity": lambda args: suite_homogeneity(args.trials, args.seed),
    "minimality": lambda args: suite_minimality(),
    "upperbound": lambda args: suite_upper_bound(args.trials, args.seed),
    "cellorder": lambda args: suite_cell_order(),
    "firstpower": lambda args: suite_first_power(),
}


def _print_checks(checks: list[dict]) -> bool:
    ok = True
    for c in checks:
        mark = "PASS" if c["ok"] else "FAIL"
        detail = "" if c["ok"] else f"  (got {c['got']!r}, expected {c['expected']!r})"
        print(f"{mark}  {c['name']}{detail}")
        ok = ok and c["ok"]
    return ok


def cmd_verify(args) -> int:
    checks = SUITES[args.suite](args)
    ok = _print_checks(checks)
    if args.suite == "table1" and args.format == "csv":
        rows = [["complex"] + [f"beta{i}" for i in range(6)]]
        rows.append(["L2_4"] + list(l2(4).f_vector()[1:]))
        rows.append(["L2_4_D"] + list(morse_mod.critical_counts(4, 3, length=6)))
        text = "\n".join(",".join(str(c) for c in row) for row in rows) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0 if ok else 1


def cmd_report(args) -> int:
    all_checks = []
    for name in (
        "table1",
        "examples",
        "engine",
        "homogeneity",
        "minimality",
        "pd",
        "characterization",
        "cellorder",
        "upperbound",
        "firstpower",
    ):
        print(f"== suite {name}")
        checks = SUITES[name](args)
        _print_checks(checks)
        for c in checks:
            c["suite"] = name
        all_checks.extend(checks)
    ok = all(c["ok"] for c in all_checks)
    print(f"== {'ALL PASS' if ok else 'FAILURES PRESENT'} "
          f"({sum(c['ok'] for c in all_checks)}/{len(all_checks)})")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"schema": 1, "ok": ok, "checks": all_checks}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morseres",
        description="Cellular resolutions of squares of square-free monomial ideals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extremal", help="emit an extremal ideal (or a power of it)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--rel", type=_parse_rel, action="append", help="relation as 'b:i,j,...'")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("relations", help="divisibility relations of an ideal file")
    p.add_argument("--ideal", required=True)
    p.add_argument("--limit", type=int, default=rel_mod.BRUTE_FORCE_LIMIT)
    p.add_argument("--minimal-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("complex", help="f-vector or face list of a supporting complex")
    p.add_argument("--type", choices=["taylor", "l2"], required=True)
    p.add_argument("--q", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--fvector", action="store_true")
    group.add_argument("--faces", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("morse", help="matching, cells or cell order of the pruned complex")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--emit", choices=["cells", "matching", "order", "dot"], default="cells")
    p.add_argument("--out")
    p.set_defaults(func=cmd_morse)

    p = sub.add_parser("betti", help="Betti table of an ideal file")
    p.add_argument("--ideal", required=True)
    p.add_argument("--field", default="gf2")
    p.add_argument("--graded", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("pd", help="projective-dimension formulas")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pd)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="run every suite and emit a combined document")
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
