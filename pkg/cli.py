"""
SKEWAID - Command Line
================================
Run with: python cli.py <command> FILE [options]

  invariants FILE                 elementary divisors and minimal indices
  smith FILE                      Smith diagonal of A + lam*B
  aid FILE --field real|closed    AID(g) by the constraint solver
  formula FILE --field ...        dimensions from an invariants file
  canonical FILE                  canonical pencil for a spec or invariants file
  congruent FILE1 FILE2           strict congruence test
  randomize FILE --seed N         random strict congruence (or GL2 mix)
  check FILE --field ... --seeds K
  corpus --field ... [--out DIR]

Exit codes: 0 ok, 1 computation error, 2 cross-check disagreement, 3 usage.
"""

import argparse
import sys
from pathlib import Path

from algebra.aid_solver import cross_check, field_mode, formula_dimension, solve_aid
from algebra.canonical_forms import build_spec, spec_from_invariants
from algebra.corpus import format_table, run_corpus
from algebra.genus2_lie import algebra_from_pencil
from algebra.pencil_invariants import (
    invariants,
    random_congruence,
    random_mix,
    smith_normal_form,
    strictly_congruent,
)
from config import (
    CORPUS_MIXES,
    CORPUS_SEEDS,
    CORPUS_WORKERS,
    DEFAULT_SEED,
    EXIT_DISAGREEMENT,
    EXIT_ERROR,
    EXIT_OK,
    EXIT_USAGE,
    OUTPUT_DIR,
    WITNESS_SAMPLES,
)
from diagnostics import log
from formats.codec import (
    aid_result_to_model,
    algebra_from_model,
    dump,
    invariants_from_model,
    invariants_to_model,
    load_input,
    pencil_from_model,
    pencil_to_model,
    pencils_of,
    smith_to_model,
    spec_from_model,
    to_pencil,
)
from formats.schemas import CongruentModel, CorpusRowModel, CorpusSummaryModel, FormulaModel


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to EXIT_USAGE."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(text: str):
    sys.stdout.write(text + "\n")


# ===========================================
# Commands
# ===========================================


def cmd_invariants(args) -> int:
    kind, model = load_input(args.file)
    _emit(dump(invariants_to_model(invariants(to_pencil(kind, model)))))
    return EXIT_OK


def cmd_smith(args) -> int:
    kind, model = load_input(args.file)
    p = to_pencil(kind, model)
    _emit(dump(smith_to_model(p.n, smith_normal_form(p.poly_matrix(), track=False).diagonal)))
    return EXIT_OK


def cmd_aid(args) -> int:
    kind, model = load_input(args.file)
    if kind == "algebra":
        g = algebra_from_model(model, args.allow_degenerate)
    elif kind == "pencil":
        g = algebra_from_pencil(pencil_from_model(model), args.allow_degenerate)
    else:
        raise ValueError(f"aid needs a pencil or algebra file, got {kind}")
    _emit(dump(aid_result_to_model(solve_aid(g, args.field))))
    return EXIT_OK


def cmd_formula(args) -> int:
    kind, model = load_input(args.file)
    if kind != "invariants":
        raise ValueError(f"formula needs an invariants file, got {kind}")
    dim_inn, dim_aid = formula_dimension(invariants_from_model(model), args.field)
    _emit(dump(FormulaModel(mode=args.field, dim_inn=dim_inn, dim_aid=dim_aid)))
    return EXIT_OK


def cmd_canonical(args) -> int:
    kind, model = load_input(args.file)
    if kind == "spec":
        spec = spec_from_model(model)
    elif kind == "invariants":
        spec = spec_from_invariants(invariants_from_model(model), allow_companion=args.companion)
    else:
        raise ValueError(f"canonical needs a spec or invariants file, got {kind}")
    _emit(dump(pencil_to_model(build_spec(spec))))
    return EXIT_OK


def cmd_congruent(args) -> int:
    p = to_pencil(*load_input(args.file1))
    q = to_pencil(*load_input(args.file2))
    _emit(dump(CongruentModel(congruent=strictly_congruent(p, q), n=[p.n, q.n])))
    return EXIT_OK


def cmd_randomize(args) -> int:
    p = to_pencil(*load_input(args.file))
    q = random_mix(p, args.seed) if args.mix else random_congruence(p, args.seed)
    _emit(dump(pencil_to_model(q)))
    return EXIT_OK


def cmd_check(args) -> int:
    kind, model = load_input(args.file)
    status = EXIT_OK
    for label, p in pencils_of(kind, model):
        base = cross_check(p, args.field, args.allow_degenerate)
        checks = [(label, base)]
        for seed in range(1, args.seeds + 1):
            checks.append((f"{label} @seed {seed}", cross_check(random_congruence(p, seed), args.field, args.allow_degenerate)))
        for name, check in checks:
            ok = check.agree and check.solver == base.solver
            inn, aid = check.solver
            if ok:
                _emit(f"{name}: (inn {inn}, aid {aid}) ✓")
            else:
                _emit(f"{name}: formula {check.formula} solver {check.solver} ✗")
                status = EXIT_DISAGREEMENT
    return status


def cmd_corpus(args) -> int:
    rows = run_corpus(
        args.field,
        workers=args.workers,
        seeds=args.seeds,
        mixes=args.mixes,
        witness_samples=args.witness,
    )
    _emit(format_table(rows))
    all_agree = all(row.agree for row in rows)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        models = [CorpusRowModel(**row.__dict__) for row in rows]
        for index, row in enumerate(models):
            (out / f"case_{index:03d}.json").write_text(dump(row) + "\n", encoding="utf-8")
        summary = CorpusSummaryModel(mode=args.field, rows=models, all_agree=all_agree)
        (out / "summary.json").write_text(dump(summary) + "\n", encoding="utf-8")
        log(f"Wrote {len(models)} case files to {out}", "CORPUS")
    return EXIT_OK if all_agree else EXIT_DISAGREEMENT


# ===========================================
# Parser
# ===========================================


def _field(value: str) -> str:
    try:
        return field_mode(value).value
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skewaid", description="Skew pencils, genus-2 Lie algebras and almost inner derivations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="elementary divisors and minimal indices")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("smith", help="Smith normal form diagonal of A + lam*B")
    p.add_argument("file")
    p.set_defaults(func=cmd_smith)

    p = sub.add_parser("aid", help="almost inner derivations by the constraint solver")
    p.add_argument("file")
    p.add_argument("--field", type=_field, default="real")
    p.add_argument("--allow-degenerate", action="store_true")
    p.set_defaults(func=cmd_aid)

    p = sub.add_parser("formula", help="closed-form dimensions from invariants")
    p.add_argument("file")
    p.add_argument("--field", type=_field, default="real")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("canonical", help="canonical pencil from a spec or invariants file")
    p.add_argument("file")
    p.add_argument("--companion", action="store_true",
                   help="realize real-split quadratic pairs by companion blocks")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("congruent", help="strict congruence test")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_congruent)

    p = sub.add_parser("randomize", help="seeded random strict congruence")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--mix", action="store_true", help="apply a GL2 mix of (A, B) instead")
    p.set_defaults(func=cmd_randomize)

    p = sub.add_parser("check", help="formula vs solver on a pencil and its random congruences")
    p.add_argument("file")
    p.add_argument("--field", type=_field, default="real")
    p.add_argument("--seeds", type=int, default=CORPUS_SEEDS)
    p.add_argument("--allow-degenerate", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("corpus", help="run the built-in acceptance corpus")
    p.add_argument("--field", type=_field, default="real")
    p.add_argument("--out", default="", help=f"directory for per-case JSON (e.g. {OUTPUT_DIR})")
    p.add_argument("--seeds", type=int, default=CORPUS_SEEDS, help="congruence seeds per case")
    p.add_argument("--mixes", type=int, default=CORPUS_MIXES, help="GL2 mixes per case")
    p.add_argument("--witness", type=int, default=WITNESS_SAMPLES, help="witness samples per case (0 skips the witness test)")
    p.add_argument("--workers", type=int, default=CORPUS_WORKERS)
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        log(f"{type(e).__name__}: {e}", "ERROR")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
