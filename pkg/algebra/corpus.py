"""
SKEWAID - Acceptance Corpus
Worked-example fixtures, single-block sweeps, additivity pairs and random
composite specs, each evaluated as formula vs solver, with optional
congruence, GL2-mixing and point-wise witness checks.
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from algebra.aid_solver import (
    FieldMode,
    cross_check,
    field_mode,
    negative_control,
    solve_aid,
    witness_check,
)
from algebra.canonical_forms import (
    SWEEP_ALPHAS,
    SWEEP_COMPLEX,
    BlockSpec,
    build_block,
    build_spec,
    direct_sum,
    random_spec,
)
from algebra.genus2_lie import algebra_from_pencil
from algebra.pencil_invariants import (
    Pencil,
    PencilInvariants,
    invariants,
    random_congruence,
    random_mix,
)
from config import FIXTURES_DIR
from diagnostics import debug, log
from formats.codec import load_input, to_pencil

ADDITIVITY_PAIRS = 10
COMPOSITE_SPECS = 25
COMPOSITE_MAX_N = 24


@dataclass
class CorpusCase:
    name: str
    group: str
    pencil: Pencil
    parts: Optional[tuple] = None


@dataclass
class CorpusRow:
    case: str
    group: str
    n: int
    dim_inn: int
    dim_aid_formula: int
    dim_aid_solver: int
    agree: bool
    notes: list = field(default_factory=list)


# ===========================================
# Case list
# ===========================================


def _fixture_pencil(name: str) -> Pencil:
    kind, model = load_input(FIXTURES_DIR / name)
    return to_pencil(kind, model)


def fixture_cases() -> list:
    return [
        CorpusCase("ex34", "fixture", _fixture_pencil("ex34_pencil.json")),
        CorpusCase("ex36", "fixture", _fixture_pencil("ex36_pencil.json")),
        CorpusCase("ex44", "fixture", _fixture_pencil("ex44_algebra.json")),
        CorpusCase("real-split", "fixture", _fixture_pencil("real_split_pencil.json")),
    ]


def sweep_cases() -> list:
    blocks = [BlockSpec.inf(e) for e in range(1, 5)]
    blocks += [BlockSpec.finite(alpha, f) for alpha in SWEEP_ALPHAS for f in range(1, 4)]
    blocks += [BlockSpec.complex(a, b, m) for a, b in SWEEP_COMPLEX for m in (1, 2)]
    blocks += [BlockSpec.minidx(eps) for eps in range(1, 5)]
    cases = [CorpusCase(b.label, "sweep", build_block(b)) for b in blocks]
    # M0 has no genus-2 algebra of its own
    partner = BlockSpec.minidx(2)
    cases.append(CorpusCase(
        f"{partner.label} + M0", "sweep", direct_sum([build_block(partner), build_block(BlockSpec.minidx(0))])
    ))
    return cases


def additivity_cases(count: int = ADDITIVITY_PAIRS, seed: int = 0) -> list:
    pool = [BlockSpec.inf(e) for e in (1, 2)]
    pool += [BlockSpec.finite(alpha, f) for alpha in SWEEP_ALPHAS[:3] for f in (1, 2)]
    pool += [BlockSpec.complex(a, b, 1) for a, b in SWEEP_COMPLEX]
    pool += [BlockSpec.minidx(eps) for eps in (1, 2, 3)]
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(count):
        left, right = (pool[int(k)] for k in rng.integers(0, len(pool), size=2))
        p, q = build_block(left), build_block(right)
        cases.append(CorpusCase(f"{left.label} (+) {right.label}", "additivity", direct_sum([p, q]), (p, q)))
    return cases


def composite_cases(count: int = COMPOSITE_SPECS, max_n: int = COMPOSITE_MAX_N) -> list:
    cases = []
    for seed in range(1, count + 1):
        spec = random_spec(seed, max_n=max_n)
        cases.append(CorpusCase(spec.label, "composite", build_spec(spec)))
    return cases


def default_cases() -> list:
    return fixture_cases() + sweep_cases() + additivity_cases() + composite_cases()


# ===========================================
# Evaluation
# ===========================================


def _exponent_profile(inv: PencilInvariants) -> tuple:
    """Multiset of (pair_count, exponent) and the minimal indices; locations ignored."""
    counts = Counter((d.pair_count, d.exponent) for d in inv.divisor_pairs)
    return tuple(sorted(counts.items())), inv.minimal_indices


def _solver_dims(p: Pencil, mode: FieldMode) -> tuple:
    result = solve_aid(algebra_from_pencil(p, allow_degenerate=True), mode)
    return result.dim_inn, result.dim_aid


def evaluate_case(case: CorpusCase, mode, seeds: int = 0, mixes: int = 0, witness_samples: int = 0) -> CorpusRow:
    """Formula vs solver (or summands vs sum for additivity cases), then the optional invariance and witness checks."""
    mode = field_mode(mode)
    notes = []
    check = cross_check(case.pencil, mode, allow_degenerate=True)
    agree = check.agree
    if not agree:
        notes.append(f"formula {check.formula} != solver {check.solver}")

    expected = check.formula[1]
    if case.parts:
        left, right = (_solver_dims(part, mode)[1] for part in case.parts)
        expected = left + right
        if check.solver[1] != expected:
            agree = False
            notes.append(f"additivity: {left} + {right} != {check.solver[1]}")

    for seed in range(1, seeds + 1):
        q = random_congruence(case.pencil, seed)
        if invariants(q) != check.invariants or _solver_dims(q, mode) != check.solver:
            agree = False
            notes.append(f"congruence seed {seed} changed the result")

    profile = _exponent_profile(check.invariants)
    for seed in range(1, mixes + 1):
        q = random_mix(case.pencil, seed)
        if _exponent_profile(invariants(q)) != profile or _solver_dims(q, mode) != check.solver:
            agree = False
            notes.append(f"GL2 mix seed {seed} changed the result")

    if witness_samples:
        g = algebra_from_pencil(case.pencil, allow_degenerate=True)
        result = solve_aid(g, mode)
        report = witness_check(g, result, samples=witness_samples)
        if not report.ok:
            agree = False
            notes.append(f"{len(report.failures)} AID basis elements failed the witness test")
        if not negative_control(g, result, samples=witness_samples):
            agree = False
            notes.append("a non-AID central derivation passed every point")

    debug(f"{case.name}: formula {check.formula} solver {check.solver}", "CORPUS")
    return CorpusRow(case.name, case.group, case.pencil.n, check.solver[0],
                     expected, check.solver[1], agree, notes)


def run_corpus(mode, cases: Optional[list] = None, workers: int = 1, seeds: int = 0,
               mixes: int = 0, witness_samples: int = 0) -> list:
    """Rows in case order regardless of completion order."""
    mode = field_mode(mode)
    cases = default_cases() if cases is None else cases
    log(f"Evaluating {len(cases)} cases ({mode.value}, {workers} worker(s))", "CORPUS")

    def run(case):
        return evaluate_case(case, mode, seeds, mixes, witness_samples)

    if workers <= 1:
        return [run(case) for case in cases]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, cases))


def format_table(rows: list) -> str:
    header = f"{'case':<40} {'n':>3} {'inn':>4} {'aid(f)':>7} {'aid(s)':>7}  agree"
    lines = [header, "-" * len(header)]
    for row in rows:
        mark = "yes" if row.agree else "NO"
        lines.append(
            f"{row.case[:40]:<40} {row.n:>3} {row.dim_inn:>4} {row.dim_aid_formula:>7} {row.dim_aid_solver:>7}  {mark}"
        )
    return "\n".join(lines)
