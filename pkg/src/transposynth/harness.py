"""Reproducible gate-count studies over random transpositions.

Contains:
  * sample_transpositions -- seeded sampling of distinct (a, b) pairs,
    optionally restricted to a fixed Hamming distance; falls back to
    full enumeration when the population is no larger than the request
  * TrialConfig / run_count_study / StudyRow -- synthesize, optionally
    lower and optimize, count gates and verify, per n
  * lower_bound / LowerBoundParams / BoundMode -- how many gates any
    scheme needs to tell apart a family of permutations
  * export_stats / to_markdown / parse_stats -- CSV with a comment
    header recording the PRNG, plus a markdown mirror

Randomness is Philox4x64 keyed with (seed, n), so each register size
draws an independent, platform-stable stream; pairs are drawn by
rejection until distinct.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from pathlib import Path

import numpy as np

from .ir import count_gates
from .lowering import LoweringMode, lower_all_toffolis
from .mcx import lower_mcx_auto
from .peephole import remove_redundancies
from .simulator import verify_transposition
from .transposition import (
    SynthesisStrategy,
    TranspositionSpec,
    cnot_bound,
    synthesize_transposition,
    toffoli_bound,
)


class BoundMode(Enum):
    WORST = "worst"
    AVERAGE = "average"


@dataclass(frozen=True)
class LowerBoundParams:
    """A counting argument: circuits of k gates, each chosen from d kinds
    and placed on one of perm(n, c) qubit tuples, must number at least
    family_size."""

    n: int
    d: int
    c: int
    family_size: int


def lower_bound(params: LowerBoundParams, mode: BoundMode) -> float:
    """Gates needed so the reachable circuits cover the family (worst case)
    or cover half of it from the halfway point (average case)."""
    if params.n < 1 or params.d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if not 0 <= params.c <= params.n:
        raise ValueError(f"c={params.c} must lie in 0..{params.n}")
    if params.family_size < 1:
        raise ValueError("family_size must be positive")
    if mode is BoundMode.AVERAGE and params.family_size < 2:
        raise ValueError("average-case bound needs a family of at least 2")
    placements = math.perm(params.n, params.c) * params.d
    if placements <= 1:
        raise ValueError("fewer than two circuits per gate; bound is undefined")
    denom = math.log2(placements)
    if mode is BoundMode.WORST:
        return math.log2(params.family_size) / denom
    return 0.5 * (math.log2(params.family_size) - 1.0) / denom


def transposition_family_size(n: int, hamming_distance: int | None = None) -> int:
    """Distinct transpositions of n-bit states, optionally at fixed distance."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if hamming_distance is None:
        return (1 << (n - 1)) * ((1 << n) - 1)
    if not 1 <= hamming_distance <= n:
        raise ValueError(f"hamming distance must lie in 1..{n}")
    return (1 << (n - 1)) * math.comb(n, hamming_distance)


def _bits(value: int, n: int) -> str:
    return "".join(str((value >> i) & 1) for i in range(n))


def _pair_spec(n: int, lo: int, hi: int) -> TranspositionSpec:
    return TranspositionSpec(n, _bits(lo, n), _bits(hi, n))


def _unrank_mask(rank: int, n: int, d: int) -> int:
    # Combinadic unranking of the rank-th weight-d mask.
    mask = 0
    pos = 0
    while d > 0:
        with_pos = math.comb(n - pos - 1, d - 1)
        if rank < with_pos:
            mask |= 1 << pos
            d -= 1
        else:
            rank -= with_pos
        pos += 1
    return mask


def _enumerate_pairs(n: int, hamming_distance: int | None) -> list[tuple[int, int]]:
    if hamming_distance is None:
        size = 1 << n
        return [(lo, hi) for lo in range(size) for hi in range(lo + 1, size)]
    masks = [sum(1 << q for q in combo) for combo in combinations(range(n), hamming_distance)]
    pairs = [(a, a ^ m) for a in range(1 << n) for m in masks if a < a ^ m]
    return sorted(pairs)


def sample_transpositions(
    n: int,
    count: int,
    hamming_distance: int | None = None,
    seed: int = 0,
) -> list[TranspositionSpec]:
    """Draw count distinct transpositions of n-bit states.

    Pairs are unordered and returned with the numerically smaller label
    first.  When the whole population is no larger than count, it is
    returned in full (sorted) instead of sampled.
    """
    if count < 1:
        raise ValueError("count must be positive")
    population = transposition_family_size(n, hamming_distance)
    if population <= count:
        return [_pair_spec(n, lo, hi) for lo, hi in _enumerate_pairs(n, hamming_distance)]
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, n], dtype=np.uint64)))
    size = 1 << n
    n_masks = math.comb(n, hamming_distance) if hamming_distance else 0
    seen: set[tuple[int, int]] = set()
    out: list[TranspositionSpec] = []
    while len(out) < count:
        a = int(rng.integers(0, size))
        if hamming_distance is None:
            b = int(rng.integers(0, size - 1))
            if b >= a:
                b += 1
        else:
            b = a ^ _unrank_mask(int(rng.integers(0, n_masks)), n, hamming_distance)
        pair = (min(a, b), max(a, b))
        if pair in seen:
            continue
        seen.add(pair)
        out.append(_pair_spec(n, *pair))
    return out


@dataclass(frozen=True)
class TrialConfig:
    n_values: tuple[int, ...]
    strategy: SynthesisStrategy
    trials: int | None = None  # default 200, or 100 with a distance filter
    seed: int = 0
    hamming_distance: int | None = None
    lowering: LoweringMode | None = None
    optimize: bool = False
    verify_sample_size: int = 64
    # Registers wider than this are spot-checked instead of enumerated,
    # which keeps the n=20 end of a study from dominating its runtime.
    verify_enumeration_cap: int = 12

    def resolved_trials(self) -> int:
        if self.trials is not None:
            return self.trials
        return 100 if self.hamming_distance is not None else 200


@dataclass(frozen=True)
class StudyRow:
    n: int
    strategy: str
    trials: int
    avg_cnot: float
    max_cnot: int
    avg_toffoli: float
    max_toffoli: int
    avg_t: float
    avg_x: float
    avg_h: float
    bound_cnot: int
    bound_toffoli: int | None
    verified_fraction: float
    seed: int


@dataclass(frozen=True)
class StudyResult:
    config: TrialConfig
    rows: tuple[StudyRow, ...]


def _study_circuit(spec: TranspositionSpec, config: TrialConfig):
    circ = synthesize_transposition(spec, config.strategy)
    if config.strategy is SynthesisStrategy.GRAY_CODE:
        # Counted at Toffoli level like the others, borrowing ancillas.
        circ = lower_mcx_auto(circ)
    if config.lowering is not None:
        circ = lower_all_toffolis(circ, config.lowering)
    if config.optimize:
        circ = remove_redundancies(circ)
    return circ


def run_count_study(config: TrialConfig) -> StudyResult:
    rows = []
    for n in config.n_values:
        samples = sample_transpositions(
            n, config.resolved_trials(), config.hamming_distance, config.seed
        )
        tallies = []
        verified = 0
        for spec in samples:
            circ = _study_circuit(spec, config)
            tallies.append(count_gates(circ))
            report = verify_transposition(
                circ,
                spec,
                seed=config.seed,
                sample_size=config.verify_sample_size,
                enumeration_cap=config.verify_enumeration_cap,
            )
            verified += report.passed
        k = len(samples)
        rows.append(
            StudyRow(
                n=n,
                strategy=config.strategy.value,
                trials=k,
                avg_cnot=sum(c.cnot for c in tallies) / k,
                max_cnot=max(c.cnot for c in tallies),
                avg_toffoli=sum(c.toffoli for c in tallies) / k,
                max_toffoli=max(c.toffoli for c in tallies),
                avg_t=sum(c.t_type for c in tallies) / k,
                avg_x=sum(c.x for c in tallies) / k,
                avg_h=sum(c.h for c in tallies) / k,
                bound_cnot=cnot_bound(n),
                bound_toffoli=toffoli_bound(config.strategy, n),
                verified_fraction=verified / k,
                seed=config.seed,
            )
        )
    return StudyResult(config=config, rows=tuple(rows))


# --- persistence ------------------------------------------------------------

_CSV_COLUMNS = (
    "n",
    "strategy",
    "trials",
    "avg_cnot",
    "max_cnot",
    "avg_toffoli",
    "max_toffoli",
    "avg_t",
    "avg_x",
    "avg_h",
    "bound_cnot",
    "bound_toffoli",
    "verified_fraction",
    "seed",
)


def default_stats_filename(config: TrialConfig) -> str:
    return f"study_{config.strategy.value}_{config.seed}.csv"


def _render_csv(result: StudyResult) -> str:
    buf = io.StringIO()
    buf.write("# transposynth count study\n")
    buf.write("# prng=philox4x64 key=(seed,n) log_base=2\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for r in result.rows:
        writer.writerow(
            [
                r.n,
                r.strategy,
                r.trials,
                repr(r.avg_cnot),
                r.max_cnot,
                repr(r.avg_toffoli),
                r.max_toffoli,
                repr(r.avg_t),
                repr(r.avg_x),
                repr(r.avg_h),
                r.bound_cnot,
                "" if r.bound_toffoli is None else r.bound_toffoli,
                repr(r.verified_fraction),
                r.seed,
            ]
        )
    return buf.getvalue()


def parse_stats(text: str) -> list[StudyRow]:
    rows = []
    content = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.reader(content)
    header = next(reader)
    if tuple(header) != _CSV_COLUMNS:
        raise ValueError(f"unexpected columns: {header}")
    for rec in reader:
        vals = dict(zip(_CSV_COLUMNS, rec))
        rows.append(
            StudyRow(
                n=int(vals["n"]),
                strategy=vals["strategy"],
                trials=int(vals["trials"]),
                avg_cnot=float(vals["avg_cnot"]),
                max_cnot=int(vals["max_cnot"]),
                avg_toffoli=float(vals["avg_toffoli"]),
                max_toffoli=int(vals["max_toffoli"]),
                avg_t=float(vals["avg_t"]),
                avg_x=float(vals["avg_x"]),
                avg_h=float(vals["avg_h"]),
                bound_cnot=int(vals["bound_cnot"]),
                bound_toffoli=int(vals["bound_toffoli"]) if vals["bound_toffoli"] else None,
                verified_fraction=float(vals["verified_fraction"]),
                seed=int(vals["seed"]),
            )
        )
    return rows


def to_markdown(result: StudyResult) -> str:
    lines = [
        "| n | trials | avg CNOT | max CNOT | avg Toffoli | max Toffoli | avg T | avg X | avg H | bound CNOT | bound Toffoli | verified |",
        "|--:|-------:|---------:|---------:|------------:|------------:|------:|------:|------:|-----------:|--------------:|---------:|",
    ]
    for r in result.rows:
        bt = "-" if r.bound_toffoli is None else str(r.bound_toffoli)
        lines.append(
            f"| {r.n} | {r.trials} | {r.avg_cnot:.2f} | {r.max_cnot} "
            f"| {r.avg_toffoli:.2f} | {r.max_toffoli} | {r.avg_t:.2f} "
            f"| {r.avg_x:.2f} | {r.avg_h:.2f} | {r.bound_cnot} | {bt} "
            f"| {r.verified_fraction:.3f} |"
        )
    return "\n".join(lines) + "\n"


def export_stats(result: StudyResult, path: str | Path | None = None) -> Path:
    """Write the CSV (and a .md mirror next to it); returns the CSV path."""
    if path is None:
        path = Path(default_stats_filename(result.config))
    path = Path(path)
    path.write_text(_render_csv(result))
    path.with_suffix(".md").write_text(to_markdown(result))
    return path
