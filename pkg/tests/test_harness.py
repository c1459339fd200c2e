import math

import pytest

from transposynth.harness import (
    BoundMode,
    LowerBoundParams,
    TrialConfig,
    default_stats_filename,
    export_stats,
    lower_bound,
    parse_stats,
    run_count_study,
    sample_transpositions,
    to_markdown,
    transposition_family_size,
)
from transposynth.lowering import LoweringMode
from transposynth.transposition import SynthesisStrategy

B = SynthesisStrategy.THM3_B


def test_family_size():
    assert transposition_family_size(3) == 28
    assert transposition_family_size(4) == 120
    assert transposition_family_size(4, 2) == 48
    with pytest.raises(ValueError):
        transposition_family_size(4, 5)
    with pytest.raises(ValueError):
        transposition_family_size(0)


def test_sampling_is_deterministic_per_seed():
    one = sample_transpositions(8, 30, seed=42)
    two = sample_transpositions(8, 30, seed=42)
    other = sample_transpositions(8, 30, seed=43)
    assert one == two
    assert one != other


def test_sampling_streams_are_independent_per_n():
    # the stream is keyed on (seed, n): changing n reshuffles everything
    a = [s.a for s in sample_transpositions(9, 10, seed=1)]
    b = [s.a for s in sample_transpositions(10, 10, seed=1)]
    assert a != [bits[:9] for bits in b]


def test_sampling_draws_distinct_pairs():
    specs = sample_transpositions(5, 120, seed=0)
    pairs = {(s.a, s.b) for s in specs}
    assert len(pairs) == 120
    assert all(s.a_int < s.b_int for s in specs)


def test_sampling_respects_hamming_filter():
    for spec in sample_transpositions(6, 40, hamming_distance=3, seed=5):
        assert spec.hamming_distance() == 3


def test_small_population_returns_everything():
    specs = sample_transpositions(2, 50)
    assert len(specs) == transposition_family_size(2) == 6
    assert sample_transpositions(1, 10) == sample_transpositions(1, 99)


def test_exhaustive_mode_is_sorted_and_complete():
    specs = sample_transpositions(4, 10 ** 6, hamming_distance=2)
    assert len(specs) == 48
    keys = [(s.a_int, s.b_int) for s in specs]
    assert keys == sorted(keys)
    assert len(set(keys)) == 48


def test_sampling_validates_arguments():
    with pytest.raises(ValueError):
        sample_transpositions(4, 0)
    with pytest.raises(ValueError):
        sample_transpositions(4, 10, hamming_distance=0)


def test_lower_bound_reference_value():
    params = LowerBoundParams(n=10, d=3, c=2, family_size=1023)
    worst = lower_bound(params, BoundMode.WORST)
    assert abs(worst - math.log2(1023) / math.log2(270)) < 1e-15
    assert round(worst, 3) == 1.238


def test_lower_bound_average_below_worst():
    for fam in (2, 100, 2 ** 40):
        params = LowerBoundParams(n=12, d=4, c=3, family_size=fam)
        assert lower_bound(params, BoundMode.AVERAGE) <= lower_bound(params, BoundMode.WORST)


def test_lower_bound_grows_with_family():
    small = LowerBoundParams(n=8, d=2, c=2, family_size=100)
    big = LowerBoundParams(n=8, d=2, c=2, family_size=10000)
    assert lower_bound(big, BoundMode.WORST) > lower_bound(small, BoundMode.WORST)


def test_lower_bound_validation():
    with pytest.raises(ValueError):
        lower_bound(LowerBoundParams(n=4, d=2, c=5, family_size=10), BoundMode.WORST)
    with pytest.raises(ValueError):
        lower_bound(LowerBoundParams(n=4, d=2, c=2, family_size=0), BoundMode.WORST)
    with pytest.raises(ValueError):
        lower_bound(LowerBoundParams(n=4, d=2, c=2, family_size=1), BoundMode.AVERAGE)
    with pytest.raises(ValueError):
        lower_bound(LowerBoundParams(n=1, d=1, c=0, family_size=5), BoundMode.WORST)


def test_trial_defaults():
    assert TrialConfig((4,), B).resolved_trials() == 200
    assert TrialConfig((4,), B, hamming_distance=2).resolved_trials() == 100
    assert TrialConfig((4,), B, trials=17).resolved_trials() == 17


def test_study_row_contents():
    cfg = TrialConfig(n_values=(2, 3), strategy=B, trials=10, seed=3, optimize=True)
    rows = run_count_study(cfg).rows
    assert [r.n for r in rows] == [2, 3]
    r2 = rows[0]
    assert r2.trials == 6  # full population of n=2 pairs
    assert r2.strategy == "thm3_b"
    assert r2.avg_toffoli == 2.0
    assert r2.max_toffoli == 2
    assert r2.bound_toffoli == 2
    assert r2.bound_cnot == 4
    assert r2.verified_fraction == 1.0
    assert r2.seed == 3
    assert rows[1].avg_toffoli == 6.0


def test_study_gray_counts_at_toffoli_level():
    cfg = TrialConfig(n_values=(4,), strategy=SynthesisStrategy.GRAY_CODE, trials=8)
    row = run_count_study(cfg).rows[0]
    assert row.bound_toffoli is None
    assert row.avg_toffoli > 0  # MCX lowered before counting
    assert row.verified_fraction == 1.0


def test_study_with_lowering_leaves_no_toffolis():
    cfg = TrialConfig(n_values=(3,), strategy=B, trials=5,
                      lowering=LoweringMode.NAIVE)
    row = run_count_study(cfg).rows[0]
    assert row.max_toffoli == 0
    assert row.avg_t > 0
    assert row.verified_fraction == 1.0


def test_csv_round_trip(tmp_path):
    cfg = TrialConfig(n_values=(2, 4), strategy=B, trials=6, seed=9)
    result = run_count_study(cfg)
    path = export_stats(result, tmp_path / "rows.csv")
    text = path.read_text()
    assert text.startswith("# transposynth count study\n")
    assert "philox4x64" in text
    assert parse_stats(text) == list(result.rows)
    assert path.with_suffix(".md").exists()


def test_default_filename_and_markdown(tmp_path, monkeypatch):
    cfg = TrialConfig(n_values=(2,), strategy=B, trials=5, seed=11)
    assert default_stats_filename(cfg) == "study_thm3_b_11.csv"
    result = run_count_study(cfg)
    monkeypatch.chdir(tmp_path)
    path = export_stats(result)
    assert path.name == "study_thm3_b_11.csv"
    md = to_markdown(result)
    assert md.splitlines()[0].startswith("| n | trials |")
    assert "| 2 |" in md


def test_parse_rejects_unknown_columns():
    with pytest.raises(ValueError):
        parse_stats("a,b\n1,2\n")
