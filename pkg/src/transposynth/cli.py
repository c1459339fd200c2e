"""Command line front end.

Three subcommands:
  synth   synthesize one transposition, print or save the circuit
  verify  check a saved circuit against the transposition it claims
  study   sample many transpositions and tabulate gate counts

Exit codes: 0 on success (and on a passing verify), 1 when verification
fails, 2 on bad usage or unusable input.  Verification and statevector
runs refuse registers above 20 qubits unless TRANSPOSYNTH_SIM_CAP says
otherwise.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .ir import GateKind, count_gates, from_text, to_qasm2, to_text
from .harness import TrialConfig, export_stats, run_count_study, to_markdown
from .lowering import LoweringMode, lower_all_toffolis
from .mcx import lower_mcx_auto
from .peephole import remove_redundancies
from .simulator import sim_cap, verify_transposition
from .transposition import SynthesisStrategy, TranspositionSpec, synthesize_transposition

_STRATEGIES = [s.value for s in SynthesisStrategy]
_LOWERINGS = ["none"] + [m.value for m in LoweringMode]


def _parse_n_range(text: str) -> tuple[int, ...]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return (int(lo),)
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None
    if hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return tuple(range(lo_i, hi_i + 1))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transposynth",
        description="Synthesize, verify and benchmark basis-state transposition circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize one transposition circuit")
    synth.add_argument("--n", type=int, required=True, help="number of data qubits")
    synth.add_argument("--a", required=True, help="first basis label (bit i = qubit i)")
    synth.add_argument("--b", required=True, help="second basis label")
    synth.add_argument("--strategy", choices=_STRATEGIES, default="thm3_b")
    synth.add_argument("--lower", choices=_LOWERINGS, default="none",
                       help="expand Toffolis (and any MCX) to H/T/S/CNOT")
    synth.add_argument("--optimize", action="store_true",
                       help="run redundancy removal after synthesis")
    synth.add_argument("--format", choices=["text", "qasm2"], default="text")
    synth.add_argument("--out", type=Path, help="write the circuit here instead of stdout")
    synth.set_defaults(func=_cmd_synth)

    verify = sub.add_parser("verify", help="verify a circuit file implements a swap")
    verify.add_argument("--circuit", type=Path, required=True, help="circuit in text format")
    verify.add_argument("--a", required=True)
    verify.add_argument("--b", required=True)
    verify.set_defaults(func=_cmd_verify)

    study = sub.add_parser("study", help="gate-count study over random transpositions")
    study.add_argument("--n", type=_parse_n_range, required=True, metavar="N|LO..HI")
    study.add_argument("--strategy", choices=_STRATEGIES, default="thm3_b")
    study.add_argument("--trials", type=int, default=None,
                       help="pairs per n (default 200, or 100 with --hamming)")
    study.add_argument("--seed", type=int, default=0)
    study.add_argument("--hamming", type=int, default=None,
                       help="restrict pairs to this Hamming distance")
    study.add_argument("--lower", choices=_LOWERINGS, default="none")
    study.add_argument("--optimize", action="store_true")
    study.add_argument("--out", type=Path, help="CSV path (default study_<strategy>_<seed>.csv)")
    study.set_defaults(func=_cmd_study)
    return parser


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = TranspositionSpec(args.n, args.a, args.b)
    circ = synthesize_transposition(spec, SynthesisStrategy(args.strategy))
    if args.lower != "none":
        if any(g.kind is GateKind.MCX for g in circ.gates):
            circ = lower_mcx_auto(circ)
        circ = lower_all_toffolis(circ, LoweringMode(args.lower))
    if args.optimize:
        circ = remove_redundancies(circ)
    rendered = to_qasm2(circ) if args.format == "qasm2" else to_text(circ)
    summary = f"{count_gates(circ).summary()} qubits={circ.num_qubits}"
    if args.out:
        args.out.write_text(rendered)
        print(summary)
    else:
        sys.stdout.write(rendered)
        print(summary, file=sys.stderr)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    circ = from_text(args.circuit.read_text())
    spec = TranspositionSpec(len(args.a), args.a, args.b)
    swept = sum(r.value != "clean" for r in circ.roles)
    if swept > sim_cap():
        print(
            f"error: {swept} qubits to enumerate exceeds the cap of {sim_cap()} "
            f"(raise TRANSPOSYNTH_SIM_CAP to override)",
            file=sys.stderr,
        )
        return 2
    report = verify_transposition(circ, spec)
    print(report.to_text())
    return 0 if report.passed else 1


def _cmd_study(args: argparse.Namespace) -> int:
    config = TrialConfig(
        n_values=args.n,
        strategy=SynthesisStrategy(args.strategy),
        trials=args.trials,
        seed=args.seed,
        hamming_distance=args.hamming,
        lowering=None if args.lower == "none" else LoweringMode(args.lower),
        optimize=args.optimize,
    )
    result = run_count_study(config)
    path = export_stats(result, args.out)
    sys.stdout.write(to_markdown(result))
    print(f"wrote {path} and {path.with_suffix('.md')}", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
