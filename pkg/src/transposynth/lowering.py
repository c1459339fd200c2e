"""Lowering Toffoli gates to the Clifford+T alphabet {H, T, Tdg, S, Sdg, CNOT}.

A Toffoli costs 6 CNOT, 2 H, 7 T-type and 1 S-type gates here.  Two
orientations of the same decomposition are provided; they are exact
inverses of each other, so when a circuit contains a repeated Toffoli
with nothing in between acting on shared qubits, lowering the second
occurrence in the inverted orientation lets a later redundancy pass
cancel the facing halves.  lower_all_toffolis' inverse_aware mode finds
such pairs; naive mode lowers everything in the standard orientation.
"""
from __future__ import annotations

from enum import Enum

from .ir import Circuit, Gate, GateKind, inverse_gate

_K = GateKind

# Template over slots: 0 and 1 are the controls, 2 the target.
_STANDARD: tuple[tuple, ...] = (
    (_K.H, 2),
    (_K.CNOT, 1, 2),
    (_K.TDG, 2),
    (_K.CNOT, 0, 2),
    (_K.T, 2),
    (_K.CNOT, 1, 2),
    (_K.TDG, 2),
    (_K.CNOT, 0, 2),
    (_K.TDG, 1),
    (_K.T, 2),
    (_K.CNOT, 0, 1),
    (_K.H, 2),
    (_K.TDG, 1),
    (_K.CNOT, 0, 1),
    (_K.T, 0),
    (_K.S, 1),
)


class ToffoliOrientation(Enum):
    STANDARD = "standard"
    INVERTED = "inverted"


class LoweringMode(Enum):
    NAIVE = "naive"
    INVERSE_AWARE = "inverse_aware"


def _instantiate(template, qubits: tuple[int, int, int]) -> list[Gate]:
    return [Gate(kind, tuple(qubits[s] for s in slots[:-1]), qubits[slots[-1]])
            for kind, *slots in template]


def lower_toffoli(g: Gate, orientation: ToffoliOrientation) -> list[Gate]:
    """Expand one Toffoli into 16 one- and two-qubit gates."""
    if g.kind is not GateKind.TOFFOLI:
        raise ValueError(f"expected a Toffoli, got {g.kind.value}")
    gates = _instantiate(_STANDARD, (g.controls[0], g.controls[1], g.target))
    if orientation is ToffoliOrientation.INVERTED:
        gates = [inverse_gate(q) for q in reversed(gates)]
    return gates


def _pair_second_occurrences(gates: tuple[Gate, ...]) -> dict[int, tuple[int, int]]:
    """Map each second-of-a-pair Toffoli index to its partner's control
    order: for each Toffoli, the next Toffoli on the same (unordered
    controls, target) triple with only disjoint-support gates in between.
    The inverted copy is instantiated on the partner's control order so the
    two expansions mirror gate-for-gate.  Pairs do not chain -- a second
    occurrence is never also a first."""
    inverted: dict[int, tuple[int, int]] = {}
    consumed: set[int] = set()
    for i, g in enumerate(gates):
        if g.kind is not GateKind.TOFFOLI or i in consumed or i in inverted:
            continue
        sup = g.support()
        ctrl = frozenset(g.controls)
        for j in range(i + 1, len(gates)):
            other = gates[j]
            if not (other.support() & sup):
                continue
            if (
                other.kind is GateKind.TOFFOLI
                and other.target == g.target
                and frozenset(other.controls) == ctrl
                and j not in inverted
                and j not in consumed
            ):
                inverted[j] = g.controls
                consumed.add(i)
            break
    return inverted


def lower_all_toffolis(circ: Circuit, mode: LoweringMode) -> Circuit:
    """Lower every Toffoli in circ.  MCX must already be lowered."""
    if any(g.kind is GateKind.MCX for g in circ.gates):
        raise ValueError("circuit still contains MCX; lower those first")
    inverted = (
        _pair_second_occurrences(circ.gates)
        if mode is LoweringMode.INVERSE_AWARE
        else {}
    )
    out: list[Gate] = []
    for i, g in enumerate(circ.gates):
        if g.kind is GateKind.TOFFOLI:
            if i in inverted:
                aligned = Gate(GateKind.TOFFOLI, inverted[i], g.target)
                out.extend(lower_toffoli(aligned, ToffoliOrientation.INVERTED))
            else:
                out.extend(lower_toffoli(g, ToffoliOrientation.STANDARD))
        else:
            out.append(g)
    return Circuit(circ.num_qubits, circ.roles, tuple(out))
