"""Synthesis of basis-state transpositions.

A transposition swaps two n-bit basis states a and b and fixes every
other basis state.  The main construction sandwiches a pair of
projector-controlled X gates between two copies of a flag-controlled
bit-flip block:

    H(flag)
    CNOT(flag -> data_i)  for every bit where a and b differ
    X-sandwiched MCX(data -> flag) matching a
    X-sandwiched MCX(data -> flag) matching b
    CNOT(flag -> data_i)  again
    H(flag)

The two MCX gates are the whole cost, and the synthesis strategy picks
how they are lowered: thm3_a uses one extra clean qubit beyond the flag
(n+2 total for n >= 3), thm3_b uses n-2 extra clean qubits (2n-1 total)
for a shorter Toffoli count.  The gray strategy instead walks a to b
one bit flip at a time using projector-controlled X gates only, with no
ancillas, keeping MCX as a first-class gate.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .ir import Circuit, Gate, GateKind, QubitRole, cnot, h, mcx, x
from .mcx import McxStrategy, lower_mcx


class SynthesisStrategy(Enum):
    THM3_A = "thm3_a"
    THM3_B = "thm3_b"
    GRAY_CODE = "gray"


@dataclass(frozen=True)
class TranspositionSpec:
    """The pair of n-bit basis labels to swap.  Bit i belongs to qubit i."""

    n: int
    a: str
    b: str

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        for name, bits in (("a", self.a), ("b", self.b)):
            if len(bits) != self.n or set(bits) - {"0", "1"}:
                raise ValueError(f"{name}={bits!r} is not an {self.n}-bit string")
        if self.a == self.b:
            raise ValueError("a and b must differ")

    @property
    def a_int(self) -> int:
        return int(self.a[::-1], 2)

    @property
    def b_int(self) -> int:
        return int(self.b[::-1], 2)

    def differing_bits(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.a[i] != self.b[i])

    def hamming_distance(self) -> int:
        return len(self.differing_bits())


def ancilla_requirement(strategy: SynthesisStrategy, n: int) -> int:
    """Clean qubits the strategy adds beyond the n data qubits."""
    if strategy is SynthesisStrategy.GRAY_CODE:
        return 0
    if n <= 2:
        return 1  # just the flag
    if strategy is SynthesisStrategy.THM3_A:
        return 2
    return n - 1  # flag + n-2 ladder ancillas


def projector_controlled_x(pattern: str, controls: tuple[int, ...], target: int) -> list[Gate]:
    """X on target iff the control qubits match the given bit pattern.

    Emitted as an MCX conjugated by X on every control whose pattern bit
    is 0.  With no controls this is a bare X.
    """
    if len(pattern) != len(controls) or set(pattern) - {"0", "1"}:
        raise ValueError(f"pattern {pattern!r} does not fit controls {controls}")
    if not controls:
        return [x(target)]
    flips = [x(q) for q, bit in zip(controls, pattern) if bit == "0"]
    return flips + [mcx(controls, target)] + flips


def _flag_circuit(spec: TranspositionSpec) -> Circuit:
    """The flag construction with both MCX gates left as composites."""
    n = spec.n
    flag = n
    extra = ancilla_requirement(
        SynthesisStrategy.THM3_B if n > 2 else SynthesisStrategy.THM3_A, n
    )
    data = tuple(range(n))
    gates: list[Gate] = [h(flag)]
    bitflips = [cnot(flag, i) for i in spec.differing_bits()]
    gates += bitflips
    gates += projector_controlled_x(spec.a, data, flag)
    gates += projector_controlled_x(spec.b, data, flag)
    gates += bitflips
    gates.append(h(flag))
    # Register is sized here for thm3_b; thm3_a trims it after lowering.
    roles = (QubitRole.DATA,) * n + (QubitRole.CLEAN_ANCILLA,) * max(extra, 1)
    return Circuit(n + max(extra, 1), roles, tuple(gates))


def synthesize_transposition(spec: TranspositionSpec, strategy: SynthesisStrategy) -> Circuit:
    """Synthesize the swap of spec.a and spec.b.

    thm3_a / thm3_b return Toffoli-level circuits (data qubits 0..n-1,
    flag at n, clean ancillas above); gray returns an ancilla-free
    circuit with MCX composites.
    """
    if strategy is SynthesisStrategy.GRAY_CODE:
        return synthesize_gray_code(spec)
    n = spec.n
    composite = _flag_circuit(spec)
    if n <= 2:
        lowered = lower_mcx(composite, McxStrategy.BORROWED)
    elif strategy is SynthesisStrategy.THM3_A:
        lowered = lower_mcx(composite, McxStrategy.SINGLE_CLEAN, (n + 1,))
    else:
        lowered = lower_mcx(
            composite, McxStrategy.CLEAN_LADDER, tuple(range(n + 1, 2 * n - 1))
        )
    width = spec.n + ancilla_requirement(strategy, n)
    if lowered.num_qubits == width:
        return lowered
    return Circuit(width, lowered.roles[:width], lowered.gates)


def synthesize_gray_code(spec: TranspositionSpec) -> Circuit:
    """Swap a and b by chaining projector-controlled X gates.

    With m differing bits the walk takes 2m-1 projector steps: m-1 steps
    carry a to the neighbour of b one bit flip at a time, one step swaps
    that neighbour with b, and the m-1 steps run again in reverse to
    carry it back.  Uses no ancillas.
    """
    n = spec.n
    diffs = spec.differing_bits()
    states = [spec.a]
    for i in diffs[:-1]:
        prev = states[-1]
        states.append(prev[:i] + ("1" if prev[i] == "0" else "0") + prev[i + 1 :])

    def step(state: str, flip_bit: int) -> list[Gate]:
        controls = tuple(q for q in range(n) if q != flip_bit)
        pattern = "".join(state[q] for q in controls)
        return projector_controlled_x(pattern, controls, flip_bit)

    walk = [step(states[k], diffs[k]) for k in range(len(diffs) - 1)]
    core = step(states[-1], diffs[-1])
    gates: list[Gate] = []
    for block in walk:
        gates += block
    gates += core
    for block in reversed(walk):
        gates += block
    return Circuit(n, (QubitRole.DATA,) * n, tuple(gates))


def cnot_bound(n: int) -> int:
    """Cap on CNOT count for the flag construction: 2n, except 4 at n=1
    where the projector MCX gates also degenerate to CNOTs."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return 4 if n == 1 else 2 * n


def toffoli_bound(strategy: SynthesisStrategy, n: int) -> int | None:
    """Cap on Toffoli count after synthesis.  None for gray (MCX level)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if strategy is SynthesisStrategy.GRAY_CODE:
        return None
    if n == 1:
        return 0
    if n == 2:
        return 2
    if n == 3:
        return 6
    if strategy is SynthesisStrategy.THM3_A:
        return 12 * n - 36
    return 4 * n - 6
