"""Lowering multi-controlled X gates to Toffoli networks.

Three interchangeable constructions for an n-control X (n >= 3), trading
ancilla requirements against Toffoli count:

  * mcx_borrowed     -- n-2 ancillas in *arbitrary* state, restored bit
                        for bit; exactly 4n-8 Toffolis.  The circuit is
                        its own inverse.
  * mcx_single_clean -- one ancilla known to be |0> (returned to |0>);
                        splits the controls in half and borrows idle
                        qubits for the two halves.  3 Toffolis at n=3,
                        6 at n=4, and at most 6n-18 from n=5 on.
  * mcx_clean_ladder -- n-2 ancillas known to be |0>; a compute/uncompute
                        ladder of exactly 2n-3 Toffolis.

lower_mcx applies one of these to every MCX in a circuit, taking
ancillas from an explicit pool (plus idle qubits, for the borrowed
construction).  lower_mcx_auto grows the register with borrowed
ancillas when a circuit has no idle qubits to offer.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .ir import (
    Circuit,
    Gate,
    GateKind,
    QubitRole,
    cnot,
    toffoli,
)


class McxStrategy(Enum):
    BORROWED = "borrowed"
    SINGLE_CLEAN = "single_clean"
    CLEAN_LADDER = "clean_ladder"


@dataclass(frozen=True)
class McxLayout:
    """Where an MCX lives: controls, target, and its ancilla block."""

    controls: tuple[int, ...]
    target: int
    ancillas: tuple[int, ...]
    ancilla_kind: QubitRole

    def __post_init__(self) -> None:
        if self.ancilla_kind not in (QubitRole.CLEAN_ANCILLA, QubitRole.BORROWED_ANCILLA):
            raise ValueError("ancilla_kind must be clean or borrowed")
        qubits = self.controls + (self.target,) + self.ancillas
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"overlapping qubits in layout: {qubits}")
        if len(self.controls) < 3:
            raise ValueError("constructions here start at 3 controls")

    def register_size(self) -> int:
        return max(self.controls + (self.target,) + self.ancillas) + 1


def _layout_circuit(layout: McxLayout, gates: list[Gate]) -> Circuit:
    roles = [QubitRole.DATA] * layout.register_size()
    for a in layout.ancillas:
        roles[a] = layout.ancilla_kind
    return Circuit(layout.register_size(), tuple(roles), tuple(gates))


def _borrowed_gates(
    controls: tuple[int, ...], target: int, ancillas: tuple[int, ...]
) -> list[Gate]:
    # Two identical half-blocks.  Each half sweeps a Toffoli ladder down
    # from the target through the ancillas and back up; running it twice
    # cancels every stray AND deposited on a borrowed ancilla.
    n = len(controls)
    half = [toffoli(ancillas[n - 3], controls[n - 1], target)]
    for j in range(n - 2, 1, -1):
        half.append(toffoli(ancillas[j - 2], controls[j], ancillas[j - 1]))
    half.append(toffoli(controls[0], controls[1], ancillas[0]))
    for j in range(2, n - 1):
        half.append(toffoli(ancillas[j - 2], controls[j], ancillas[j - 1]))
    return half + half


def _clean_ladder_gates(
    controls: tuple[int, ...], target: int, ancillas: tuple[int, ...]
) -> list[Gate]:
    # Compute partial ANDs up the ladder, flip the target, uncompute.
    n = len(controls)
    up = [toffoli(controls[0], controls[1], ancillas[0])]
    for j in range(1, n - 2):
        up.append(toffoli(ancillas[j - 1], controls[j + 1], ancillas[j]))
    up.append(toffoli(ancillas[n - 3], controls[n - 1], target))
    return up + up[-2::-1]


def _cnx_borrowing(
    controls: tuple[int, ...], target: int, spare: list[int]
) -> list[Gate]:
    k = len(controls)
    if k == 1:
        return [cnot(controls[0], target)]
    if k == 2:
        return [toffoli(controls[0], controls[1], target)]
    return _borrowed_gates(controls, target, tuple(spare[: k - 2]))


def _single_clean_gates(
    controls: tuple[int, ...], target: int, ancilla: int
) -> list[Gate]:
    # Split controls into halves x|y.  AND(x) lands on the clean ancilla,
    # then an X on the target controlled by y plus the ancilla, then the
    # first block again to return the ancilla to |0>.  Each block borrows
    # the lowest-indexed qubits it does not itself touch.
    n = len(controls)
    n_first = (n + 1) // 2
    x_block, y_block = controls[:n_first], controls[n_first:]
    first = _cnx_borrowing(x_block, ancilla, sorted(y_block + (target,)))
    second = _cnx_borrowing(y_block + (ancilla,), target, sorted(x_block))
    return first + second + first


def mcx_borrowed(layout: McxLayout) -> Circuit:
    """n-control X using n-2 borrowed ancillas and exactly 4n-8 Toffolis."""
    n = len(layout.controls)
    if layout.ancilla_kind is not QubitRole.BORROWED_ANCILLA:
        raise ValueError("mcx_borrowed wants borrowed ancillas")
    if len(layout.ancillas) != n - 2:
        raise ValueError(f"need {n - 2} ancillas for {n} controls, got {len(layout.ancillas)}")
    return _layout_circuit(layout, _borrowed_gates(layout.controls, layout.target, layout.ancillas))


def mcx_single_clean(layout: McxLayout) -> Circuit:
    """n-control X using one clean ancilla; at most 6n-18 Toffolis for n >= 5."""
    if layout.ancilla_kind is not QubitRole.CLEAN_ANCILLA:
        raise ValueError("mcx_single_clean wants a clean ancilla")
    if len(layout.ancillas) != 1:
        raise ValueError(f"need exactly one ancilla, got {len(layout.ancillas)}")
    return _layout_circuit(
        layout, _single_clean_gates(layout.controls, layout.target, layout.ancillas[0])
    )


def mcx_clean_ladder(layout: McxLayout) -> Circuit:
    """n-control X using n-2 clean ancillas and exactly 2n-3 Toffolis."""
    n = len(layout.controls)
    if layout.ancilla_kind is not QubitRole.CLEAN_ANCILLA:
        raise ValueError("mcx_clean_ladder wants clean ancillas")
    if len(layout.ancillas) != n - 2:
        raise ValueError(f"need {n - 2} ancillas for {n} controls, got {len(layout.ancillas)}")
    return _layout_circuit(
        layout, _clean_ladder_gates(layout.controls, layout.target, layout.ancillas)
    )


def borrowed_toffoli_count(n: int) -> int:
    """Toffolis emitted by mcx_borrowed for n >= 3 controls."""
    if n < 3:
        raise ValueError("defined for n >= 3")
    return 4 * n - 8


def clean_ladder_toffoli_count(n: int) -> int:
    """Toffolis emitted by mcx_clean_ladder for n >= 3 controls."""
    if n < 3:
        raise ValueError("defined for n >= 3")
    return 2 * n - 3


def single_clean_toffoli_count(n: int) -> int:
    """Toffolis emitted by mcx_single_clean for n >= 3 controls."""
    if n < 3:
        raise ValueError("defined for n >= 3")
    n_first = (n + 1) // 2
    n_second = n - n_first

    def cost(k: int) -> int:
        return 1 if k == 2 else 4 * k - 8

    return 2 * cost(n_first) + cost(n_second + 1)


def _lower_one(
    g: Gate,
    strategy: McxStrategy,
    pool: tuple[int, ...],
    register: int,
) -> list[Gate]:
    k = len(g.controls)
    if k == 1:
        return [cnot(g.controls[0], g.target)]
    if k == 2:
        return [toffoli(g.controls[0], g.controls[1], g.target)]
    used = set(g.qubits)
    if used & set(pool):
        raise ValueError(f"ancilla pool {pool} overlaps gate qubits {sorted(used)}")
    if strategy is McxStrategy.SINGLE_CLEAN:
        if not pool:
            raise ValueError("single_clean needs one clean ancilla in the pool")
        return _single_clean_gates(g.controls, g.target, pool[0])
    need = k - 2
    ancillas = list(pool)
    if strategy is McxStrategy.BORROWED and len(ancillas) < need:
        # Any idle qubit will do for a borrowed slot.
        taken = used | set(ancillas)
        ancillas += [q for q in range(register) if q not in taken][: need - len(ancillas)]
    if len(ancillas) < need:
        raise ValueError(
            f"{strategy.value} needs {need} ancillas for {k} controls, "
            f"only {len(ancillas)} available"
        )
    ancillas = tuple(ancillas[:need])
    if strategy is McxStrategy.BORROWED:
        return _borrowed_gates(g.controls, g.target, ancillas)
    return _clean_ladder_gates(g.controls, g.target, ancillas)


def lower_mcx(
    circ: Circuit,
    strategy: McxStrategy,
    ancilla_pool: tuple[int, ...] = (),
) -> Circuit:
    """Replace every MCX in circ by the chosen Toffoli construction.

    Clean strategies take ancillas from ancilla_pool only and trust the
    caller that those qubits are |0> whenever an MCX fires.  The borrowed
    strategy tops the pool up with idle qubits (lowest index first).
    One- and two-control MCX degenerate to CNOT / Toffoli.
    """
    out: list[Gate] = []
    for g in circ.gates:
        if g.kind is GateKind.MCX:
            out.extend(_lower_one(g, strategy, ancilla_pool, circ.num_qubits))
        else:
            out.append(g)
    return Circuit(circ.num_qubits, circ.roles, tuple(out))


def lower_mcx_auto(circ: Circuit) -> Circuit:
    """Borrowed lowering that grows the register when no qubit is idle.

    Appends just enough borrowed-role ancillas to cover the widest MCX,
    then lowers every MCX with mcx_borrowed semantics.
    """
    shortfall = 0
    for g in circ.gates:
        if g.kind is GateKind.MCX and len(g.controls) >= 3:
            idle = circ.num_qubits - len(g.qubits)
            shortfall = max(shortfall, len(g.controls) - 2 - idle)
    if shortfall == 0:
        return lower_mcx(circ, McxStrategy.BORROWED)
    extra = tuple(range(circ.num_qubits, circ.num_qubits + shortfall))
    grown = Circuit(
        circ.num_qubits + shortfall,
        circ.roles + (QubitRole.BORROWED_ANCILLA,) * shortfall,
        circ.gates,
    )
    return lower_mcx(grown, McxStrategy.BORROWED, extra)
