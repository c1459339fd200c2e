"""Gate-level circuit IR.

Immutable gates and circuits over the fixed alphabet {H, X, T, Tdg, S,
Sdg, CNOT, Toffoli, MCX}.  MCX (an X with any number of controls) is a
first-class gate so that multi-controlled constructions can be counted
and lowered explicitly instead of disappearing into a library call.

Contains:
  * GateKind / Gate and small constructor helpers (h, x, cnot, ...)
  * QubitRole and Circuit (a fixed register plus a gate sequence)
  * GateCounts / count_gates
  * inverse / concat / append_gate
  * text and OpenQASM 2 serialization

Convention: qubit i carries bit i of a basis label, and labels are
written lowest index first, so "011" means qubit 0 in |0>, qubits 1 and
2 in |1>.  All transforms return new values; nothing here mutates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class GateKind(Enum):
    H = "H"
    X = "X"
    T = "T"
    TDG = "TDG"
    S = "S"
    SDG = "SDG"
    CNOT = "CNOT"
    TOFFOLI = "TOFFOLI"
    MCX = "MCX"


# Controls each kind expects; None means "one or more" (MCX).
_CONTROL_ARITY: dict[GateKind, int | None] = {
    GateKind.H: 0,
    GateKind.X: 0,
    GateKind.T: 0,
    GateKind.TDG: 0,
    GateKind.S: 0,
    GateKind.SDG: 0,
    GateKind.CNOT: 1,
    GateKind.TOFFOLI: 2,
    GateKind.MCX: None,
}

_DAGGER = {
    GateKind.T: GateKind.TDG,
    GateKind.TDG: GateKind.T,
    GateKind.S: GateKind.SDG,
    GateKind.SDG: GateKind.S,
}

#: Kinds that equal their own inverse.
SELF_INVERSE_KINDS = frozenset(
    {GateKind.H, GateKind.X, GateKind.CNOT, GateKind.TOFFOLI, GateKind.MCX}
)

#: Kinds whose action permutes basis states (no phases, no superposition).
PERMUTATION_KINDS = frozenset(
    {GateKind.X, GateKind.CNOT, GateKind.TOFFOLI, GateKind.MCX}
)

#: Diagonal phase kinds.
PHASE_KINDS = frozenset({GateKind.T, GateKind.TDG, GateKind.S, GateKind.SDG})


class QubitRole(Enum):
    DATA = "data"
    CLEAN_ANCILLA = "clean"
    BORROWED_ANCILLA = "borrowed"


@dataclass(frozen=True)
class Gate:
    """One gate: a kind, an ordered control tuple and a target qubit."""

    kind: GateKind
    controls: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        arity = _CONTROL_ARITY[self.kind]
        if arity is None:
            if not self.controls:
                raise ValueError("MCX requires at least one control")
        elif len(self.controls) != arity:
            raise ValueError(
                f"{self.kind.value} takes {arity} control(s), got {len(self.controls)}"
            )
        qubits = self.controls + (self.target,)
        if any(q < 0 for q in qubits):
            raise ValueError(f"negative qubit index in {qubits}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"duplicate qubit in {self.kind.value} gate: {qubits}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def support(self) -> frozenset[int]:
        return frozenset(self.qubits)


def h(q: int) -> Gate:
    return Gate(GateKind.H, (), q)


def x(q: int) -> Gate:
    return Gate(GateKind.X, (), q)


def t(q: int) -> Gate:
    return Gate(GateKind.T, (), q)


def tdg(q: int) -> Gate:
    return Gate(GateKind.TDG, (), q)


def s(q: int) -> Gate:
    return Gate(GateKind.S, (), q)


def sdg(q: int) -> Gate:
    return Gate(GateKind.SDG, (), q)


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control,), target)


def toffoli(c1: int, c2: int, target: int) -> Gate:
    return Gate(GateKind.TOFFOLI, (c1, c2), target)


def mcx(controls: tuple[int, ...] | list[int], target: int) -> Gate:
    return Gate(GateKind.MCX, tuple(controls), target)


def inverse_gate(g: Gate) -> Gate:
    return Gate(_DAGGER.get(g.kind, g.kind), g.controls, g.target)


@dataclass(frozen=True)
class GateCounts:
    """Per-kind gate tally.  T/Tdg share t_type; S/Sdg share s_type."""

    h: int = 0
    x: int = 0
    cnot: int = 0
    toffoli: int = 0
    mcx: int = 0
    t_type: int = 0
    s_type: int = 0

    @property
    def total(self) -> int:
        return self.h + self.x + self.cnot + self.toffoli + self.mcx + self.t_type + self.s_type

    def __add__(self, other: GateCounts) -> GateCounts:
        return GateCounts(
            self.h + other.h,
            self.x + other.x,
            self.cnot + other.cnot,
            self.toffoli + other.toffoli,
            self.mcx + other.mcx,
            self.t_type + other.t_type,
            self.s_type + other.s_type,
        )

    def summary(self) -> str:
        return (
            f"h={self.h} x={self.x} cnot={self.cnot} toffoli={self.toffoli} "
            f"mcx={self.mcx} t={self.t_type} s={self.s_type} total={self.total}"
        )


_COUNT_FIELD = {
    GateKind.H: "h",
    GateKind.X: "x",
    GateKind.CNOT: "cnot",
    GateKind.TOFFOLI: "toffoli",
    GateKind.MCX: "mcx",
    GateKind.T: "t_type",
    GateKind.TDG: "t_type",
    GateKind.S: "s_type",
    GateKind.SDG: "s_type",
}


@dataclass(frozen=True)
class Circuit:
    """A register of num_qubits qubits (with roles) and a gate sequence."""

    num_qubits: int
    roles: tuple[QubitRole, ...]
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        if len(self.roles) != self.num_qubits:
            raise ValueError(
                f"got {len(self.roles)} roles for {self.num_qubits} qubits"
            )
        for g in self.gates:
            if max(g.qubits) >= self.num_qubits:
                raise ValueError(f"gate {g} outside register of {self.num_qubits}")

    def data_qubits(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.roles) if r is QubitRole.DATA)

    def __len__(self) -> int:
        return len(self.gates)


def circuit(
    num_qubits: int,
    gates: tuple[Gate, ...] | list[Gate] = (),
    roles: tuple[QubitRole, ...] | None = None,
) -> Circuit:
    """Build a circuit; roles default to all-data."""
    if roles is None:
        roles = (QubitRole.DATA,) * num_qubits
    return Circuit(num_qubits, tuple(roles), tuple(gates))


def append_gate(circ: Circuit, g: Gate) -> Circuit:
    return Circuit(circ.num_qubits, circ.roles, circ.gates + (g,))


def concat(first: Circuit, second: Circuit) -> Circuit:
    """Run first, then second.  Both must share the exact same register."""
    if first.num_qubits != second.num_qubits or first.roles != second.roles:
        raise ValueError("cannot concat circuits over different registers")
    return Circuit(first.num_qubits, first.roles, first.gates + second.gates)


def inverse(circ: Circuit) -> Circuit:
    """Reverse the gate order and dagger each gate."""
    return Circuit(
        circ.num_qubits,
        circ.roles,
        tuple(inverse_gate(g) for g in reversed(circ.gates)),
    )


def count_gates(circ: Circuit) -> GateCounts:
    tally = {name: 0 for name in ("h", "x", "cnot", "toffoli", "mcx", "t_type", "s_type")}
    for g in circ.gates:
        tally[_COUNT_FIELD[g.kind]] += 1
    return GateCounts(**tally)


# --- serialization ---------------------------------------------------------

_ROLE_NAME = {
    QubitRole.DATA: "data",
    QubitRole.CLEAN_ANCILLA: "clean",
    QubitRole.BORROWED_ANCILLA: "borrowed",
}
_NAME_ROLE = {v: k for k, v in _ROLE_NAME.items()}


def to_text(circ: Circuit) -> str:
    """Plain-text form: a qubits line, one role line per qubit, one gate
    line per gate (KIND, controls in order, target last)."""
    lines = [f"qubits {circ.num_qubits}"]
    for i, role in enumerate(circ.roles):
        lines.append(f"role {i} {_ROLE_NAME[role]}")
    for g in circ.gates:
        lines.append(" ".join([g.kind.value, *map(str, g.qubits)]))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Circuit:
    num_qubits = None
    roles: dict[int, QubitRole] = {}
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "qubits":
                if num_qubits is not None:
                    raise ValueError("duplicate qubits line")
                num_qubits = int(parts[1])
            elif parts[0] == "role":
                idx = int(parts[1])
                if idx in roles:
                    raise ValueError(f"duplicate role for qubit {idx}")
                roles[idx] = _NAME_ROLE[parts[2]]
            else:
                kind = GateKind(parts[0])
                qubits = [int(p) for p in parts[1:]]
                if not qubits:
                    raise ValueError("gate line without qubits")
                gates.append(Gate(kind, tuple(qubits[:-1]), qubits[-1]))
        except (KeyError, ValueError, IndexError) as exc:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}: {exc}") from exc
    if num_qubits is None:
        raise ValueError("missing qubits line")
    if sorted(roles) != list(range(num_qubits)):
        raise ValueError("need exactly one role line per qubit")
    return Circuit(num_qubits, tuple(roles[i] for i in range(num_qubits)), tuple(gates))


_QASM_NAME = {
    GateKind.H: "h",
    GateKind.X: "x",
    GateKind.T: "t",
    GateKind.TDG: "tdg",
    GateKind.S: "s",
    GateKind.SDG: "sdg",
    GateKind.CNOT: "cx",
    GateKind.TOFFOLI: "ccx",
}


def to_qasm2(circ: Circuit) -> str:
    """OpenQASM 2 over qelib1.  MCX has no qelib1 gate, so lower it first."""
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circ.num_qubits}];",
    ]
    for g in circ.gates:
        if g.kind is GateKind.MCX:
            raise ValueError("cannot emit MCX as OpenQASM 2; lower it first")
        args = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{_QASM_NAME[g.kind]} {args};")
    return "\n".join(lines) + "\n"
