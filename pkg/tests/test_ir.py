import pytest

from transposynth.ir import (
    Circuit,
    Gate,
    GateCounts,
    GateKind,
    QubitRole,
    append_gate,
    circuit,
    cnot,
    concat,
    count_gates,
    from_text,
    h,
    inverse,
    mcx,
    s,
    t,
    tdg,
    to_qasm2,
    to_text,
    toffoli,
    x,
)


def test_gate_arity_validation():
    with pytest.raises(ValueError):
        Gate(GateKind.H, (0,), 1)
    with pytest.raises(ValueError):
        Gate(GateKind.CNOT, (), 0)
    with pytest.raises(ValueError):
        Gate(GateKind.TOFFOLI, (0,), 1)
    with pytest.raises(ValueError):
        Gate(GateKind.MCX, (), 0)


def test_gate_rejects_duplicate_and_negative_qubits():
    with pytest.raises(ValueError):
        cnot(1, 1)
    with pytest.raises(ValueError):
        toffoli(0, 2, 2)
    with pytest.raises(ValueError):
        Gate(GateKind.X, (), -1)


def test_gate_support_and_qubits():
    g = mcx((3, 1, 4), 0)
    assert g.qubits == (3, 1, 4, 0)
    assert g.support() == frozenset({0, 1, 3, 4})


def test_circuit_rejects_out_of_range_gate():
    with pytest.raises(ValueError):
        circuit(2, [toffoli(0, 1, 2)])


def test_circuit_rejects_role_mismatch():
    with pytest.raises(ValueError):
        Circuit(3, (QubitRole.DATA,), ())


def test_append_and_concat():
    c = circuit(3)
    c = append_gate(c, h(0))
    c = append_gate(c, cnot(0, 1))
    d = concat(c, c)
    assert len(d) == 4
    assert d.gates[2] == h(0)


def test_concat_requires_same_register():
    with pytest.raises(ValueError):
        concat(circuit(2), circuit(3))
    a = circuit(2, roles=(QubitRole.DATA, QubitRole.CLEAN_ANCILLA))
    with pytest.raises(ValueError):
        concat(a, circuit(2))


def test_counts_by_kind():
    c = circuit(5, [h(0), x(1), t(2), tdg(2), s(3), cnot(0, 1),
                    toffoli(0, 1, 2), mcx((0, 1, 2), 3)])
    k = count_gates(c)
    assert (k.h, k.x, k.cnot, k.toffoli, k.mcx) == (1, 1, 1, 1, 1)
    assert k.t_type == 2  # T and Tdg pool together
    assert k.s_type == 1
    assert k.total == 8


def test_counts_are_additive():
    a = circuit(3, [h(0), t(1), cnot(1, 2)])
    b = circuit(3, [tdg(1), toffoli(0, 1, 2)])
    assert count_gates(concat(a, b)) == count_gates(a) + count_gates(b)


def test_counts_total_is_field_sum():
    k = GateCounts(h=2, x=3, cnot=4, toffoli=5, mcx=1, t_type=7, s_type=2)
    assert k.total == 2 + 3 + 4 + 5 + 1 + 7 + 2


def test_inverse_reverses_and_daggers():
    c = circuit(3, [h(0), t(1), s(2), cnot(0, 1), toffoli(0, 1, 2)])
    inv = inverse(c)
    assert inv.gates[0] == toffoli(0, 1, 2)
    assert inv.gates[-1] == h(0)
    assert inv.gates[3].kind == GateKind.TDG
    assert inv.gates[2].kind == GateKind.SDG
    # aggregate counts are preserved, double inverse restores exactly
    assert count_gates(inv) == count_gates(c)
    assert inverse(inv) == c


def test_data_qubits_follow_roles():
    roles = (QubitRole.DATA, QubitRole.CLEAN_ANCILLA, QubitRole.DATA,
             QubitRole.BORROWED_ANCILLA)
    assert Circuit(4, roles, ()).data_qubits() == (0, 2)


@pytest.mark.parametrize("gates", [
    [],
    [h(0)],
    [x(0), cnot(0, 1), toffoli(0, 1, 2), mcx((0, 1, 2), 3), tdg(3), s(2)],
])
def test_text_round_trip(gates):
    c = circuit(4, gates, roles=(QubitRole.DATA, QubitRole.DATA,
                                 QubitRole.CLEAN_ANCILLA,
                                 QubitRole.BORROWED_ANCILLA))
    assert from_text(to_text(c)) == c


def test_text_format_shape():
    c = circuit(2, [cnot(0, 1)])
    text = to_text(c)
    assert text.splitlines()[0] == "qubits 2"
    assert "role 0 data" in text
    assert text.splitlines()[-1] == "CNOT 0 1"


def test_from_text_accepts_comments_and_blanks():
    c = from_text("""
qubits 2
# a comment
role 0 data
role 1 clean

X 0  # trailing comment
""")
    assert c.gates == (x(0),)
    assert c.roles[1] is QubitRole.CLEAN_ANCILLA


@pytest.mark.parametrize("text", [
    "role 0 data\nX 0",                      # no qubits line
    "qubits 2\nrole 0 data\nX 0",           # missing role
    "qubits 1\nrole 0 data\nFOO 0",         # unknown gate
    "qubits 1\nrole 0 data\nX",             # gate without qubits
    "qubits 1\nrole 0 happy\nX 0",          # bad role name
    "qubits 1\nqubits 1\nrole 0 data",      # duplicate qubits line
])
def test_from_text_rejects_malformed(text):
    with pytest.raises(ValueError):
        from_text(text)


def test_qasm2_output():
    c = circuit(3, [h(2), cnot(1, 2), tdg(2), toffoli(0, 1, 2), s(1), x(0)])
    q = to_qasm2(c)
    assert q.startswith('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\n')
    assert "ccx q[0],q[1],q[2];" in q
    assert "tdg q[2];" in q


def test_qasm2_refuses_mcx():
    c = circuit(4, [mcx((0, 1, 2), 3)])
    with pytest.raises(ValueError):
        to_qasm2(c)
