import json
import re

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import unitary_group

from luinvariants import circuit as qc
from luinvariants.circuit import Circuit
from luinvariants.qasm import _perm_as_swaps, _zyz, circuit_from_dict, circuit_to_dict, to_json, to_openqasm
from luinvariants.simulator import run, run_state
from luinvariants.tensor import MultiQubitState, apply_matrix
from luinvariants.states import family_circuit, lu_orbit_circuit, random_state
from luinvariants.synthesis import build_bell, build_small


def u3(t, p, l):
    return np.array([[np.cos(t / 2), -np.exp(1j * l) * np.sin(t / 2)],
                     [np.exp(1j * p) * np.sin(t / 2), np.exp(1j * (p + l)) * np.cos(t / 2)]])


def oq3_u(t, p, l):
    # the builtin U carries an extra phase e^{i(p+l)/2}
    return np.exp(0.5j * (p + l)) * u3(t, p, l)


def interpret(text):
    """Statevector of an emitted program, following OpenQASM 3 gate semantics."""
    defs, n, state = {}, None, None

    def call(name, params, qubits, controls):
        nonlocal state
        if name == "U":
            m = oq3_u(*params)
        elif name == "gphase":
            m = None
        else:
            formals, args, stmts = defs[name]
            env = dict(zip(formals, params), pi=np.pi)
            local = dict(zip(args, qubits))
            for st_ in stmts:
                execute(st_, env, local, controls)
            return
        if m is None:
            if not controls:
                return
            d = np.ones(2 ** len(controls), dtype=complex)
            d[-1] = np.exp(1j * params[0])
            state = apply_matrix(state, np.diag(d), controls)
            return
        k = len(controls)
        full = np.eye(2 ** (k + 1), dtype=complex)
        full[-2:, -2:] = m
        state = apply_matrix(state, full, controls + qubits)

    def execute(stmt, env, local, controls):
        stmt = stmt.strip().rstrip(";")
        ctrl = stmt.startswith("ctrl @")
        if ctrl:
            stmt = stmt[len("ctrl @"):].strip()
        m = re.fullmatch(r"(\w+)(?:\((.*?)\))?\s*(.*)", stmt)
        name, ptext, qtext = m.groups()
        params = [eval(p, {"__builtins__": {}}, env) for p in ptext.split(",")] if ptext else []
        qs = [local[q.strip()] for q in qtext.split(",") if q.strip()]
        if ctrl:
            controls, qs = controls + qs[:1], qs[1:]
        call(name, params, qs, controls)

    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("//") or line.startswith("OPENQASM"):
            continue
        g = re.fullmatch(r"gate (\w+)(?:\((.*?)\))? ([\w, ]+) \{(.*)\}", line)
        if g:
            name, formals, args, body = g.groups()
            defs[name] = ([f.strip() for f in formals.split(",")] if formals else [],
                          [a.strip() for a in args.split(",")],
                          [b for b in body.split(";") if b.strip()])
            continue
        q = re.fullmatch(r"qubit\[(\d+)\] q;", line)
        if q:
            n = int(q.group(1))
            state = MultiQubitState.zeros(n)
            continue
        if line.startswith("bit[") or line == "c = measure q;":
            continue
        local = {f"q[{i}]": i + 1 for i in range(n)}
        execute(line, {"pi": np.pi}, local, [])
    return state


def test_ghz_program():
    text = to_openqasm(family_circuit("ghz", np.pi / 2))
    lines = text.splitlines()
    assert lines[0] == "OPENQASM 3.0;"
    assert "include" not in text
    assert lines[-4:] == ["ry(1.5707963267948966) q[0];", "cx q[0], q[1];", "cx q[0], q[2];",
                          "c = measure q;"]
    assert "gate cx c, t { ctrl @ x c, t; }" in lines
    assert not any(ln.startswith("gate h") for ln in lines)


@pytest.mark.parametrize("make", [
    lambda: family_circuit("w", 1.1),
    lambda: lu_orbit_circuit(family_circuit("ghz", 0.7), 4),
    lambda: build_small("omega4", family_circuit("w", 1.9)).circuit.inline(),
    lambda: build_bell("c4_2", lu_orbit_circuit(family_circuit("w", 1.0), 1), "perm").circuit.inline(),
    lambda: build_bell("conc2_2q", Circuit(2, (qc.h(1), qc.ry(0.3, 2), qc.cnot(1, 2))),
                       "cnot").circuit.inline(),
], ids=["w", "orbit", "omega-small", "c4-bell-perm", "conc-bell"])
def test_program_semantics_match_simulator(make):
    c = make()
    got = interpret(to_openqasm(c))
    assert qc.equal_up_to_phase(got.amplitudes, run(c).amplitudes, atol=1e-9)


def test_interpreter_sees_controlled_phases():
    # cx built from an unphased x would be controlled-iX; the emitted one is exact
    c = Circuit(2, (qc.h(1), qc.cnot(1, 2)))
    got = interpret(to_openqasm(c)).amplitudes
    assert qc.equal_up_to_phase(got, np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_header_comments():
    text = to_openqasm(family_circuit("ghz", 1.0), {"seed": 3, "method": "small"})
    assert text.startswith("// seed: 3\n// method: small\nOPENQASM 3.0;")


@given(st.integers(0, 2**32 - 1))
def test_zyz(seed):
    m = unitary_group.rvs(2, random_state=seed)
    assert qc.equal_up_to_phase(u3(*_zyz(m)), m)


@pytest.mark.parametrize("m", [np.eye(2), qc.gate_matrix(qc.x(1)), qc.gate_matrix(qc.y(1)),
                               qc.gate_matrix(qc.h(1)), np.diag([1, 1j])])
def test_zyz_special(m):
    assert qc.equal_up_to_phase(u3(*_zyz(m)), m)


@given(st.permutations(list(range(1, 7))))
def test_perm_swap_decomposition(perm):
    g = qc.wire_permutation(perm)
    swaps = Circuit(6, tuple(qc.swap(a, b) for a, b in _perm_as_swaps(g)))
    psi = random_state(6, 0)
    assert run_state(swaps, psi).allclose(run_state(Circuit(6, (g,)), psi))


def test_rejects_blocks_and_wide_dense_gates():
    mc = build_small("tau2", family_circuit("ghz", 1.0))
    with pytest.raises(ValueError):
        to_openqasm(mc.circuit)
    assert "measure" in to_openqasm(mc.circuit.inline())
    with pytest.raises(ValueError):
        to_openqasm(qc.householder_prep(random_state(2, 1)))


def test_perm_form_exports_as_swaps():
    mc = build_bell("tau2", family_circuit("ghz", 1.0), "perm")
    text = to_openqasm(mc.circuit.inline())
    assert "swap" in text and "cx" in text and "h q[" in text


def test_json_round_trip():
    prep = lu_orbit_circuit(family_circuit("w", 1.0), 3)
    for mc in (build_bell("omega4", prep, "perm"), build_small("c4_2", prep)):
        d = circuit_to_dict(mc.circuit)
        assert circuit_from_dict(json.loads(json.dumps(d))) == mc.circuit
    payload = json.loads(to_json(prep, {"seed": 1}))
    assert payload["header"] == {"seed": 1} and payload["n_wires"] == 3
