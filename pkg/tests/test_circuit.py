import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import unitary_group

from luinvariants import circuit as qc
from luinvariants.circuit import Circuit, OracleBlock, OracleVariant as V
from luinvariants.simulator import run
from luinvariants.states import family_circuit, lu_orbit_circuit, random_state
from luinvariants.tensor import MultiQubitState, permute_wires

variants = st.sampled_from(list(V))


@given(variants, variants, variants)
def test_variants_form_klein_group(a, b, c):
    assert a.then(V.U) is a and V.U.then(a) is a
    assert a.then(a) is V.U
    assert a.then(b) is b.then(a)
    assert a.then(b).then(c) is a.then(b.then(c))


def test_variant_products():
    assert V.TRANSPOSE.then(V.CONJUGATE) is V.ADJOINT


def _preps():
    yield family_circuit("w", 0.9)
    yield lu_orbit_circuit(family_circuit("ghz", 1.3), 5)
    yield qc.householder_prep(random_state(3, 2))


@pytest.mark.parametrize("prep", list(_preps()), ids=["w", "ghz-orbit", "dense"])
def test_oracle_variant_matrices(prep):
    u = qc.circuit_unitary(prep)
    expect = {V.U: u, V.ADJOINT: u.conj().T, V.TRANSPOSE: u.T, V.CONJUGATE: u.conj()}
    for v, m in expect.items():
        assert qc.equal_up_to_phase(qc.circuit_unitary(qc.oracle_variant(prep, v)), m)


def test_oracle_variant_rejects_nested_blocks():
    prep = family_circuit("ghz", 1.0)
    nested = Circuit(3, (OracleBlock(prep, V.U, (1, 2, 3)),))
    with pytest.raises(ValueError):
        qc.oracle_variant(nested, V.ADJOINT)


def test_cnot_convention():
    c = Circuit(2, (qc.x(1), qc.cnot(1, 2)))
    assert run(c).allclose(MultiQubitState.basis("11"))
    c = Circuit(2, (qc.x(2), qc.cnot(1, 2)))
    assert run(c).allclose(MultiQubitState.basis("01"))


@given(st.permutations([1, 2, 3, 4]))
def test_perm_gate_matrix_matches_permute_wires(perm):
    g = qc.wire_permutation(perm)
    m = qc.gate_matrix(g)
    psi = random_state(4, 3)
    assert np.allclose(m @ psi.amplitudes, permute_wires(psi, perm).amplitudes)
    assert qc.equal_up_to_phase(qc.gate_matrix(g.adjoint()), m.conj().T)


@pytest.mark.parametrize("g", [qc.h(1), qc.x(1), qc.y(1), qc.ry(0.4, 1), qc.cnot(1, 2),
                               qc.swap(1, 2), qc.unitary(unitary_group.rvs(4, random_state=1), (1, 2))])
def test_gate_adjoint_transpose_conjugate(g):
    m = qc.gate_matrix(g)
    assert qc.equal_up_to_phase(qc.gate_matrix(g.adjoint()), m.conj().T)
    assert qc.equal_up_to_phase(qc.gate_matrix(g.transpose()), m.T)
    assert qc.equal_up_to_phase(qc.gate_matrix(g.conjugate()), m.conj())


def test_circuit_validation():
    with pytest.raises(ValueError):
        Circuit(2, (qc.h(3),))
    with pytest.raises(ValueError):
        Circuit(19)
    with pytest.raises(ValueError):
        qc.cnot(1, 1)
    with pytest.raises(ValueError):
        qc.unitary(np.ones((2, 2)), (1,))
    with pytest.raises(ValueError):
        qc.Gate("T", (1,))


def test_inline_and_census():
    prep = family_circuit("ghz", 0.5)
    c = Circuit(6, (OracleBlock(prep, V.U, (1, 2, 3)), OracleBlock(prep, V.TRANSPOSE, (4, 5, 6)),
                    qc.swap(1, 4)))
    assert c.census() == {"ORACLE:U": 1, "ORACLE:transpose": 1, "SWAP": 1}
    inl = c.inline()
    assert not inl.has_oracles and c.has_oracles
    assert len(inl) == 2 * len(prep) + 1
    assert {w for g in inl.gates[3:6] for w in g.wires} == {4, 5, 6}


def test_oracle_block_width_checked():
    with pytest.raises(ValueError):
        OracleBlock(family_circuit("w", 1.0), V.U, (1, 2))


@given(st.integers(0, 2**32 - 1))
def test_householder_prep(seed):
    psi = random_state(3, seed)
    c = qc.householder_prep(psi)
    assert run(c).allclose(psi, atol=1e-12)
    u = qc.gate_matrix(c.gates[0])
    assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-12)


@pytest.mark.parametrize("bits", ["000", "101", "111"])
def test_householder_on_basis_states(bits):
    psi = MultiQubitState.basis(bits)
    assert run(qc.householder_prep(psi)).allclose(psi)


def test_bell_gadgets():
    bell = run(qc.bell_prep())
    assert bell.allclose(MultiQubitState(2, np.array([1, 0, 0, 1]) / math.sqrt(2)))
    back = Circuit(2, tuple(qc.bell_unmeasure(1, 2)))
    assert qc.equal_up_to_phase(qc.circuit_unitary(back) @ qc.circuit_unitary(qc.bell_prep()),
                                np.eye(4))
    # the epsilon-shaped singlet lands on 11
    singlet = np.array([0, 1, -1, 0]) / math.sqrt(2)
    out = qc.circuit_unitary(back) @ singlet
    assert abs(out[3]) == pytest.approx(1)


def test_equal_up_to_phase():
    a = np.array([1, 1j])
    assert qc.equal_up_to_phase(a, 1j * a)
    assert not qc.equal_up_to_phase(a, np.array([1, -1j]))
    assert not qc.equal_up_to_phase(a, np.ones(3))


def test_is_real():
    assert family_circuit("w", 0.3).is_real()
    assert not qc.householder_prep(random_state(3, 1)).is_real()


def test_gate_equality_and_repr():
    assert qc.ry(0.5, 1) == qc.ry(0.5, 1)
    assert qc.ry(0.5, 1) != qc.ry(0.5, 2)
    assert "RY" in repr(qc.ry(0.5, 1))
    for a, b in itertools.combinations([qc.h(1), qc.x(1), qc.y(1)], 2):
        assert a != b
