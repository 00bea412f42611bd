import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from luinvariants import states as S
from luinvariants.invariants import three_qubit_invariants
from luinvariants.simulator import run
from luinvariants.tensor import MultiQubitState

FAMILIES = ("onecut", "w", "ghz")
thetas = st.floats(-4 * math.pi, 4 * math.pi, allow_nan=False)


def test_representatives():
    r2, r3 = 1 / math.sqrt(2), 1 / math.sqrt(3)
    expect = {
        "onecut": {"000": r2, "011": r2},
        "w": {"100": r3, "010": r3, "001": r3},
        "ghz": {"000": r2, "111": r2},
    }
    for f, amps in expect.items():
        v = np.zeros(8)
        for bits, a in amps.items():
            v[int(bits, 2)] = a
        assert S.representative_state(f).allclose(MultiQubitState(3, v))


@pytest.mark.parametrize("f", FAMILIES)
@given(theta=thetas)
def test_circuit_prepares_family_state(f, theta):
    got = run(S.family_circuit(f, theta))
    assert got.allclose(S.family_state(f, theta), atol=1e-12)


@pytest.mark.parametrize("f", FAMILIES)
@given(theta=thetas)
def test_closed_forms_match_contraction(f, theta):
    exact = S.exact_family_invariants(f, theta)
    direct = three_qubit_invariants(S.family_state(f, theta))
    assert np.allclose(exact.values(), direct.values(), atol=1e-12)


@pytest.mark.parametrize("f", FAMILIES)
def test_family_circuits_use_real_gates(f):
    c = S.family_circuit(f, 0.3)
    assert set(c.census()) <= {"RY", "CNOT", "X"}
    assert c.is_real()


def test_w_circuit_gate_count():
    # Ry, controlled-H as three gates, two CNOTs and an X
    assert len(S.family_circuit("w", 1.0)) == 7


def test_family_parse():
    assert S.FamilyId.parse("GHZ") is S.FamilyId.GHZ
    assert S.FamilyId.parse("1|23") is S.FamilyId.ONECUT
    with pytest.raises(ValueError):
        S.FamilyId.parse("cluster")


@given(st.integers(0, 2**32 - 1), st.booleans())
def test_local_unitaries(seed, y_only):
    mats = S.random_local_unitaries(seed, 3, y_only)
    for m in mats:
        assert np.allclose(m.conj().T @ m, np.eye(2), atol=1e-12)
        if y_only:
            assert np.allclose(m.imag, 0)


def test_local_unitaries_are_seeded():
    a = S.random_local_unitaries(7)
    b = S.random_local_unitaries(7)
    c = S.random_local_unitaries(8)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    assert not np.allclose(a[0], c[0])


@given(st.integers(0, 2**32 - 1), st.booleans())
def test_orbit_circuit_matches_orbit_state(seed, y_only):
    base = S.family_circuit("w", 1.1)
    lhs = run(S.lu_orbit_circuit(base, seed, y_only))
    rhs = S.random_lu_orbit(S.family_state("w", 1.1), seed, y_only)
    assert lhs.allclose(rhs, atol=1e-12)


def test_random_prep_prepares_state():
    psi, c = S.random_prep(3, 11)
    assert run(c).allclose(psi, atol=1e-12)
    assert psi.norm2() == pytest.approx(1)


def test_canonical_state_layout():
    from luinvariants.invariants import CanonicalParams
    p = CanonicalParams((0.1, 0.2, 0.3, 0.4, 0.5), math.pi / 2)
    a = S.canonical_state(p).amplitudes
    assert a[0] == 0.1 and a[5] == 0.3 and a[6] == 0.4 and a[7] == 0.5
    assert a[4] == pytest.approx(0.2j)
    assert a[1] == a[2] == a[3] == 0
