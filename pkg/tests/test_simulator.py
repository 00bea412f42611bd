import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from luinvariants import circuit as qc
from luinvariants.circuit import Circuit, OracleBlock, OracleVariant as V
from luinvariants import simulator as sim
from luinvariants.states import family_circuit, random_state
from luinvariants.synthesis import build_small
from luinvariants.tensor import MultiQubitState, apply_matrix


@given(st.integers(0, 2**32 - 1))
def test_run_matches_dense_application(seed):
    rng = np.random.default_rng(seed)
    gates = []
    for _ in range(12):
        kind = rng.integers(5)
        a, b = (int(w) for w in rng.choice(np.arange(1, 5), 2, replace=False))
        gates.append([qc.h(a), qc.ry(float(rng.normal()), a), qc.cnot(a, b), qc.swap(a, b),
                      qc.wire_permutation(tuple(int(x) for x in rng.permutation(4) + 1))][kind])
    c = Circuit(4, tuple(gates))
    psi = random_state(4, seed)
    ref = psi
    for g in gates:
        ref = apply_matrix(ref, qc.gate_matrix(g), g.wires)
    assert sim.run_state(c, psi).allclose(ref, atol=1e-12)


def test_probabilities_normalised():
    p = sim.probabilities(family_circuit("w", 1.0))
    assert p.sum() == pytest.approx(1)
    assert p[0b100] == pytest.approx(math.cos(0.5) ** 2)


def test_refuses_blocks_and_wide_circuits():
    prep = family_circuit("ghz", 1.0)
    with pytest.raises(ValueError):
        sim.run(Circuit(3, (OracleBlock(prep, V.U, (1, 2, 3)),)))
    with pytest.raises(ValueError):
        sim.run_state(prep, MultiQubitState.zeros(2))
    with pytest.raises(ValueError):
        sim.outcome_probability(prep, "00")


def test_sampling_is_seeded():
    c = family_circuit("ghz", math.pi / 2)
    a, b = sim.sample(c, 1000, seed=5), sim.sample(c, 1000, seed=5)
    assert a.counts == b.counts
    assert sum(a.counts.values()) == 1000
    assert set(a.counts) <= {"000", "111"}
    assert a.frequency("101") == 0
    with pytest.raises(ValueError):
        sim.sample(c, 0)


def test_value_from_probability():
    assert sim.value_from_probability(0.25, 2, 1) == pytest.approx(1.0)
    assert sim.value_from_probability(1 / 64, 4, 2) == pytest.approx(0.5)
    assert sim.value_from_probability(-1e-18, 2, 2) == 0.0


def test_exact_estimate():
    mc = build_small("tau2", family_circuit("ghz", math.pi / 2))
    est = sim.estimate_invariant(mc)
    assert est.value == pytest.approx(1.0)
    assert est.raw_probability == pytest.approx(0.25)
    assert est.stderr == 0.0 and est.shots is None


def test_shot_estimate_stderr():
    mc = build_small("tau2", family_circuit("ghz", math.pi / 2))
    est = sim.estimate_invariant(mc, shots=10_000, seed=1)
    p = est.raw_probability
    assert est.value == pytest.approx(4 * p)
    assert est.stderr == pytest.approx(4 * math.sqrt(p * (1 - p) / 10_000))
    assert abs(est.value - 1.0) < 5 * est.stderr


def test_zero_hits_reports_upper_bound():
    mc = build_small("tau2", family_circuit("w", 1.0))
    est = sim.estimate_invariant(mc, shots=1000, seed=0)
    assert est.value == 0.0
    assert est.upper_bound == pytest.approx(4 * 3 / 1000)


def test_rooted_estimate_stderr():
    mc = build_small("omega4", family_circuit("ghz", math.pi / 2))
    est = sim.estimate_invariant(mc, shots=20_000, seed=2)
    p = est.raw_probability
    assert est.value == pytest.approx(math.sqrt(16 * p))
    slope = 0.5 * math.sqrt(16 / p)
    assert est.stderr == pytest.approx(slope * math.sqrt(p * (1 - p) / 20_000))


def test_eighteen_wires_run():
    c = Circuit(18, (qc.h(1), qc.cnot(1, 18)))
    p = sim.probabilities(c)
    assert p[0] == pytest.approx(0.5) and p[-1] == 0 and p[2**17 + 1] == pytest.approx(0.5)
