"""Exact statevector execution and seeded shot sampling."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import MAX_WIRES, Circuit, Gate, OracleBlock, gate_matrix
from .tensor import MultiQubitState


@dataclass(frozen=True)
class ShotResult:
    counts: dict[str, int]
    shots: int
    seed: int | None

    def frequency(self, outcome: str) -> float:
        return self.counts.get(outcome, 0) / self.shots


@dataclass(frozen=True)
class InvariantEstimate:
    quantity: str
    value: float
    stderr: float
    raw_probability: float
    shots: int | None = None
    seed: int | None = None
    # (2^k * 3/shots)^(1/r); only set when the target outcome was never seen
    upper_bound: float | None = None


def _check_runnable(c: Circuit):
    if c.n_wires > MAX_WIRES:
        raise ValueError(f"circuit width {c.n_wires} exceeds {MAX_WIRES}")
    for g in c.gates:
        if isinstance(g, OracleBlock):
            raise ValueError("circuit still contains oracle blocks; call inline() first")


def _apply(t: np.ndarray, g: Gate) -> np.ndarray:
    """Apply one gate to a rank-n tensor (axis w-1 belongs to wire w)."""
    n = t.ndim
    if g.kind == "CNOT":
        c, tg = g.wires[0] - 1, g.wires[1] - 1
        sl = [slice(None)] * n
        sl[c] = 1
        sub = t[tuple(sl)]
        ax = tg if tg < c else tg - 1
        t[tuple(sl)] = np.flip(sub, axis=ax).copy()
        return t
    if g.kind == "X":
        return np.flip(t, axis=g.wires[0] - 1)
    if g.kind == "SWAP":
        return np.swapaxes(t, g.wires[0] - 1, g.wires[1] - 1)
    if g.kind == "PERM":
        # new axis for wire perm[i] holds the old axis of wire wires[i]
        order = list(range(n))
        for src, dest in zip(g.wires, g.perm):
            order[dest - 1] = src - 1
        return np.transpose(t, order)
    m = gate_matrix(g)
    k = len(g.wires)
    axes = [w - 1 for w in g.wires]
    out = np.tensordot(m.reshape((2,) * (2 * k)), t, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def run_state(c: Circuit, start: MultiQubitState) -> MultiQubitState:
    _check_runnable(c)
    if start.n_qubits != c.n_wires:
        raise ValueError("initial state width does not match the circuit")
    t = np.array(start.tensor, dtype=complex)
    for g in c.gates:
        t = _apply(t, g)
        if not t.flags.writeable or not t.flags.c_contiguous:
            t = np.ascontiguousarray(t)
    return MultiQubitState(c.n_wires, t.reshape(-1))


def run(c: Circuit) -> MultiQubitState:
    """Final state of ``c`` started from |0...0>."""
    return run_state(c, MultiQubitState.zeros(c.n_wires))


def probabilities(c: Circuit) -> np.ndarray:
    a = run(c).amplitudes
    return (a.conj() * a).real


def outcome_probability(c: Circuit, outcome: str) -> float:
    if len(outcome) != c.n_wires:
        raise ValueError(f"outcome {outcome!r} has length {len(outcome)}, circuit has {c.n_wires} wires")
    return abs(run(c).amplitude(outcome)) ** 2


def sample(c: Circuit, shots: int, seed: int | None = None) -> ShotResult:
    """Draw ``shots`` i.i.d. computational-basis outcomes with numpy's PCG64."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    p = probabilities(c)
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, p)
    n = c.n_wires
    counts = {format(int(i), f"0{n}b"): int(draws[i]) for i in np.flatnonzero(draws)}
    return ShotResult(counts=counts, shots=int(shots), seed=seed)


def value_from_probability(p: float, scale_log2: int, root: int) -> float:
    """Invert the contract p = value^root / 2^k."""
    return float((2.0**scale_log2 * max(p, 0.0)) ** (1.0 / root))


def estimate_invariant(mc, shots: int | None = None, seed: int | None = None) -> InvariantEstimate:
    """Estimate the quantity measured by a :class:`MeasuredCircuit`.

    ``shots=None`` gives the exact (infinite-shot) value with zero stderr.
    The stderr of the raw frequency is the binomial sqrt(p(1-p)/shots), pushed
    through value = (2^k p)^(1/r) by the delta method.
    """
    circuit = mc.circuit.inline()
    if len(mc.outcome) != circuit.n_wires:
        raise ValueError("outcome length does not match the circuit width")
    k, r = mc.scale_log2, mc.root
    if shots is None:
        p = outcome_probability(circuit, mc.outcome)
        return InvariantEstimate(mc.quantity, value_from_probability(p, k, r), 0.0, p)
    if shots < 1:
        raise ValueError("shots must be at least 1")
    res = sample(circuit, shots, seed)
    hits = res.counts.get(mc.outcome, 0)
    p = hits / shots
    if hits == 0:
        ub = value_from_probability(3.0 / shots, k, r)
        return InvariantEstimate(mc.quantity, 0.0, ub, 0.0, shots, seed, upper_bound=ub)
    value = value_from_probability(p, k, r)
    sd_p = math.sqrt(p * (1 - p) / shots)
    slope = value / (r * p)
    return InvariantEstimate(mc.quantity, value, abs(slope) * sd_p, p, shots, seed)
