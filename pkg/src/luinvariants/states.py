"""One-parameter state families, their preparation circuits, and LU-orbit sampling."""
from __future__ import annotations

import enum
import math

import numpy as np
from scipy.stats import unitary_group

from . import circuit as qc
from .circuit import Circuit
from .invariants import CanonicalParams, InvariantSet
from .tensor import MultiQubitState, apply_local, ry as ry_matrix


class FamilyId(enum.Enum):
    ONECUT = "onecut"
    W = "w"
    GHZ = "ghz"

    @classmethod
    def parse(cls, name: "str | FamilyId") -> "FamilyId":
        if isinstance(name, cls):
            return name
        key = name.strip().lower().replace("|", "").replace("_", "")
        aliases = {"onecut": cls.ONECUT, "123": cls.ONECUT, "1cut": cls.ONECUT,
                   "w": cls.W, "ghz": cls.GHZ}
        if key not in aliases:
            raise ValueError(f"unknown family {name!r}; expected onecut, w or ghz")
        return aliases[key]


# angles at which each family hits its usual representative
THETA_ONECUT = 2 * math.acos(1 / math.sqrt(2))
THETA_W = 2 * math.acos(1 / math.sqrt(3))
THETA_GHZ = 2 * math.acos(1 / math.sqrt(2))

REPRESENTATIVE_THETA = {FamilyId.ONECUT: THETA_ONECUT, FamilyId.W: THETA_W,
                        FamilyId.GHZ: THETA_GHZ}


def family_state(f, theta: float) -> MultiQubitState:
    f = FamilyId.parse(f)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    amps = np.zeros(8, dtype=complex)
    if f is FamilyId.ONECUT:
        amps[0b000], amps[0b011] = c, s
    elif f is FamilyId.W:
        amps[0b100] = c
        amps[0b010] = amps[0b001] = s / math.sqrt(2)
    else:
        amps[0b000], amps[0b111] = c, s
    return MultiQubitState(3, amps)


def representative_state(f) -> MultiQubitState:
    f = FamilyId.parse(f)
    return family_state(f, REPRESENTATIVE_THETA[f])


def controlled_h(control: int, target: int) -> list[qc.Gate]:
    """Controlled-Hadamard from real gates: Ry(pi/4), CNOT, Ry(-pi/4) on the target."""
    return [qc.ry(math.pi / 4, target), qc.cnot(control, target), qc.ry(-math.pi / 4, target)]


def family_circuit(f, theta: float) -> Circuit:
    """Real-gate preparation circuit with ``U|000> = family_state(f, theta)``."""
    f = FamilyId.parse(f)
    if f is FamilyId.ONECUT:
        gates = [qc.ry(theta, 2), qc.cnot(2, 3)]
    elif f is FamilyId.W:
        gates = [qc.ry(theta, 1), *controlled_h(1, 2), qc.cnot(2, 3),
                 qc.cnot(1, 2), qc.x(1)]
    else:
        gates = [qc.ry(theta, 1), qc.cnot(1, 2), qc.cnot(1, 3)]
    return Circuit(3, tuple(gates))


def canonical_state(p: CanonicalParams) -> MultiQubitState:
    l0, l1, l2, l3, l4 = p.lam
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = l0
    amps[0b100] = np.exp(1j * p.theta) * l1
    amps[0b101] = l2
    amps[0b110] = l3
    amps[0b111] = l4
    return MultiQubitState(3, amps)


def random_local_unitaries(seed, n: int = 3, y_only: bool = False) -> list[np.ndarray]:
    """Independent 2x2 unitaries, Haar distributed or y-rotations with angles uniform on [0, 2pi)."""
    rng = np.random.default_rng(seed)
    if y_only:
        return [ry_matrix(a) for a in rng.uniform(0.0, 2 * math.pi, size=n)]
    return [unitary_group.rvs(2, random_state=rng) for _ in range(n)]


def apply_local_triple(state: MultiQubitState, mats) -> MultiQubitState:
    for w, m in enumerate(mats, start=1):
        state = apply_local(state, m, w)
    return state


def random_lu_orbit(state: MultiQubitState, seed, y_only: bool = False) -> MultiQubitState:
    """``state`` rotated by a seeded product of local unitaries on every wire."""
    return apply_local_triple(state, random_local_unitaries(seed, state.n_qubits, y_only))


def lu_orbit_circuit(prep: Circuit, seed, y_only: bool = False) -> Circuit:
    """Preparation circuit followed by the same local rotations as :func:`random_lu_orbit`."""
    mats = random_local_unitaries(seed, prep.n_wires, y_only)
    return prep.then(qc.unitary(m, (w,)) for w, m in enumerate(mats, start=1))


def random_state(n: int, seed) -> MultiQubitState:
    """Normalised vector with i.i.d. complex Gaussian amplitudes."""
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return MultiQubitState(n, v / np.linalg.norm(v))


def random_prep(n: int, seed) -> tuple[MultiQubitState, Circuit]:
    """A random normalised state together with a dense preparation circuit for it."""
    psi = random_state(n, seed)
    return psi, qc.householder_prep(psi)


def random_canonical_params(seed) -> CanonicalParams:
    rng = np.random.default_rng(seed)
    lam = rng.random(5)
    lam /= np.linalg.norm(lam)
    return CanonicalParams(tuple(lam), float(rng.uniform(0.0, math.pi)))


def exact_family_invariants(f, theta: float) -> InvariantSet:
    """Closed-form invariants along a family.

    c2, omega2 and tau2 are closed forms in theta; the remaining fields
    follow from them (g2_a = sum(c2)/2 - c2_a, y2 =
    sum(c2)/3) with n2 = 1.
    """
    f = FamilyId.parse(f)
    s1 = math.sin(theta) ** 2
    sh = math.sin(theta / 2) ** 2
    if f is FamilyId.ONECUT:
        c2, omega2, tau2 = (0.0, s1, s1), 0.0, 0.0
    elif f is FamilyId.W:
        # qubit 1 carries the |100> amplitude, so it is the one with c2 = sin^2(theta)
        side = s1 / 2 + sh**2
        c2, omega2, tau2 = (s1, side, side), sh * s1, 0.0
    else:
        c2, omega2, tau2 = (s1, s1, s1), s1, s1 * s1
    total = sum(c2)
    g2 = tuple(total / 2 - c for c in c2)
    return InvariantSet(n2=1.0, y2=total / 3, c2=c2, g2=g2, omega2=omega2, tau2=tau2)
