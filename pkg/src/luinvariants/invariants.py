"""Covariants and local-unitary invariants of two- and three-qubit vectors.

Everything here is evaluated by explicit loops over the two-valued indices,
contracting with ``EPSILON`` wherever the definitions call for it.  These
values are the reference every circuit in :mod:`luinvariants.synthesis`
is checked against.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .tensor import MultiQubitState

# nonzero entries of epsilon: (i, i', value)
_EPS = ((0, 1, 1.0), (1, 0, -1.0))


def _require(state: MultiQubitState, n: int):
    if state.n_qubits != n:
        raise ValueError(f"expected a {n}-qubit state, got {state.n_qubits}")


def _other_two(a: int) -> tuple[int, int]:
    if a not in (1, 2, 3):
        raise ValueError(f"subsystem index must be 1, 2 or 3, got {a}")
    b, c = (x for x in (1, 2, 3) if x != a)
    return b, c


@dataclass(frozen=True)
class TwoQubitInvariants:
    n4: float
    c2: float


@dataclass(frozen=True)
class CovariantTensor:
    """gamma_a (4 components, index ii') or T (8 components, index ijk)."""

    kind: str
    components: np.ndarray

    def __post_init__(self):
        comps = np.array(self.components, dtype=complex).reshape(-1)
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    def norm2(self) -> float:
        return float(np.vdot(self.components, self.components).real)


@dataclass(frozen=True)
class InvariantSet:
    n2: float
    y2: float
    c2: tuple[float, float, float]
    g2: tuple[float, float, float]
    omega2: float
    tau2: float

    _KEYS = ("n2", "y2", "c2_1", "c2_2", "c2_3", "g2_1", "g2_2", "g2_3",
             "omega2", "tau2")

    def to_dict(self) -> dict:
        return {
            "n2": self.n2, "y2": self.y2,
            "c2_1": self.c2[0], "c2_2": self.c2[1], "c2_3": self.c2[2],
            "g2_1": self.g2[0], "g2_2": self.g2[1], "g2_3": self.g2[2],
            "omega2": self.omega2, "tau2": self.tau2,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InvariantSet":
        missing = [k for k in cls._KEYS if k not in d]
        if missing:
            raise KeyError(f"missing invariant keys: {missing}")
        return cls(
            n2=float(d["n2"]), y2=float(d["y2"]),
            c2=tuple(float(d[f"c2_{a}"]) for a in (1, 2, 3)),
            g2=tuple(float(d[f"g2_{a}"]) for a in (1, 2, 3)),
            omega2=float(d["omega2"]), tau2=float(d["tau2"]),
        )

    def values(self) -> np.ndarray:
        """The ten fields in the fixed column order of ``to_dict``."""
        return np.array(list(self.to_dict().values()), dtype=float)

    def get(self, quantity: str) -> float:
        return self.to_dict()[quantity]


@dataclass(frozen=True)
class CanonicalParams:
    """Five nonnegative amplitudes and one phase of the LU canonical form."""

    lam: tuple[float, float, float, float, float]
    theta: float = 0.0

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lam)
        if len(lam) != 5 or min(lam) < 0:
            raise ValueError("need five nonnegative lambdas")
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError("theta must lie in [0, pi]")
        object.__setattr__(self, "lam", lam)

    @property
    def eta(self) -> tuple[float, ...]:
        return tuple(x * x for x in self.lam)

    @property
    def delta(self) -> complex:
        l0, l1, l2, l3, l4 = self.lam
        return l1 * l4 * np.exp(1j * self.theta) - l2 * l3

    @property
    def norm2(self) -> float:
        return sum(self.eta)


def two_qubit_invariants(state: MultiQubitState) -> TwoQubitInvariants:
    _require(state, 2)
    psi = state.tensor
    n2 = float(np.vdot(psi, psi).real)
    q = 0j
    for (i, ip, ei), (j, jp, ej) in product(_EPS, _EPS):
        q += ei * ej * psi[i, j] * psi[ip, jp]
    # q = 2 det(psi), so 4|det|^2 = |q|^2
    return TwoQubitInvariants(n4=n2 * n2, c2=float(abs(q) ** 2))


def gamma(state: MultiQubitState, a: int) -> CovariantTensor:
    """Quadratic covariant gamma_a: two epsilons on the subsystems other than a."""
    _require(state, 3)
    b, c = _other_two(a)
    psi = state.tensor
    out = np.zeros((2, 2), dtype=complex)
    for i, ip in product((0, 1), repeat=2):
        acc = 0j
        for (x, xp, ex), (y, yp, ey) in product(_EPS, _EPS):
            idx, idxp = [0, 0, 0], [0, 0, 0]
            idx[a - 1], idxp[a - 1] = i, ip
            idx[b - 1], idxp[b - 1] = x, xp
            idx[c - 1], idxp[c - 1] = y, yp
            acc += ex * ey * psi[tuple(idx)] * psi[tuple(idxp)]
        out[i, ip] = acc
    return CovariantTensor(f"gamma{a}", out.reshape(-1))


def t_tensor(state: MultiQubitState) -> CovariantTensor:
    """Cubic covariant T^{ijk} = -eps_ll' eps_mm' eps_nn' psi^{imn} psi^{lm'n'} psi^{l'jk}."""
    _require(state, 3)
    psi = state.tensor
    out = np.zeros((2, 2, 2), dtype=complex)
    for i, j, k in product((0, 1), repeat=3):
        acc = 0j
        for (l, lp, el), (m, mp, em), (n, np_, en) in product(_EPS, _EPS, _EPS):
            acc += el * em * en * psi[i, m, n] * psi[l, mp, np_] * psi[lp, j, k]
        out[i, j, k] = -acc
    return CovariantTensor("T", out.reshape(-1))


def t_tensor_explicit(state: MultiQubitState) -> np.ndarray:
    """T as eight explicit cubic polynomials, in |ijk> order."""
    _require(state, 3)
    p = {f"{i}{j}{k}": state.tensor[i, j, k] for i, j, k in product((0, 1), repeat=3)}
    a000, a001, a010, a011 = p["000"], p["001"], p["010"], p["011"]
    a100, a101, a110, a111 = p["100"], p["101"], p["110"], p["111"]
    return np.array([
        +a000 * (a000 * a111 - a100 * a011 - a010 * a101 - a001 * a110) + 2 * a100 * a010 * a001,
        -a001 * (a001 * a110 - a101 * a010 - a011 * a100 - a000 * a111) - 2 * a101 * a011 * a000,
        -a010 * (a010 * a101 - a110 * a001 - a000 * a111 - a011 * a100) - 2 * a110 * a000 * a011,
        +a011 * (a011 * a100 - a111 * a000 - a001 * a110 - a010 * a101) + 2 * a111 * a001 * a010,
        -a100 * (a100 * a011 - a000 * a111 - a110 * a001 - a101 * a010) - 2 * a000 * a110 * a101,
        +a101 * (a101 * a010 - a001 * a110 - a111 * a000 - a100 * a011) + 2 * a001 * a111 * a100,
        +a110 * (a110 * a001 - a010 * a101 - a100 * a011 - a111 * a000) + 2 * a010 * a100 * a111,
        -a111 * (a111 * a000 - a011 * a100 - a101 * a010 - a110 * a001) - 2 * a011 * a101 * a110,
    ], dtype=complex)


def t_tensor_compact(state: MultiQubitState) -> np.ndarray:
    """T from the negated-index form; ``1 - i`` flips an index."""
    _require(state, 3)
    p = state.tensor
    out = np.zeros(8, dtype=complex)
    for i, j, k in product((0, 1), repeat=3):
        ni, nj, nk = 1 - i, 1 - j, 1 - k
        val = p[i, j, k] * (p[i, j, k] * p[ni, nj, nk]
                            - p[ni, j, k] * p[i, nj, nk]
                            - p[i, nj, k] * p[ni, j, nk]
                            - p[i, j, nk] * p[ni, nj, k]) \
            + 2 * p[ni, j, k] * p[i, nj, k] * p[i, j, nk]
        out[4 * i + 2 * j + k] = (-1) ** (i + j + k) * val
    return out


def hyperdet_q(state: MultiQubitState) -> complex:
    """q = -2 Det(psi), six epsilon contractions over four copies of psi."""
    _require(state, 3)
    psi = state.tensor
    q = 0j
    for (i, ip, e1), (j, jp, e2), (k, kp, e3), (l, lp, e4), (m, mp, e5), (n, np_, e6) \
            in product(_EPS, repeat=6):
        q += (e1 * e2 * e3 * e4 * e5 * e6
              * psi[i, k, l] * psi[j, kp, lp] * psi[ip, m, n] * psi[jp, mp, np_])
    return complex(q)


def hyperdet_q_explicit(state: MultiQubitState) -> complex:
    """Degree-4 polynomial form of q."""
    _require(state, 3)
    t = state.tensor
    a000, a001, a010, a011 = t[0, 0, 0], t[0, 0, 1], t[0, 1, 0], t[0, 1, 1]
    a100, a101, a110, a111 = t[1, 0, 0], t[1, 0, 1], t[1, 1, 0], t[1, 1, 1]
    pairs = (a000 * a111, a011 * a100, a101 * a010, a110 * a001)
    sq = sum(x * x for x in pairs)
    cross = sum(pairs[s] * pairs[t_] for s in range(4) for t_ in range(s + 1, 4))
    return complex(-2 * sq + 4 * cross
                   - 8 * (a000 * a011 * a101 * a110 + a111 * a100 * a010 * a001))


def reduced_density(state: MultiQubitState, a: int) -> np.ndarray:
    """One-qubit reduced density matrix rho_a = Tr_bc |psi><psi|."""
    _require(state, 3)
    _other_two(a)
    t = np.moveaxis(state.tensor, a - 1, 0).reshape(2, 4)
    return t @ t.conj().T


def c2_from_reduced_density(state: MultiQubitState, a: int) -> float:
    return float(4 * np.linalg.det(reduced_density(state, a)).real)


def three_qubit_invariants(state: MultiQubitState) -> InvariantSet:
    _require(state, 3)
    n2 = state.norm2()
    g2 = tuple(gamma(state, a).norm2() for a in (1, 2, 3))
    c2 = (g2[1] + g2[2], g2[0] + g2[2], g2[0] + g2[1])
    return InvariantSet(
        n2=n2,
        y2=2.0 / 3.0 * sum(g2),
        c2=c2,
        g2=g2,
        omega2=4.0 * t_tensor(state).norm2(),
        tau2=4.0 * abs(hyperdet_q(state)) ** 2,
    )


def canonical_invariants(p: CanonicalParams) -> InvariantSet:
    """Closed forms of the invariants on the five-term canonical vector."""
    e0, e1, e2, e3, e4 = p.eta
    d2 = float(abs(p.delta) ** 2)
    norm2 = p.norm2
    g2 = (2 * e0 * e4 + 4 * d2,
          2 * e0 * e4 + 4 * e0 * e2,
          2 * e0 * e4 + 4 * e0 * e3)
    c2 = (4 * e0 * (e2 + e3 + e4),
          4 * e0 * (e3 + e4) + 4 * d2,
          4 * e0 * (e2 + e4) + 4 * d2)
    return InvariantSet(
        n2=norm2,
        y2=8 * (e0 * e2 + e0 * e3 + d2) / 3 + 4 * e0 * e4,
        c2=c2,
        g2=g2,
        omega2=float(4 * e0 * e4 * norm2 - 16 * e0 * np.sqrt(e2 * e3) * p.delta.real),
        tau2=16 * e0**2 * e4**2,
    )
