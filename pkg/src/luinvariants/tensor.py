"""Dense multi-qubit state vectors and the two local contraction constants.

Wires are labelled 1..n.  The basis label |b1 b2 ... bn> sits at array index
sum_q b_q * 2**(n - q), so qubit 1 is the most significant bit and printed
outcome strings read left to right in wire order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DELTA = np.eye(2, dtype=complex)
EPSILON = np.array([[0, 1], [-1, 0]], dtype=complex)

I2 = DELTA
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def ry(theta: float) -> np.ndarray:
    """R_y(theta) = cos(theta/2) I - i sin(theta/2) Y."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


@dataclass(frozen=True, eq=False)
class MultiQubitState:
    """Immutable amplitude vector over ``n_qubits`` qubits.

    The norm is not forced to one; sub-normalised vectors are legal.
    """

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes, got {amps.size}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "MultiQubitState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(amps.size)))
        if amps.size != 2**n:
            raise ValueError("amplitude count is not a power of two")
        return cls(n, amps)

    @classmethod
    def basis(cls, bits: str) -> "MultiQubitState":
        """Computational basis state from a bitstring such as ``'011'``."""
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"bad bitstring {bits!r}")
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(len(bits), amps)

    @classmethod
    def zeros(cls, n_qubits: int) -> "MultiQubitState":
        return cls.basis("0" * n_qubits)

    @property
    def tensor(self) -> np.ndarray:
        """Read-only view with one length-2 axis per wire, wire 1 first."""
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def amplitude(self, bits: str) -> complex:
        if len(bits) != self.n_qubits:
            raise ValueError("bitstring length mismatch")
        return complex(self.amplitudes[int(bits, 2)])

    def conj(self) -> "MultiQubitState":
        return MultiQubitState(self.n_qubits, self.amplitudes.conj())

    def scaled(self, s: complex) -> "MultiQubitState":
        return MultiQubitState(self.n_qubits, s * self.amplitudes)

    def kron(self, other: "MultiQubitState") -> "MultiQubitState":
        return MultiQubitState(self.n_qubits + other.n_qubits,
                               np.kron(self.amplitudes, other.amplitudes))

    def allclose(self, other: "MultiQubitState", atol: float = 1e-12) -> bool:
        return (self.n_qubits == other.n_qubits
                and np.allclose(self.amplitudes, other.amplitudes, atol=atol, rtol=0))

    def __repr__(self):
        return f"MultiQubitState(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"


def _check_wire(wire: int, n: int):
    if not (1 <= wire <= n):
        raise ValueError(f"wire {wire} out of range 1..{n}")


def apply_matrix(state: MultiQubitState, m: np.ndarray,
                 wires: Sequence[int]) -> MultiQubitState:
    """Apply a 2^k x 2^k matrix on the listed wires (first listed = most significant)."""
    n = state.n_qubits
    wires = list(wires)
    for w in wires:
        _check_wire(w, n)
    if len(set(wires)) != len(wires):
        raise ValueError("repeated wire")
    k = len(wires)
    m = np.asarray(m, dtype=complex)
    if m.shape != (2**k, 2**k):
        raise ValueError(f"matrix shape {m.shape} does not fit {k} wires")
    axes = [w - 1 for w in wires]
    t = np.tensordot(m.reshape((2,) * (2 * k)), state.tensor,
                     axes=(list(range(k, 2 * k)), axes))
    t = np.moveaxis(t, list(range(k)), axes)
    return MultiQubitState(n, t.reshape(-1))


def apply_local(state: MultiQubitState, m: np.ndarray, wire: int) -> MultiQubitState:
    return apply_matrix(state, m, [wire])


def validate_permutation(perm: Sequence[int], n: int) -> tuple[int, ...]:
    """Check that ``perm`` (1-based destinations) is a bijection on 1..n."""
    perm = tuple(int(p) for p in perm)
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{n}")
    return perm


def invert_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for w, dest in enumerate(perm, start=1):
        inv[dest - 1] = w
    return tuple(inv)


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """Turn cycle notation like ``'(1,5,2)(3)(4,7,6)'`` into a destination list.

    Within a cycle (a, b, c) the content of wire a moves to wire b, b's to c
    and c's back to a.  Wires not mentioned stay in place.
    """
    perm = list(range(1, n + 1))
    seen: set[int] = set()
    body = text.replace(" ", "")
    if body and (not body.startswith("(") or not body.endswith(")")):
        raise ValueError(f"malformed cycle notation {text!r}")
    for chunk in body[1:-1].split(")(") if body else []:
        cyc = [int(x) for x in chunk.split(",") if x]
        for w in cyc:
            if w in seen or not 1 <= w <= n:
                raise ValueError(f"bad wire {w} in {text!r}")
            seen.add(w)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a - 1] = b
    return tuple(perm)


def permute_wires(state: MultiQubitState, perm: Sequence[int]) -> MultiQubitState:
    """Move the content of wire w to wire ``perm[w-1]``.

    After permuting, measuring wire ``perm[w-1]`` is the same as measuring
    wire w before.
    """
    n = state.n_qubits
    perm = validate_permutation(perm, n)
    inv = invert_permutation(perm)
    t = np.transpose(state.tensor, [p - 1 for p in inv])
    return MultiQubitState(n, np.ascontiguousarray(t).reshape(-1))


def inner(a: MultiQubitState, b: MultiQubitState) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("states have different qubit counts")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
