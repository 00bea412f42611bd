"""Gate-level circuits with oracle sub-blocks.

An oracle block stands for a preparation circuit U (``U|0...0> = psi``) used
as one of four variants: U itself, its adjoint, its transpose or its complex
conjugate.  Blocks stay abstract until :meth:`Circuit.inline` expands them,
which keeps gate censuses readable.

Wires are 1-based throughout.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from . import tensor
from .tensor import MultiQubitState, validate_permutation

MAX_WIRES = 18

_SELF_INVERSE = {"H", "X", "Y", "CNOT", "SWAP"}


class OracleVariant(enum.Enum):
    U = "U"
    ADJOINT = "adjoint"
    TRANSPOSE = "transpose"
    CONJUGATE = "conjugate"

    # (transposed?, conjugated?) as elements of Z2 x Z2
    def _bits(self):
        return {OracleVariant.U: (0, 0), OracleVariant.TRANSPOSE: (1, 0),
                OracleVariant.CONJUGATE: (0, 1), OracleVariant.ADJOINT: (1, 1)}[self]

    def then(self, other: "OracleVariant") -> "OracleVariant":
        """Variant obtained by applying ``self`` and then ``other``."""
        t1, c1 = self._bits()
        t2, c2 = other._bits()
        bits = ((t1 + t2) % 2, (c1 + c2) % 2)
        return {v._bits(): v for v in OracleVariant}[bits]


@dataclass(frozen=True, eq=False)
class Gate:
    """One primitive gate.

    ``kind`` is one of H, X, Y, RY, CNOT, SWAP, PERM, U.  For CNOT the wires
    are (control, target).  PERM acts on ``wires`` and sends the content of
    ``wires[i]`` to ``perm[i]``.  U is a dense unitary on its wires.
    """

    kind: str
    wires: tuple[int, ...]
    param: float | None = None
    perm: tuple[int, ...] | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"{self.kind}: wires must be distinct, got {self.wires}")
        if self.kind not in ("H", "X", "Y", "RY", "CNOT", "SWAP", "PERM", "U"):
            raise ValueError(f"unknown gate kind {self.kind!r}")

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        same_matrix = (self.matrix is None and other.matrix is None) or (
            self.matrix is not None and other.matrix is not None
            and np.array_equal(self.matrix, other.matrix))
        return (self.kind, self.wires, self.param, self.perm) == \
            (other.kind, other.wires, other.param, other.perm) and same_matrix

    def __repr__(self):
        args = ", ".join(str(w) for w in self.wires)
        if self.param is not None:
            args = f"{self.param!r}; {args}"
        if self.perm is not None:
            args += f" -> {self.perm}"
        return f"{self.kind}({args})"

    def remap(self, mapping: dict[int, int]) -> "Gate":
        wires = tuple(mapping[w] for w in self.wires)
        perm = None if self.perm is None else tuple(mapping[p] for p in self.perm)
        return Gate(self.kind, wires, self.param, perm, self.matrix)

    def adjoint(self) -> "Gate":
        if self.kind in _SELF_INVERSE:
            return self
        if self.kind == "RY":
            return Gate("RY", self.wires, -self.param)
        if self.kind == "PERM":
            return _inverse_perm_gate(self)
        return Gate("U", self.wires, matrix=self.matrix.conj().T)

    def transpose(self) -> "Gate":
        # Y^T = -Y; the sign is a global phase and is dropped
        if self.kind in _SELF_INVERSE:
            return self
        if self.kind == "RY":
            return Gate("RY", self.wires, -self.param)
        if self.kind == "PERM":
            return _inverse_perm_gate(self)
        return Gate("U", self.wires, matrix=self.matrix.T.copy())

    def conjugate(self) -> "Gate":
        # conj(Y) = -Y, again only a global phase
        if self.kind == "U":
            return Gate("U", self.wires, matrix=self.matrix.conj())
        return self


def _inverse_perm_gate(g: Gate) -> Gate:
    back = {dest: src for src, dest in zip(g.wires, g.perm)}
    return Gate("PERM", g.wires, perm=tuple(back[w] for w in g.wires))


def h(w: int) -> Gate:
    return Gate("H", (w,))


def x(w: int) -> Gate:
    return Gate("X", (w,))


def y(w: int) -> Gate:
    return Gate("Y", (w,))


def ry(theta: float, w: int) -> Gate:
    return Gate("RY", (w,), param=float(theta))


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


def swap(a: int, b: int) -> Gate:
    return Gate("SWAP", (a, b))


def wire_permutation(perm: Sequence[int]) -> Gate:
    """Whole-register permutation: content of wire w goes to ``perm[w-1]``."""
    perm = validate_permutation(perm, len(perm))
    return Gate("PERM", tuple(range(1, len(perm) + 1)), perm=perm)


def unitary(matrix, wires: Sequence[int]) -> Gate:
    m = np.array(matrix, dtype=complex)
    k = len(wires)
    if m.shape != (2**k, 2**k):
        raise ValueError("matrix size does not match wire count")
    if not np.allclose(m.conj().T @ m, np.eye(2**k), atol=1e-10):
        raise ValueError("matrix is not unitary")
    m.setflags(write=False)
    return Gate("U", tuple(wires), matrix=m)


@dataclass(frozen=True, eq=False)
class OracleBlock:
    """A preparation circuit placed on ``wires`` in one of its four variants."""

    prep: "Circuit"
    variant: OracleVariant
    wires: tuple[int, ...]
    label: str = "psi"

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        if len(self.wires) != self.prep.n_wires:
            raise ValueError("oracle block width does not match its preparation circuit")
        if len(set(self.wires)) != len(self.wires):
            raise ValueError("oracle block wires must be distinct")

    @property
    def kind(self) -> str:
        return "ORACLE"

    def expand(self) -> list[Gate]:
        body = oracle_variant(self.prep, self.variant)
        mapping = {i: w for i, w in enumerate(self.wires, start=1)}
        return [g.remap(mapping) for g in body.gates]

    def remap(self, mapping: dict[int, int]) -> "OracleBlock":
        return OracleBlock(self.prep, self.variant,
                           tuple(mapping[w] for w in self.wires), self.label)

    def __eq__(self, other):
        if not isinstance(other, OracleBlock):
            return NotImplemented
        return (self.variant, self.wires, self.label, self.prep) == \
            (other.variant, other.wires, other.label, other.prep)

    __hash__ = None

    def __repr__(self):
        return f"Oracle[{self.label}:{self.variant.value}]{self.wires}"


Operation = Union[Gate, OracleBlock]


@dataclass(frozen=True, eq=False)
class Circuit:
    n_wires: int
    gates: tuple[Operation, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not 1 <= self.n_wires:
            raise ValueError("a circuit needs at least one wire")
        if self.n_wires > MAX_WIRES:
            raise ValueError(f"{self.n_wires} wires exceeds the simulable limit of {MAX_WIRES}")
        gates = tuple(self.gates)
        for g in gates:
            for w in g.wires:
                if not 1 <= w <= self.n_wires:
                    raise ValueError(f"{g!r} touches wire {w} outside 1..{self.n_wires}")
        object.__setattr__(self, "gates", gates)

    def then(self, *ops: Operation | Iterable[Operation]) -> "Circuit":
        flat: list[Operation] = []
        for op in ops:
            if isinstance(op, (Gate, OracleBlock)):
                flat.append(op)
            else:
                flat.extend(op)
        return Circuit(self.n_wires, self.gates + tuple(flat))

    def __len__(self):
        return len(self.gates)

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.n_wires == other.n_wires and list(self.gates) == list(other.gates)

    @property
    def has_oracles(self) -> bool:
        return any(isinstance(g, OracleBlock) for g in self.gates)

    def inline(self) -> "Circuit":
        out: list[Gate] = []
        for g in self.gates:
            if isinstance(g, OracleBlock):
                out.extend(g.expand())
            else:
                out.append(g)
        return Circuit(self.n_wires, tuple(out))

    def census(self) -> Counter:
        """Gate counts by kind; oracle blocks are counted as ``ORACLE:<variant>``."""
        c: Counter = Counter()
        for g in self.gates:
            if isinstance(g, OracleBlock):
                c[f"ORACLE:{g.variant.value}"] += 1
            else:
                c[g.kind] += 1
        return c

    def is_real(self) -> bool:
        """True when every gate has a real matrix (Y counts, up to its global phase)."""
        for g in self.inline().gates:
            if g.kind == "U" and np.abs(g.matrix.imag).max() > 0:
                return False
        return True


def oracle_variant(prep: Circuit, v: OracleVariant) -> Circuit:
    """Gate-level U, U^dagger, U^T or conj(U) of a preparation circuit.

    Y picks up a sign under transposition and conjugation; that sign is a
    global phase of the block and is dropped.
    """
    for g in prep.gates:
        if isinstance(g, OracleBlock):
            raise ValueError("preparation circuit must not contain oracle blocks")
    gates = list(prep.gates)
    if v is OracleVariant.U:
        new = gates
    elif v is OracleVariant.ADJOINT:
        new = [g.adjoint() for g in reversed(gates)]
    elif v is OracleVariant.TRANSPOSE:
        new = [g.transpose() for g in reversed(gates)]
    elif v is OracleVariant.CONJUGATE:
        new = [g.conjugate() for g in gates]
    else:
        raise ValueError(f"unknown variant {v!r}")
    return Circuit(prep.n_wires, tuple(new))


def householder_prep(state: MultiQubitState | np.ndarray) -> Circuit:
    """Preparation circuit for an arbitrary amplitude vector.

    A single dense gate ``phase * (I - 2 w w^dagger / |w|^2)`` that maps
    |0...0> to the normalised target; used when no gate decomposition is known.
    """
    if not isinstance(state, MultiQubitState):
        state = MultiQubitState.from_amplitudes(state)
    psi = state.amplitudes / np.sqrt(state.norm2())
    dim = psi.size
    a0 = psi[0]
    ph = a0 / abs(a0) if abs(a0) > 1e-15 else 1.0 + 0j
    w = psi.copy()
    w[0] -= ph
    nw = np.vdot(w, w).real
    if nw < 1e-30:
        mat = ph * np.eye(dim, dtype=complex)
    else:
        mat = ph * (np.eye(dim, dtype=complex) - 2.0 * np.outer(w, w.conj()) / nw)
    n = state.n_qubits
    return Circuit(n, (unitary(mat, range(1, n + 1)),))


def gate_matrix(g: Gate) -> np.ndarray:
    """Dense matrix of a primitive gate on its own wires (first wire most significant)."""
    if g.kind == "H":
        return tensor.H
    if g.kind == "X":
        return tensor.X
    if g.kind == "Y":
        return tensor.Y
    if g.kind == "RY":
        return tensor.ry(g.param)
    if g.kind == "CNOT":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    if g.kind == "SWAP":
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    if g.kind == "U":
        return np.asarray(g.matrix)
    if g.kind == "PERM":
        k = len(g.wires)
        local = {w: i + 1 for i, w in enumerate(g.wires)}
        dest = [local[p] for p in g.perm]
        m = np.zeros((2**k, 2**k), dtype=complex)
        for col in range(2**k):
            basis = MultiQubitState(k, np.eye(2**k)[col])
            m[:, col] = tensor.permute_wires(basis, dest).amplitudes
        return m
    raise ValueError(f"no matrix for {g.kind}")


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Full 2^n x 2^n matrix, built column by column.  Meant for n <= 6."""
    from .simulator import run_state

    inl = c.inline()
    dim = 2**c.n_wires
    m = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        start = MultiQubitState(c.n_wires, np.eye(dim)[col])
        m[:, col] = run_state(inl, start).amplitudes
    return m


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, atol: float = 1e-10) -> bool:
    """Compare two arrays after normalising the phase of the first nonzero entry."""
    a = np.asarray(a).reshape(-1)
    b = np.asarray(b).reshape(-1)
    if a.shape != b.shape:
        return False
    k = int(np.argmax(np.abs(a) > atol)) if np.any(np.abs(a) > atol) else 0
    if abs(a[k]) <= atol or abs(b[k]) <= atol:
        return np.allclose(a, b, atol=atol, rtol=0)
    phase = (a[k] / abs(a[k])) / (b[k] / abs(b[k]))
    return np.allclose(a, phase * b, atol=atol, rtol=0)


def bell_prep() -> Circuit:
    """B = CNOT(1,2) (H x I): |00> -> (|00> + |11>)/sqrt(2)."""
    return Circuit(2, (h(1), cnot(1, 2)))


def bell_unmeasure(control: int, target: int) -> list[Gate]:
    """B^dagger = (H x I) CNOT on a wire pair."""
    return [cnot(control, target), h(control)]
