"""Compile invariants into measured circuits.

Two constructions per invariant:

* the *small* method contracts against U^T / U^dagger oracles and reads the
  all-zeros outcome;
* the *Bell* method prepares k/2 copies of psi (or its conjugate) and
  contracts index pairs with B^dagger = (H x I) CNOT.  Outcome 00 on a pair
  selects the delta contraction, 11 selects epsilon, and each pair costs a
  factor 1/2 in probability.

The Bell method comes in two forms that differ only in bookkeeping: a wire
permutation that brings each contracted pair next to each other
(``PERMUTATION``), or CNOTs acting directly between the far-apart wires
(``CNOT_LADDER``).
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from . import circuit as qc
from .circuit import Circuit, OracleBlock, OracleVariant as V
from .invariants import three_qubit_invariants, two_qubit_invariants
from .simulator import outcome_probability, run, value_from_probability
from .tensor import parse_cycles

_KINDS = ("norm4_2q", "conc2_2q", "norm4_3q", "tau2", "g4", "c4", "omega4")


@dataclass(frozen=True)
class InvariantTarget:
    kind: str
    a: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown target {self.kind!r}")
        if self.kind in ("g4", "c4"):
            if self.a not in (1, 2, 3):
                raise ValueError(f"{self.kind} needs a subsystem index 1, 2 or 3")
        elif self.a is not None:
            raise ValueError(f"{self.kind} takes no subsystem index")

    @classmethod
    def parse(cls, text: "str | InvariantTarget") -> "InvariantTarget":
        """Accepts names like ``tau2``, ``omega4``, ``g4_2``, ``C4(1)``, ``Norm4_3q``."""
        if isinstance(text, cls):
            return text
        t = text.strip().lower()
        m = re.fullmatch(r"([gc]4)[_(]?([123])\)?", t)
        if m:
            return cls(m.group(1), int(m.group(2)))
        return cls(t)

    def __str__(self):
        return self.kind if self.a is None else f"{self.kind}_{self.a}"

    @property
    def n_qubits(self) -> int:
        return 2 if self.kind.endswith("_2q") else 3

    @property
    def quantity(self) -> str:
        return {"norm4_2q": "n4", "conc2_2q": "c2", "norm4_3q": "n4", "tau2": "tau2",
                "g4": f"g2_{self.a}", "c4": f"c2_{self.a}", "omega4": "omega2"}[self.kind]

    @property
    def root(self) -> int:
        return 2 if self.kind in ("g4", "c4", "omega4") else 1

    @property
    def small_scale(self) -> int:
        return {"norm4_2q": 0, "conc2_2q": 0, "norm4_3q": 0, "tau2": 2,
                "g4": 0, "c4": 2, "omega4": 4}[self.kind]

    @property
    def bell_contractions(self) -> int:
        return {"norm4_2q": 2, "conc2_2q": 2, "norm4_3q": 3, "tau2": 6,
                "g4": 6, "c4": 6, "omega4": 9}[self.kind]

    @property
    def small_width(self) -> int:
        return {"norm4_2q": 2, "conc2_2q": 2, "norm4_3q": 3, "tau2": 6,
                "g4": 6, "c4": 6, "omega4": 9}[self.kind]

    @property
    def bell_width(self) -> int:
        return 2 * self.bell_contractions


ALL_TARGETS = (
    InvariantTarget("norm4_2q"), InvariantTarget("conc2_2q"), InvariantTarget("norm4_3q"),
    InvariantTarget("tau2"),
    *(InvariantTarget("g4", a) for a in (1, 2, 3)),
    *(InvariantTarget("c4", a) for a in (1, 2, 3)),
    InvariantTarget("omega4"),
)
THREE_QUBIT_TARGETS = tuple(t for t in ALL_TARGETS if t.n_qubits == 3)


class BellForm(enum.Enum):
    PERMUTATION = "perm"
    CNOT_LADDER = "cnot"

    @classmethod
    def parse(cls, text: "str | BellForm") -> "BellForm":
        if isinstance(text, cls):
            return text
        return cls(text.strip().lower())


@dataclass(frozen=True, eq=False)
class MeasuredCircuit:
    """A circuit plus the outcome whose probability p encodes a quantity.

    Contract: ``quantity = (2**scale_log2 * p) ** (1 / root)``.
    """

    circuit: Circuit
    outcome: str
    scale_log2: int
    root: int
    quantity: str
    target: InvariantTarget | None = None
    method: str = "small"
    form: BellForm | None = None

    def __post_init__(self):
        if len(self.outcome) != self.circuit.n_wires or set(self.outcome) - {"0", "1"}:
            raise ValueError("outcome must be a bitstring as long as the circuit is wide")
        if self.scale_log2 < 0 or self.root < 1:
            raise ValueError("scale_log2 must be >= 0 and root >= 1")

    def value_from_probability(self, p: float) -> float:
        return value_from_probability(p, self.scale_log2, self.root)

    def probability(self) -> float:
        return outcome_probability(self.circuit.inline(), self.outcome)

    def exact_value(self) -> float:
        return self.value_from_probability(self.probability())

    def header(self) -> dict:
        return {"quantity": self.quantity, "target": str(self.target), "method": self.method,
                "form": None if self.form is None else self.form.value,
                "outcome": self.outcome, "scale_log2": self.scale_log2, "root": self.root,
                "contract": f"{self.quantity} = (2^{self.scale_log2} * p_{self.outcome})^(1/{self.root})"}


def _block(prep: Circuit, v: V, first_wire: int) -> OracleBlock:
    n = prep.n_wires
    return OracleBlock(prep, v, tuple(range(first_wire, first_wire + n)))


def _check_prep(t: InvariantTarget, prep: Circuit):
    if prep.n_wires != t.n_qubits:
        raise ValueError(f"target {t} needs a {t.n_qubits}-qubit preparation, got {prep.n_wires}")


# --- small method -----------------------------------------------------------

def omega_cycle(pivot: int = 1) -> tuple[int, ...]:
    """9-wire permutation for the omega small circuit.

    Content moves p -> p+6 -> p+3 -> p on the pivot wires, so that the
    epsilon-rotated copy-2 index meets the U^T bra and the conjugate copy's
    index meets the first U^dagger bra.
    """
    p = pivot
    return parse_cycles(f"({p},{p + 6},{p + 3})", 9)


_OMEGA_Y = {1: (2, 3, 4, 7, 8, 9), 2: (1, 3, 5, 7, 8, 9), 3: (1, 2, 6, 7, 8, 9)}


def build_small(t, prep: Circuit, pivot: int = 1) -> MeasuredCircuit:
    """Small-method circuit for ``t`` using the preparation circuit ``prep``.

    ``pivot`` picks which of the equivalent swap placements is used for the
    permutation-invariant targets tau2 and omega4.
    """
    t = InvariantTarget.parse(t)
    _check_prep(t, prep)
    if pivot not in (1, 2, 3):
        raise ValueError("pivot must be 1, 2 or 3")
    n = t.n_qubits
    k = t.kind
    if k in ("norm4_2q", "norm4_3q"):
        c = Circuit(n, (_block(prep, V.U, 1), _block(prep, V.ADJOINT, 1)))
    elif k == "conc2_2q":
        c = Circuit(2, (_block(prep, V.U, 1), qc.y(1), qc.y(2), _block(prep, V.TRANSPOSE, 1)))
    elif k == "tau2":
        c = Circuit(6, (_block(prep, V.U, 1), _block(prep, V.U, 4),
                        *(qc.y(w) for w in range(1, 7)),
                        qc.swap(pivot, pivot + 3),
                        _block(prep, V.TRANSPOSE, 1), _block(prep, V.TRANSPOSE, 4)))
    elif k == "g4":
        a = t.a
        ys = [w for w in (1, 2, 3) if w != a]
        c = Circuit(6, (_block(prep, V.U, 1), _block(prep, V.CONJUGATE, 4),
                        *(qc.y(w) for w in ys), *(qc.y(w + 3) for w in ys),
                        qc.swap(a, a + 3),
                        _block(prep, V.TRANSPOSE, 1), _block(prep, V.ADJOINT, 4)))
    elif k == "c4":
        a = t.a
        c = Circuit(6, (_block(prep, V.U, 1), _block(prep, V.CONJUGATE, 4),
                        qc.y(a), qc.y(a + 3),
                        qc.swap(a, a + 3),
                        _block(prep, V.ADJOINT, 1), _block(prep, V.TRANSPOSE, 4)))
    else:
        c = Circuit(9, (_block(prep, V.U, 1), _block(prep, V.U, 4), _block(prep, V.CONJUGATE, 7),
                        *(qc.y(w) for w in _OMEGA_Y[pivot]),
                        qc.wire_permutation(omega_cycle(pivot)),
                        _block(prep, V.TRANSPOSE, 1), _block(prep, V.ADJOINT, 4),
                        _block(prep, V.ADJOINT, 7)))
    return MeasuredCircuit(c, "0" * c.n_wires, t.small_scale, t.root, t.quantity, t, "small")


# --- Bell method ------------------------------------------------------------

@dataclass(frozen=True)
class BellScheme:
    """Copies of psi, the contracted wire pairs, and the pairing permutation.

    ``pairs`` lists (control, target, is_epsilon) in CNOT-ladder order.
    ``cycles`` is the permutation, in cycle notation, that moves every pair
    onto adjacent wires (2k-1, 2k).
    """

    variants: tuple[V, ...]
    pairs: tuple[tuple[int, int, bool], ...]
    cycles: str

    @property
    def width(self) -> int:
        return 2 * len(self.pairs)


_E, _D = True, False
_PAIRS_12 = ((1, 7), (2, 5), (3, 6), (4, 10), (8, 11), (9, 12))
_SIGMA_12 = "(1,5,2)(3)(4,7,6)(8,9,11,10)(12)"
_PAIRS_18 = ((1, 7), (2, 5), (3, 6), (4, 13), (8, 11), (9, 12), (10, 16), (14, 17), (15, 18))
_SIGMA_18 = "(1)(2,3,5,4,7)(6)(8,9,11,10,13)(12)(14,15,17,16)(18)"


def _with_kinds(pairs, eps_pairs) -> tuple:
    return tuple((c, t, (c, t) in eps_pairs) for c, t in pairs)


BELL_SCHEMES: dict[str, BellScheme] = {
    "norm4_2q": BellScheme((V.U, V.CONJUGATE), ((1, 3, _D), (2, 4, _D)), "(2,3)"),
    "conc2_2q": BellScheme((V.U, V.U), ((1, 3, _E), (2, 4, _E)), "(2,3)"),
    "norm4_3q": BellScheme((V.U, V.CONJUGATE), ((1, 4, _D), (2, 5, _D), (3, 6, _D)),
                           "(2,3,5,4)"),
    "tau2": BellScheme((V.U,) * 4, _with_kinds(_PAIRS_12, set(_PAIRS_12)), _SIGMA_12),
    "g4": BellScheme((V.U, V.U, V.CONJUGATE, V.CONJUGATE),
                     _with_kinds(_PAIRS_12, {(2, 5), (3, 6), (8, 11), (9, 12)}), _SIGMA_12),
    "c4": BellScheme((V.U, V.CONJUGATE, V.U, V.CONJUGATE),
                     _with_kinds(_PAIRS_12, {(1, 7), (4, 10)}), _SIGMA_12),
    "omega4": BellScheme((V.U,) * 3 + (V.CONJUGATE,) * 3,
                         _with_kinds(_PAIRS_18, {(1, 7), (2, 5), (3, 6), (10, 16),
                                                 (14, 17), (15, 18)}), _SIGMA_18),
}


def _subsystem_relabel(a: int, n_copies: int) -> dict[int, int]:
    """Swap local qubit 1 with local qubit ``a`` inside every 3-wire copy."""
    mapping = {}
    for b in range(n_copies):
        for j in (1, 2, 3):
            jj = {1: a, a: 1}.get(j, j)
            mapping[3 * b + j] = 3 * b + jj
    return mapping


def bell_scale_check(t) -> int:
    """Number of Bell contractions; also the exponent gap between the two methods."""
    t = InvariantTarget.parse(t)
    scheme = BELL_SCHEMES[t.kind]
    gap = len(scheme.pairs)
    if gap != t.bell_contractions:
        raise AssertionError(f"{t}: scheme has {gap} pairs, expected {t.bell_contractions}")
    return gap


def pairing_permutation(t) -> tuple[int, ...]:
    """Destination list of the permutation used by the permutation form of ``t``."""
    t = InvariantTarget.parse(t)
    scheme = BELL_SCHEMES[t.kind]
    sigma = parse_cycles(scheme.cycles, scheme.width)
    if t.a in (2, 3):
        phi = _subsystem_relabel(t.a, scheme.width // 3)
        sigma = tuple(sigma[phi[w] - 1] for w in range(1, scheme.width + 1))
    return sigma


def build_bell(t, prep: Circuit, form="cnot") -> MeasuredCircuit:
    t = InvariantTarget.parse(t)
    form = BellForm.parse(form)
    _check_prep(t, prep)
    scheme = BELL_SCHEMES[t.kind]
    width = scheme.width
    n = t.n_qubits
    pairs = scheme.pairs
    if t.a in (2, 3):
        phi = _subsystem_relabel(t.a, width // 3)
        pairs = tuple((phi[c], phi[tg], e) for c, tg, e in pairs)
    blocks = [_block(prep, v, 1 + n * i) for i, v in enumerate(scheme.variants)]
    bits = ["0"] * width
    if form is BellForm.CNOT_LADDER:
        gates = [qc.cnot(c, tg) for c, tg, _ in pairs] + [qc.h(c) for c, _, _ in sorted(pairs)]
        for c, tg, eps in pairs:
            if eps:
                bits[c - 1] = bits[tg - 1] = "1"
    else:
        sigma = pairing_permutation(t)
        gates = [qc.wire_permutation(sigma)]
        for c, tg, eps in pairs:
            lo, hi = sorted((sigma[c - 1], sigma[tg - 1]))
            if lo % 2 == 0 or hi != lo + 1:
                raise AssertionError(f"permutation does not pair wires {c} and {tg}")
            if eps:
                bits[lo - 1] = bits[hi - 1] = "1"
        for lo in range(1, width, 2):
            gates.extend(qc.bell_unmeasure(lo, lo + 1))
    c = Circuit(width, tuple(blocks) + tuple(gates))
    return MeasuredCircuit(c, "".join(bits), t.small_scale + t.bell_contractions, t.root,
                           t.quantity, t, "bell", form)


def oracle_value(t, prep: Circuit) -> float:
    """The quantity measured by ``t``, computed by direct contraction on U|0...0>."""
    t = InvariantTarget.parse(t)
    _check_prep(t, prep)
    psi = run(prep.inline())
    if t.n_qubits == 2:
        inv2 = two_qubit_invariants(psi)
        return inv2.n4 if t.quantity == "n4" else inv2.c2
    inv = three_qubit_invariants(psi)
    return inv.n2**2 if t.quantity == "n4" else inv.get(t.quantity)


def build(t, prep: Circuit, method: str = "small", form="cnot", pivot: int = 1) -> MeasuredCircuit:
    if method == "small":
        return build_small(t, prep, pivot=pivot)
    if method == "bell":
        return build_bell(t, prep, form)
    raise ValueError(f"unknown method {method!r}; expected small or bell")
