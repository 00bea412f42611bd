"""SLOCC class of a three-qubit vector from which invariants vanish."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .invariants import InvariantSet

COLUMNS = ("n2", "y2", "c2_1", "c2_2", "c2_3", "g2_1", "g2_2", "g2_3", "omega2", "tau2")


class SloccClass(enum.Enum):
    NULL = "Null"
    FULLY_SEPARABLE = "1|2|3"
    BISEP_1_23 = "1|23"
    BISEP_2_13 = "2|13"
    BISEP_3_12 = "3|12"
    W = "W"
    GHZ = "GHZ"

    @property
    def rank(self) -> int:
        """Position in the entanglement order Null < 1|2|3 < a|bc < W < GHZ."""
        return {"Null": 0, "1|2|3": 1, "1|23": 2, "2|13": 2, "3|12": 2,
                "W": 3, "GHZ": 4}[self.value]


# vanishing pattern per class, column order as COLUMNS; True means "> 0"
TABLE = {
    SloccClass.NULL:            (0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    SloccClass.FULLY_SEPARABLE: (1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    SloccClass.BISEP_1_23:      (1, 1, 0, 1, 1, 1, 0, 0, 0, 0),
    SloccClass.BISEP_2_13:      (1, 1, 1, 0, 1, 0, 1, 0, 0, 0),
    SloccClass.BISEP_3_12:      (1, 1, 1, 1, 0, 0, 0, 1, 0, 0),
    SloccClass.W:               (1, 1, 1, 1, 1, 1, 1, 1, 1, 0),
    SloccClass.GHZ:             (1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
}
TABLE = {k: tuple(bool(b) for b in v) for k, v in TABLE.items()}


class InconsistentPatternError(ValueError):
    pass


@dataclass(frozen=True)
class Classification:
    slocc_class: SloccClass
    pattern: tuple[bool, ...]
    consistent: bool
    # columns whose zero/nonzero status disagrees with the reported row
    mismatches: tuple[str, ...] = field(default_factory=tuple)
    tol: float = 0.0

    def pattern_string(self) -> str:
        return " ".join(f"{c}{'>0' if p else '=0'}" for c, p in zip(COLUMNS, self.pattern))


def vanishing_pattern(inv: InvariantSet, tol: float) -> tuple[bool, ...]:
    return tuple(bool(v > tol) for v in inv.values())


def _decide(pattern: tuple[bool, ...]) -> SloccClass | None:
    nz = dict(zip(COLUMNS, pattern))
    if not nz["n2"]:
        return SloccClass.NULL
    if nz["tau2"]:
        return SloccClass.GHZ
    if nz["omega2"]:
        return SloccClass.W
    c = (nz["c2_1"], nz["c2_2"], nz["c2_3"])
    if sum(c) == 2:
        return (SloccClass.BISEP_1_23, SloccClass.BISEP_2_13, SloccClass.BISEP_3_12)[c.index(False)]
    if sum(c) == 0:
        return SloccClass.FULLY_SEPARABLE
    return None


def _nearest(pattern: tuple[bool, ...]) -> SloccClass:
    def dist(row):
        return sum(a != b for a, b in zip(pattern, TABLE[row]))
    # ties resolve toward the less entangled row
    return min(TABLE, key=lambda row: (dist(row), row.rank))


def classify(inv: InvariantSet, tol: float = 1e-9, strict: bool = False) -> Classification:
    """Walk the table top-down: a value counts as zero iff it is <= tol.

    A pattern that matches no row (say tau2 > tol while omega2 <= tol) points
    at numerical trouble.  It is reported against the nearest row with
    ``consistent=False``, or raised with ``strict=True``.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    pattern = vanishing_pattern(inv, tol)
    decided = _decide(pattern)
    cls = decided if decided is not None else _nearest(pattern)
    mismatches = tuple(col for col, a, b in zip(COLUMNS, pattern, TABLE[cls]) if a != b)
    consistent = decided is not None and not mismatches
    if strict and not consistent:
        raise InconsistentPatternError(
            f"pattern matches no class (nearest {cls.value}, mismatched {list(mismatches)})")
    return Classification(cls, pattern, consistent, mismatches, tol)
