"""OpenQASM 3 and JSON serialisation of circuits."""
from __future__ import annotations

import cmath
import json
import math

import numpy as np

from .circuit import Circuit, Gate, OracleBlock, OracleVariant, unitary


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _zyz(m: np.ndarray) -> tuple[float, float, float]:
    """(theta, phi, lambda) with m = e^{i alpha} U(theta, phi, lambda)."""
    m = np.asarray(m, dtype=complex)
    det = np.linalg.det(m)
    su = m / cmath.sqrt(det)
    theta = 2 * math.atan2(abs(su[1, 0]), abs(su[0, 0]))
    plus = cmath.phase(su[1, 1]) if abs(su[1, 1]) > 1e-12 else 0.0
    minus = cmath.phase(su[1, 0]) if abs(su[1, 0]) > 1e-12 else 0.0
    phi = plus + minus
    lam = plus - minus
    return theta, phi, lam


def _perm_as_swaps(g: Gate) -> list[tuple[int, int]]:
    """Sequence of swaps realising a PERM gate (selection sort on wire contents)."""
    where = {w: w for w in g.wires}  # content label -> current wire
    at = {w: w for w in g.wires}     # wire -> content label
    swaps = []
    for src, dest in zip(g.wires, g.perm):
        cur = where[src]
        if cur != dest:
            other = at[dest]
            swaps.append((cur, dest))
            at[cur], at[dest] = other, src
            where[other], where[src] = cur, dest
    return swaps


# Self-contained definitions on top of the builtin U and gphase, phased like the
# standard gate library so that ``ctrl @ x`` is exactly CNOT.
_GATE_DEFS = {
    "x": "gate x a { U(pi, 0, pi) a; gphase(-pi/2); }",
    "y": "gate y a { U(pi, pi/2, pi/2) a; gphase(-pi/2); }",
    "h": "gate h a { U(pi/2, 0, pi) a; gphase(-pi/4); }",
    "ry": "gate ry(theta) a { U(theta, 0, 0) a; }",
    "cx": "gate cx c, t { ctrl @ x c, t; }",
    "swap": "gate swap a, b { cx a, b; cx b, a; cx a, b; }",
}
_NEEDS = {"cx": ("x",), "swap": ("x", "cx")}


def to_openqasm(c: Circuit, header: dict | None = None) -> str:
    """OpenQASM 3 text, one classical bit per wire and a final measure of all wires.

    Wire w is ``q[w-1]``.  The program has no include files: every gate it uses
    is defined at the top.  Single-wire dense gates become ``U(theta, phi,
    lambda)`` (their global phase is dropped); wider dense gates cannot be
    exported.
    """
    body = []
    for g in c.gates:
        if isinstance(g, OracleBlock):
            raise ValueError("inline oracle blocks before exporting to QASM")
        q = [f"q[{w - 1}]" for w in g.wires]
        if g.kind in ("H", "X", "Y"):
            body.append(f"{g.kind.lower()} {q[0]};")
        elif g.kind == "RY":
            body.append(f"ry({_fmt(g.param)}) {q[0]};")
        elif g.kind == "CNOT":
            body.append(f"cx {q[0]}, {q[1]};")
        elif g.kind == "SWAP":
            body.append(f"swap {q[0]}, {q[1]};")
        elif g.kind == "PERM":
            body.extend(f"swap q[{a - 1}], q[{b - 1}];" for a, b in _perm_as_swaps(g))
        elif g.kind == "U" and len(g.wires) == 1:
            th, ph, la = _zyz(g.matrix)
            body.append(f"U({_fmt(th)}, {_fmt(ph)}, {_fmt(la)}) {q[0]};")
        else:
            raise ValueError(f"cannot export {g.kind} on {len(g.wires)} wires to QASM")
    used = {line.split()[0].split("(")[0] for line in body} & set(_GATE_DEFS)
    for name in list(used):
        used.update(_NEEDS.get(name, ()))
    lines = []
    if header:
        for k, v in header.items():
            lines.append(f"// {k}: {v if isinstance(v, str) else json.dumps(v)}")
    lines.append("OPENQASM 3.0;")
    lines += [d for name, d in _GATE_DEFS.items() if name in used]
    lines += [f"qubit[{c.n_wires}] q;", f"bit[{c.n_wires}] c;", *body, "c = measure q;"]
    return "\n".join(lines) + "\n"


def _gate_to_dict(g) -> dict:
    if isinstance(g, OracleBlock):
        return {"gate": "oracle", "variant": g.variant.value, "label": g.label,
                "wires": list(g.wires), "prep": circuit_to_dict(g.prep)}
    d = {"gate": g.kind.lower(), "wires": list(g.wires)}
    if g.param is not None:
        d["params"] = [g.param]
    if g.perm is not None:
        d["perm"] = list(g.perm)
    if g.matrix is not None:
        d["matrix"] = [[[z.real, z.imag] for z in row] for row in np.asarray(g.matrix)]
    return d


def circuit_to_dict(c: Circuit) -> dict:
    return {"n_wires": c.n_wires, "gates": [_gate_to_dict(g) for g in c.gates]}


def circuit_from_dict(d: dict) -> Circuit:
    ops = []
    for gd in d["gates"]:
        kind = gd["gate"]
        if kind == "oracle":
            ops.append(OracleBlock(circuit_from_dict(gd["prep"]), OracleVariant(gd["variant"]),
                                   tuple(gd["wires"]), gd.get("label", "psi")))
        elif kind == "u":
            m = np.array([[complex(re, im) for re, im in row] for row in gd["matrix"]])
            ops.append(unitary(m, gd["wires"]))
        else:
            ops.append(Gate(kind.upper(), tuple(gd["wires"]),
                            param=gd.get("params", [None])[0],
                            perm=tuple(gd["perm"]) if "perm" in gd else None))
    return Circuit(int(d["n_wires"]), tuple(ops))


def to_json(c: Circuit, header: dict | None = None) -> str:
    payload = circuit_to_dict(c)
    if header:
        payload = {"header": header, **payload}
    return json.dumps(payload, indent=2, sort_keys=False)
