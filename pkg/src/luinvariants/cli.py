"""Command-line entry point.

Exit codes: 0 success, 1 a tolerance check failed, 2 bad usage.
"""
from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import operator
import sys

import numpy as np

from . import __version__
from .circuit import Circuit, householder_prep
from .classify import COLUMNS, classify
from .invariants import (CanonicalParams, InvariantSet, canonical_invariants,
                         three_qubit_invariants)
from .qasm import to_json, to_openqasm
from .simulator import estimate_invariant, run
from .states import (REPRESENTATIVE_THETA, FamilyId, canonical_state, exact_family_invariants,
                     family_circuit, lu_orbit_circuit, random_prep)
from .synthesis import InvariantTarget, build, oracle_value

SWEEP_QUANTITIES = ("c2_1", "c2_2", "c2_3", "omega2", "tau2")
# target whose measured circuit reads each sweep quantity
SWEEP_TARGETS = {"c2_1": "c4_1", "c2_2": "c4_2", "c2_3": "c4_3",
                 "omega2": "omega4", "tau2": "tau2"}


class UsageError(Exception):
    pass


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow}


def parse_angle(text: str) -> float:
    """Float or a small arithmetic expression in ``pi``: ``1.2``, ``pi/4``, ``3*pi/2``."""
    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        raise ValueError
    try:
        return ev(ast.parse(text.strip(), mode="eval").body)
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:steps``, endpoints included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("theta grid must look like start:stop:steps")
    start, stop = parse_angle(parts[0]), parse_angle(parts[1])
    try:
        steps = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"steps must be an integer, got {parts[2]!r}") from None
    if steps < 1:
        raise argparse.ArgumentTypeError("theta grid needs at least one point")
    return np.linspace(start, stop, steps)


def parse_canonical(text: str) -> CanonicalParams:
    try:
        vals = [parse_angle(v) for v in text.split(",")]
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError("canonical form is l0,l1,l2,l3,l4,theta") from None
    if len(vals) != 6:
        raise argparse.ArgumentTypeError("canonical form is l0,l1,l2,l3,l4,theta")
    try:
        return CanonicalParams(tuple(vals[:5]), vals[5])
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


# ---------------------------------------------------------------- preparation


def _add_prep_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("state preparation (pick one)")
    g.add_argument("--family", type=FamilyId.parse, help="onecut, w or ghz")
    g.add_argument("--theta", type=parse_angle,
                   help="family angle in radians (default: the representative angle)")
    g.add_argument("--canonical", type=parse_canonical, metavar="L0,L1,L2,L3,L4,THETA",
                   help="three-qubit canonical form")
    g.add_argument("--random", type=int, metavar="SEED",
                   help="random state drawn from this seed")
    g.add_argument("--orbit-seed", type=int, metavar="SEED",
                   help="follow the family preparation with seeded Haar local unitaries")


def _prep(args, n_qubits: int = 3) -> tuple[Circuit, dict]:
    chosen = [x for x in ("family", "canonical", "random") if getattr(args, x, None) is not None]
    if len(chosen) != 1:
        raise UsageError("choose exactly one of --family, --canonical, --random")
    if args.family is not None:
        if n_qubits != 3:
            raise UsageError("state families are three-qubit; use --random for two qubits")
        theta = REPRESENTATIVE_THETA[args.family] if args.theta is None else args.theta
        c = family_circuit(args.family, theta)
        desc = {"family": args.family.value, "theta": theta}
        if args.orbit_seed is not None:
            c = lu_orbit_circuit(c, args.orbit_seed)
            desc["orbit_seed"] = args.orbit_seed
        return c, desc
    if args.canonical is not None:
        if n_qubits != 3:
            raise UsageError("canonical forms are three-qubit")
        p = args.canonical
        return householder_prep(canonical_state(p)), {"canonical": [*p.lam, p.theta]}
    _, c = random_prep(n_qubits, args.random)
    return c, {"random_seed": args.random}


def _header(command: str, args, **extra) -> dict:
    h = {"tool": "luinvariants", "version": __version__, "command": command,
         "method": getattr(args, "method", None), "shots": getattr(args, "shots", None),
         "seed": getattr(args, "seed", None)}
    h.update(extra)
    return h


def _emit(text: str, args):
    if getattr(args, "out", None):
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _write_csv(header: dict, columns, rows) -> str:
    buf = io.StringIO()
    for k, v in header.items():
        buf.write(f"# {k}: {v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


# ------------------------------------------------------------------- commands


def cmd_compute(args) -> int:
    if args.canonical is not None and args.family is None and args.random is None:
        inv = canonical_invariants(args.canonical)
        c, desc = _prep(args)
        direct = three_qubit_invariants(run(c))
        dev = float(np.max(np.abs(inv.values() - direct.values())))
    else:
        c, desc = _prep(args)
        inv = three_qubit_invariants(run(c))
        dev = None
    cls = classify(inv, args.tol)
    payload = {"header": _header("compute", args, prep=desc),
               "invariants": inv.to_dict(),
               "class": cls.slocc_class.value, "pattern": cls.pattern_string()}
    if dev is not None:
        payload["closed_form_vs_contraction"] = dev
    _emit(_dump_json(payload), args)
    return 1 if dev is not None and dev > args.tol else 0


def _target(args) -> InvariantTarget:
    try:
        return InvariantTarget.parse(args.target)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_synthesize(args) -> int:
    t = _target(args)
    prep, desc = _prep(args, t.n_qubits)
    mc = build(t, prep, args.method, args.form)
    header = _header("synthesize", args, prep=desc, **mc.header())
    fmt = args.format or "qasm"
    if fmt == "qasm":
        try:
            text = to_openqasm(mc.circuit.inline(), header)
        except ValueError as e:
            raise UsageError(f"{e}; use --format json for dense preparations") from None
    elif fmt == "json":
        text = to_json(mc.circuit, header) + "\n"
    else:
        raise UsageError("synthesize writes qasm or json")
    _emit(text, args)
    return 0


def cmd_simulate(args) -> int:
    t = _target(args)
    prep, desc = _prep(args, t.n_qubits)
    mc = build(t, prep, args.method, args.form)
    est = estimate_invariant(mc, args.shots, args.seed)
    exact = oracle_value(t, prep)
    payload = {"header": _header("simulate", args, prep=desc, **mc.header()),
               "estimate": {"quantity": est.quantity, "value": est.value, "stderr": est.stderr,
                            "raw_probability": est.raw_probability,
                            "upper_bound": est.upper_bound},
               "exact": exact}
    _emit(_dump_json(payload), args)
    if args.shots is None:
        return 1 if abs(est.value - exact) > args.tol else 0
    return 0


def _sweep_columns(with_shots: bool) -> list[str]:
    cols = ["theta"] + [f"exact_{q}" for q in SWEEP_QUANTITIES] + \
        [f"circuit_{q}" for q in SWEEP_QUANTITIES]
    if with_shots:
        for q in SWEEP_QUANTITIES:
            cols += [f"shot_{q}", f"stderr_{q}"]
    return cols


def sweep_rows(family, thetas, method="small", form="cnot", shots=None, seed=None):
    """One row per angle: closed form, exact circuit value and optional shot estimate.

    Shot seeds are derived per (angle, quantity) from ``seed`` so the rows do not
    depend on evaluation order.
    """
    family = FamilyId.parse(family)
    seeds = np.random.SeedSequence(seed).spawn(len(thetas) * len(SWEEP_QUANTITIES)) \
        if shots is not None else None
    rows = []
    for i, theta in enumerate(thetas):
        theta = float(theta)
        exact = exact_family_invariants(family, theta)
        prep = family_circuit(family, theta)
        circ, shot = {}, {}
        for j, q in enumerate(SWEEP_QUANTITIES):
            mc = build(SWEEP_TARGETS[q], prep, method, form)
            circ[q] = estimate_invariant(mc).value
            if shots is not None:
                ss = seeds[i * len(SWEEP_QUANTITIES) + j]
                shot[q] = estimate_invariant(mc, shots, int(ss.generate_state(1)[0]))
        row = {"theta": theta}
        row.update({f"exact_{q}": exact.get(q) for q in SWEEP_QUANTITIES})
        row.update({f"circuit_{q}": circ[q] for q in SWEEP_QUANTITIES})
        for q, est in shot.items():
            row[f"shot_{q}"] = est.value
            row[f"stderr_{q}"] = est.stderr
        rows.append(row)
    return rows


def cmd_sweep(args) -> int:
    if args.family is None:
        raise UsageError("sweep needs --family")
    if args.theta_grid is not None:
        thetas = args.theta_grid
    elif args.theta is not None:
        thetas = np.array([args.theta])
    else:
        raise UsageError("sweep needs --theta-grid or --theta")
    rows = sweep_rows(args.family, thetas, args.method, args.form, args.shots, args.seed)
    cols = _sweep_columns(args.shots is not None)
    worst = max(abs(r[f"exact_{q}"] - r[f"circuit_{q}"]) for r in rows for q in SWEEP_QUANTITIES)
    header = _header("sweep", args, family=args.family.value, form=args.form,
                     columns=",".join(cols))
    fmt = args.format or "csv"
    if fmt == "csv":
        text = _write_csv(header, cols, [[_fmt(r[c]) for c in cols] for r in rows])
    elif fmt == "json":
        text = _dump_json({"header": header, "rows": rows, "max_deviation": worst})
    else:
        raise UsageError("sweep writes csv or json")
    _emit(text, args)
    return 1 if worst > args.tol else 0


def _verify_preps(t: InvariantTarget, args) -> list[Circuit]:
    rng = np.random.default_rng(args.seed)
    seeds = [int(s) for s in rng.integers(0, 2**63, size=args.trials)]
    if args.family is not None:
        if t.n_qubits != 3:
            raise UsageError("state families are three-qubit")
        theta = REPRESENTATIVE_THETA[args.family] if args.theta is None else args.theta
        base = family_circuit(args.family, theta)
        return [lu_orbit_circuit(base, s) for s in seeds]
    return [random_prep(t.n_qubits, s)[1] for s in seeds]


def cmd_verify(args) -> int:
    t = _target(args)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    methods = ["small", "bell"] if args.method in (None, "both") else [args.method]
    forms = [args.form] if args.form else ["perm", "cnot"]
    preps = _verify_preps(t, args)
    worst = {}
    for prep in preps:
        oracle = oracle_value(t, prep) ** t.root
        for m in methods:
            for f in (forms if m == "bell" else [None]):
                mc = build(t, prep, m, f or "cnot")
                key = m if f is None else f"{m}/{f}"
                dev = abs(2.0**mc.scale_log2 * mc.probability() - oracle)
                worst[key] = max(worst.get(key, 0.0), dev)
    ok = all(v <= args.tol for v in worst.values())
    header = _header("verify", args, target=str(t), trials=args.trials,
                     prep="family-orbit" if args.family else "random")
    payload = {"header": header, "max_abs_deviation": worst, "tol": args.tol, "passed": ok}
    _emit(_dump_json(payload), args)
    return 0 if ok else 1


def _load_invariants(path: str) -> InvariantSet:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    if "invariants" in d:
        d = d["invariants"]
    try:
        return InvariantSet.from_dict(d)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{path} is not an invariant set: {e}") from None


def cmd_classify(args) -> int:
    if args.input is not None:
        inv = _load_invariants(args.input)
    else:
        c, _ = _prep(args)
        inv = three_qubit_invariants(run(c))
    res = classify(inv, args.tol)
    if (args.format or "text") == "json":
        text = _dump_json({"header": _header("classify", args, tol=args.tol),
                           "class": res.slocc_class.value,
                           "pattern": dict(zip(COLUMNS, res.pattern)),
                           "consistent": res.consistent,
                           "mismatches": list(res.mismatches)})
    else:
        lines = [f"class: {res.slocc_class.value}", f"pattern: {res.pattern_string()}"]
        if not res.consistent:
            lines.append(f"warning: inconsistent pattern, nearest row; mismatched {', '.join(res.mismatches)}")
        text = "\n".join(lines) + "\n"
    _emit(text, args)
    return 0 if res.consistent else 1


def replicate_table3(instances: int, seed=None, shots=None):
    """Mean and variance of the five invariants over LU-orbit instances of each representative."""
    rng = np.random.default_rng(seed)
    report = {}
    for fam, label in ((FamilyId.ONECUT, "1|23"), (FamilyId.W, "W"), (FamilyId.GHZ, "GHZ")):
        theta = REPRESENTATIVE_THETA[fam]
        exact = exact_family_invariants(fam, theta)
        base = family_circuit(fam, theta)
        vals = {q: [] for q in SWEEP_QUANTITIES}
        errs = {q: [] for q in SWEEP_QUANTITIES}
        for _ in range(instances):
            prep = lu_orbit_circuit(base, int(rng.integers(0, 2**63)))
            for q in SWEEP_QUANTITIES:
                s = None if shots is None else int(rng.integers(0, 2**63))
                est = estimate_invariant(build(SWEEP_TARGETS[q], prep, "small"), shots, s)
                vals[q].append(est.value)
                errs[q].append(est.stderr)
        rows = {}
        for q in SWEEP_QUANTITIES:
            v = np.array(vals[q])
            sem = math.sqrt(float(np.mean(np.square(errs[q]))) / instances)
            rows[q] = {"exact": exact.get(q), "mean": float(v.mean()),
                       "variance": float(v.var()), "sem": sem}
        report[label] = rows
    return report


def cmd_replicate_table3(args) -> int:
    if args.instances < 1:
        raise UsageError("--instances must be at least 1")
    report = replicate_table3(args.instances, args.seed, args.shots)
    ok = True
    for rows in report.values():
        for r in rows.values():
            band = args.tol if args.shots is None else 5 * r["sem"] + args.tol
            r["within"] = abs(r["mean"] - r["exact"]) <= band
            ok &= r["within"]
    header = _header("replicate-table3", args, instances=args.instances)
    header["method"] = "small"
    fmt = args.format or "json"
    if fmt == "json":
        text = _dump_json({"header": header, "rows": report, "passed": ok})
    elif fmt == "csv":
        cols = ["state", "quantity", "exact", "mean", "variance", "sem", "within"]
        body = [[s, q, _fmt(r["exact"]), _fmt(r["mean"]), _fmt(r["variance"]), _fmt(r["sem"]),
                 str(r["within"]).lower()] for s, rows in report.items() for q, r in rows.items()]
        text = _write_csv(header, cols, body)
    else:
        raise UsageError("replicate-table3 writes json or csv")
    _emit(text, args)
    return 0 if ok else 1


# --------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="luinvariants",
        description="Local-unitary invariants of three-qubit states and the circuits that measure them.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, method=True, shots=True, fmt=("json",)):
        if method:
            p.add_argument("--method", choices=["small", "bell"], default="small")
            p.add_argument("--form", choices=["perm", "cnot"], default="cnot",
                           help="Bell-method bookkeeping (ignored by the small method)")
        if shots:
            p.add_argument("--shots", type=int, help="sample this many shots (default: exact)")
        p.add_argument("--seed", type=int)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--out", help="write here instead of stdout")
        p.add_argument("--format", choices=fmt)

    p = sub.add_parser("compute", help="invariants of one state by direct contraction")
    _add_prep_args(p)
    common(p, method=False, shots=False)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("synthesize", help="emit the measured circuit for a target")
    p.add_argument("--target", required=True)
    _add_prep_args(p)
    common(p, shots=False, fmt=("qasm", "json"))
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("simulate", help="run a measured circuit exactly or with shots")
    p.add_argument("--target", required=True)
    _add_prep_args(p)
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="invariants along a state family, one CSV row per angle")
    p.add_argument("--family", type=FamilyId.parse)
    p.add_argument("--theta", type=parse_angle)
    p.add_argument("--theta-grid", type=parse_grid, metavar="START:STOP:STEPS")
    common(p, fmt=("csv", "json"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="compare circuit values with direct contraction")
    p.add_argument("--target", required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--family", type=FamilyId.parse,
                   help="use seeded LU orbits of this family instead of random states")
    p.add_argument("--theta", type=parse_angle)
    p.add_argument("--method", choices=["small", "bell", "both"], default="both")
    p.add_argument("--form", choices=["perm", "cnot"], help="default: check both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="SLOCC class from the vanishing pattern")
    p.add_argument("--input", help="invariant-set JSON (as written by compute)")
    _add_prep_args(p)
    common(p, method=False, shots=False, fmt=("text", "json"))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("replicate-table3",
                       help="invariants over random LU-orbit instances of the representative states")
    p.add_argument("--instances", type=int, default=10)
    p.add_argument("--shots", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"))
    p.set_defaults(func=cmd_replicate_table3)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "shots", None) is not None and args.shots < 1:
        parser.error("--shots must be at least 1")
    if getattr(args, "tol", 0.0) < 0:
        parser.error("--tol must be nonnegative")
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))
    except ValueError as e:
        # invalid target/prep/method combinations surface here
        parser.error(str(e))


if __name__ == "__main__":
    sys.exit(main())
