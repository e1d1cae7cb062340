"""Command-line front end: ``petord <command> ...``.

Every command prints a human table by default and the JSON report with
``--json``.  Reports name their input by SHA-256 so a rerun on identical
bytes reproduces the report up to its ``timestamp`` field.

Exit codes: 0 success, 2 bad input, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Optional

import jsonschema

from . import bounds, finsys, pet
from .ordinal import OMEGA_4, OrdinalSyntaxError, cmp as ord_cmp, omega_pow, parse as parse_ordinal, render
from .poly import PolySyntaxError, parse_poly, render_poly

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 2, 3


class InputError(Exception):
    pass


_POLY = {"type": "string", "minLength": 1}
_RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"}]}

SYSTEM_SCHEMA = {
    "type": "object",
    "required": ["t", "seqs"],
    "properties": {
        "t": {"type": "integer", "minimum": 1},
        "seqs": {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _POLY}},
    },
}

INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["d", "polys", "vectors", "delta"],
    "properties": {
        "d": {"type": "integer", "minimum": 1},
        "polys": {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _POLY}},
        "vectors": {"type": "array", "minItems": 1, "items": {"type": "array", "items": {"type": "integer"}}},
        "delta": _RATIONAL,
    },
}

_PERM = {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}}
_PARTITION = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}}}

FINSYS_SCHEMA = {
    "type": "object",
    "required": ["generators"],
    "properties": {
        "generators": {"type": "array", "minItems": 1, "items": _PERM},
        "tower": {"type": "array", "minItems": 1, "items": _PARTITION},
        "g": {"type": "array", "items": _RATIONAL},
        "s": {"type": "array", "minItems": 2, "items": {"type": "integer"}},
        "T": {"type": "array", "items": {"type": "integer"}},
        "recurrence": {
            "type": "object",
            "required": ["Ts", "system", "B", "m"],
            "properties": {
                "Ts": {"type": "array", "minItems": 1, "items": {"type": "array", "items": {"type": "integer"}}},
                "system": SYSTEM_SCHEMA,
                "B": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}},
                "m": {"type": "integer", "minimum": 1},
            },
        },
    },
}


def _frac(x) -> Fraction:
    return Fraction(x.replace(" ", "")) if isinstance(x, str) else Fraction(x)


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _load(path: str, schema: dict):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 ({exc.reason})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "(root)"
        raise InputError(f"{path}: at {where}: {exc.message}") from None
    return data, hashlib.sha256(raw).hexdigest()


def _load_system(path: str):
    data, digest = _load(path, SYSTEM_SCHEMA)
    try:
        A = pet.PolySystem.from_json(data)
    except (PolySyntaxError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None
    return A, digest


def _report(command: str, digest: Optional[str], result: dict, params: Optional[dict] = None) -> dict:
    return {
        "command": command,
        "input_sha256": digest,
        "params": params or {},
        "result": result,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


# -- commands ---------------------------------------------------------------


def cmd_analyze(args) -> dict:
    A, digest = _load_system(args.file)
    if A.has_subunit():
        raise InputError("system contains constant sequences")
    M = pet.weight_matrix(A)
    o = pet.wm_ordinal(M)
    classes = pet.equivalence_classes(A)
    result = {
        "t": A.t,
        "D": M.D,
        "weight_matrix": M.rows(),
        "weights": [{"seq": [render_poly(p.coeffs) for p in s], "weight": list(pet.weight(s))} for s in A],
        "classes": [
            {"r": r, "d": d, "lead": _fmt_frac(Fraction(lead)), "members": [[render_poly(p.coeffs) for p in s] for s in members]}
            for (r, d, lead), members in sorted(classes.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
        ],
        "ordinal": render(o),
        "ceiling": render(omega_pow(M.t * M.D)),
    }
    lines = [f"system  {A}", f"t = {A.t}, D = {M.D}", "weight matrix (rows r = 1..t, columns d = 1..D):"]
    lines += ["  " + " ".join(str(v) for v in row) for row in M.rows()]
    lines += [f"o(A) = {render(o)}  <  {result['ceiling']}"]
    return _report("analyze", digest, result), lines


def _parse_shifts(text: str):
    try:
        shifts = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise InputError(f"--shifts must be comma-separated integers, got {text!r}") from None
    if not shifts:
        raise InputError("--shifts is empty")
    return shifts


def cmd_descent(args) -> dict:
    A, digest = _load_system(args.file)
    if A.has_subunit():
        raise InputError("system contains constant sequences")
    shifts = _parse_shifts(args.shifts)
    tree = pet.descent_tree(A, shifts, args.depth)
    lines = []

    def show(node, indent):
        tag = "" if node.h is None else f"h={node.h}: "
        label = "{} (degenerate)" if node.degenerate else str(node.system)
        lines.append(f"{'  ' * indent}{tag}{render(node.ordinal)}   {label}")
        for c in node.children:
            show(c, indent + 1)

    show(tree, 0)
    result = {"tree": tree.to_json(), "nodes": tree.size()}
    return _report("descent", digest, result, {"shifts": shifts, "depth": args.depth}), lines


def cmd_bound(args) -> dict:
    A, digest = _load_system(args.file)
    try:
        cfg = bounds.BoundConfig(K=args.K)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        b, tree = bounds.polywm_bound(A, cfg)
    except (ValueError, pet.DegenerateSystem) as exc:
        raise InputError(str(exc)) from None
    shape = bounds.shape_bound(A, args.K)
    contained = bounds.within_omega4(b)
    result = {
        "exponent": render(b.exponent),
        "theta_bound": render(b.theta_bound),
        "below_omega4": contained,
        "shape_bound": render(shape),
        "c": bounds.shape_constant(max(A.degree, len(A)), args.K),
        "derivation": tree.to_json(),
    }
    lines = [f"system  {A}", str(b), f"exponent <= (o(A)+1)*c = {render(shape)}",
             f"w^exponent < {render(OMEGA_4)}: {contained}",
             f"derivation: {sum(1 for _ in tree.walk())} nodes"]
    return _report("bound", digest, result, {"K": args.K}), lines


def cmd_ordinal(args) -> dict:
    try:
        values = [parse_ordinal(e) for e in args.exprs]
    except OrdinalSyntaxError as exc:
        raise InputError(str(exc)) from None
    if args.op == "eval":
        if len(values) != 1:
            raise InputError("eval takes one expression")
        a = values[0]
        result = {"value": render(a), "finite": a.is_finite(), "limit": a.is_limit(), "below_omega4": a < OMEGA_4}
        lines = [render(a)]
    else:
        if len(values) != 2:
            raise InputError("cmp takes two expressions")
        c = ord_cmp(*values)
        sym = "<=>"[c + 1]
        result = {"left": render(values[0]), "right": render(values[1]), "cmp": c}
        lines = [f"{render(values[0])} {sym} {render(values[1])}"]
    digest = hashlib.sha256("\n".join(args.exprs).encode()).hexdigest()
    return _report("ordinal", digest, result, {"op": args.op}), lines


def cmd_search(args) -> dict:
    data, digest = _load(args.file, INSTANCE_SCHEMA)
    try:
        inst = finsys.SzInstance(
            d=data["d"],
            polys=tuple(tuple(parse_poly(p) for p in row) for row in data["polys"]),
            vectors=tuple(tuple(v) for v in data["vectors"]),
            delta=_frac(data["delta"]),
        )
    except (PolySyntaxError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{args.file}: {exc}") from None
    try:
        N = finsys.szemeredi_search(inst, args.nmax)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    except finsys.NotFoundWithin as exc:
        result = {"found": False, "N_max": exc.n_max}
        lines = [f"inconclusive: no N <= {exc.n_max}"]
    else:
        result = {"found": True, "N": N}
        lines = [f"minimal N = {N}"]
    return _report("search", digest, result, {"nmax": args.nmax}), lines


def _demo_finsys(seed: int) -> dict:
    rng = random.Random(seed)
    X = finsys.random_finite_system(rng, 12, d=1)
    tower = finsys.random_tower(rng, X, 3)
    return {
        "generators": [list(p) for p in X.generators],
        "tower": [[list(c) for c in Y.cells] for Y in tower],
        "g": [_fmt_frac(v) for v in finsys.random_obs(rng, X.N, 1, 1)],
        "s": [-1, 0, 1, 2],
        "recurrence": {
            "Ts": [[1]],
            "system": {"t": 1, "seqs": [["0"], ["n"], ["2n"]]},
            "B": sorted(rng.sample(range(X.N), max(1, X.N // 2))),
            "m": 6,
        },
    }


def cmd_finsys(args) -> dict:
    if args.file:
        data, digest = _load(args.file, FINSYS_SCHEMA)
    else:
        data = _demo_finsys(args.seed)
        jsonschema.validate(data, FINSYS_SCHEMA)
        digest = hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()
    try:
        X = finsys.FiniteSystem.from_json(data)
        tower = [finsys.Factor(tuple(tuple(c) for c in cells)) for cells in data.get("tower", [])]
        for Y in tower:
            if Y.N != X.N or not Y.is_invariant(X):
                raise ValueError("tower factors must be invariant partitions of the points")
        eps = _frac(args.eps)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    result: dict = {"N": X.N, "d": X.d}
    lines = [f"{X.N} points, {X.d} generator(s)"]
    if tower and "g" in data:
        g = [_frac(v) for v in data["g"]]
        if len(g) != X.N:
            raise InputError("g needs one value per point")
        T = tuple(data.get("T", X.unit(0)))
        s = data.get("s", [-1] + list(range(len(tower))))
        try:
            met = finsys.metastable_met_check(X, tower, g, eps, s, T)
        except (ValueError, finsys.ExhaustedTower) as exc:
            raise InputError(str(exc)) from None
        result["metastable"] = {"n": met.n, "witnesses": list(met.witnesses),
                                "least_n_per_level": {str(k): v for k, v in sorted(met.per_level.items())}}
        lines.append(f"metastable MET, eps = {_fmt_frac(eps)}: n = {met.n}, witnesses {list(met.witnesses)}")
        lines.append("  level  least n")
        lines += [f"  {k:5d}  {v}" for k, v in sorted(met.per_level.items())]
    rec = data.get("recurrence")
    if rec:
        try:
            A = pet.PolySystem.from_json(rec["system"])
            if any(b >= X.N for b in rec["B"]):
                raise ValueError("B lists a point outside the system")
            rows = []
            for m in range(1, rec["m"] + 1):
                rows.append((m, finsys.multi_recurrence_avg(X, rec["Ts"], A, rec["B"], m)))
        except (PolySyntaxError, ValueError) as exc:
            raise InputError(str(exc)) from None
        result["recurrence"] = [{"m": m, "average": _fmt_frac(v)} for m, v in rows]
        lines.append("  m  average")
        lines += [f"  {m:2d}  {_fmt_frac(v)}" for m, v in rows]
    return _report("finsys", digest, result, {"eps": _fmt_frac(eps), "seed": None if args.file else args.seed}), lines


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="petord", description="Weight matrices, PET descent, bounds and finite-system checks.")
    p.add_argument("--json", action="store_true", help="print the machine-readable report")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="weight matrix and o(A) of a system")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("descent", help="PET descent tree")
    d.add_argument("file")
    d.add_argument("--shifts", default="1")
    d.add_argument("--depth", type=int, default=3)
    d.set_defaults(func=cmd_descent)

    b = sub.add_parser("bound", help="ordinal bound with its derivation")
    b.add_argument("file")
    b.add_argument("--K", type=int, default=1)
    b.set_defaults(func=cmd_bound)

    o = sub.add_parser("ordinal", help="evaluate or compare ordinal expressions")
    o.add_argument("op", choices=["eval", "cmp"])
    o.add_argument("exprs", nargs="+")
    o.set_defaults(func=cmd_ordinal)

    s = sub.add_parser("search", help="exhaustive polynomial Szemeredi search")
    s.add_argument("file")
    s.add_argument("--nmax", type=int, default=8)
    s.set_defaults(func=cmd_search)

    f = sub.add_parser("finsys", help="metastable and recurrence averages on a finite system")
    f.add_argument("file", nargs="?")
    f.add_argument("--eps", default="1/10")
    f.add_argument("--seed", type=int, default=0)
    f.set_defaults(func=cmd_finsys)

    for sp in (a, d, b, o, s, f):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return p


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, lines = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (pet.DescentViolation, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
