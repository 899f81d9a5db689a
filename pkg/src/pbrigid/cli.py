"""Command-line interface.

Exit codes:
  0   Rigid (classify) / success
  1   NotRigid (classify)
  2   ConjecturallyRigid (classify)
  64  usage error (bad arguments, unparsable tuple)
  65  data error (wrong cotype or length, malformed graph, bad contraction)
  70  reference battery failed
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__, arith, geometry
from .battery import run_battery
from .classify import Status, classify
from .dualgraph import GraphError, IntersectionGraph, contract, contract_all, singular_curve_notes

EXIT_OK = 0
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_BATTERY = 70

STATUS_EXIT = {Status.RIGID: 0, Status.NOT_RIGID: 1, Status.CONJECTURALLY_RIGID: 2}

CLASS_NAMES = {
    "gamma-minus": arith.GammaClass.GAMMA_MINUS,
    "gamma-plus": arith.GammaClass.GAMMA_PLUS,
    "gamma-plus-sample": arith.GammaClass.GAMMA_PLUS,
    "gamma-other": arith.GammaClass.GAMMA_ONLY,
    "not-in-gamma": arith.GammaClass.NOT_IN_GAMMA,
}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _color(text: str, code: str, stream) -> str:
    if os.environ.get("NO_COLOR") is not None or not stream.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _tuple_arg(values: Sequence[str]) -> tuple[int, ...]:
    raw = []
    for v in values:
        raw += [p for p in v.replace(",", " ").split() if p]
    try:
        nums = [int(p) for p in raw]
    except ValueError:
        raise UsageError(f"exponents must be integers: {' '.join(raw)}") from None
    try:
        return arith.as_tuple(nums)
    except arith.TupleError as exc:
        raise UsageError(str(exc)) from None


def _envelope(command: str, inp, result) -> dict:
    return {"command": command, "input": inp, "result": result, "version": __version__}


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _fmt_tuple(S) -> str:
    return "(" + ",".join(map(str, S)) + ")"


# -- commands -----------------------------------------------------------------


def cmd_classify(args) -> int:
    S = _tuple_arg(args.tuple)
    v = classify(S)
    if args.json:
        _emit_json(_envelope("classify", {"tuple": list(S), "trace": args.trace}, v.to_json()))
    else:
        colors = {Status.RIGID: "32", Status.NOT_RIGID: "31", Status.CONJECTURALLY_RIGID: "33"}
        line = f"{_fmt_tuple(S)}: {_color(v.status.value, colors[v.status], sys.stdout)}"
        if v.witness_id:
            line += f" (witness {v.witness_id})"
        print(line)
        if args.trace:
            print("\n".join(v.trace.render(1)))
    return STATUS_EXIT[v.status]


def cmd_enumerate(args) -> int:
    cls = CLASS_NAMES[args.cls]
    if args.n < 2:
        raise UsageError(f"n must be at least 2, got {args.n}")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    if cls is arith.GammaClass.GAMMA_MINUS:
        if args.n < 3:
            raise UsageError(f"gamma-minus enumeration needs n >= 3, got {args.n}")
        if args.n >= 4 and args.max is None:
            raise UsageError(f"n = {args.n} needs --max")
        tuples = arith.enumerate_gamma_minus(args.n, args.max)
    else:
        if args.max is None:
            raise UsageError(f"class {args.cls} needs --max")
        tuples = arith.enumerate_class(args.n, cls, args.max, jobs=args.jobs)
    if args.json:
        inp = {"n": args.n, "class": args.cls, "max": args.max}
        _emit_json(_envelope("enumerate", inp, [list(S) for S in tuples]))
    else:
        for S in tuples:
            print(" ".join(map(str, S)))
    return EXIT_OK


def _surface(S):
    if len(S) != 4:
        raise DataError(f"geometry needs 4 exponents, got {len(S)}")
    c = arith.cotype(S)
    if c:
        raise DataError(f"{_fmt_tuple(S)} has cotype {c}; Proj B_S is not well-formed")


def cmd_geometry(args) -> int:
    S = _tuple_arg(args.tuple)
    _surface(S)
    report = geometry.surface_report(S)
    graph = None
    graph_error = None
    try:
        graph = geometry.resolution_graph(S)
    except geometry.GeometryError as exc:
        graph_error = str(exc)
    if args.dot:
        if graph is None:
            raise DataError(graph_error)
        sys.stdout.write(graph.to_dot(_fmt_tuple(S)))
        return EXIT_OK
    if args.json:
        result = report.to_json()
        result["resolution_graph"] = graph.to_json() if graph else None
        _emit_json(_envelope("geometry", {"tuple": list(S)}, result))
        return EXIT_OK
    print(f"X = Proj B{_fmt_tuple(S)} in P{_fmt_tuple(report.weights)}, degree {report.total_degree}")
    print(f"  amplitude      {report.amplitude}")
    print(f"  K^2            {report.K_squared}")
    print(f"  Delta^2        {report.delta_squared}")
    dak = report.delta_dot_anticanonical
    if dak is not None:
        print(f"  Delta.(-K)     {dak}")
    if not report.singular_points:
        print("  singular points: none")
    for p in report.singular_points:
        where = "on Delta" if p.mult_delta else "off Delta"
        print(f"  {p.count} x {p.label()} on edge {{{p.edge[0]},{p.edge[1]}}}, {where}")
    if graph is not None:
        print(f"  resolution: Delta~^2 = {graph.curves['Delta'].self_int}, "
              f"K~^2 = {graph.ambient_k_squared}")
    return EXIT_OK


def cmd_resolution(args) -> int:
    S = _tuple_arg(args.tuple)
    _surface(S)
    try:
        graph = geometry.resolution_graph(S)
    except geometry.GeometryError as exc:
        raise DataError(str(exc)) from None
    _emit_json(graph.to_json())
    return EXIT_OK


def _read_graph(path: str) -> IntersectionGraph:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON in {path}: {exc}") from None
    # accept a bare graph or a geometry envelope
    if isinstance(data, dict) and "result" in data and isinstance(data["result"], dict):
        data = data["result"].get("resolution_graph", data["result"])
    if not isinstance(data, dict):
        raise DataError("graph JSON must be an object")
    try:
        return IntersectionGraph.from_json(data)
    except GraphError as exc:
        raise DataError(str(exc)) from None


def cmd_contract(args) -> int:
    G = _read_graph(args.input)
    order = None
    if args.order is not None:
        order = [v.strip() for v in args.order.split(",") if v.strip()]
    try:
        final, trace = contract_all(G, order)
    except GraphError as exc:
        raise DataError(str(exc)) from None
    notes = singular_curve_notes(final, G)
    if args.json:
        result = {
            "trace": [r.to_json() for r in trace],
            "final": final.to_json(),
            "degree": final.ambient_k_squared,
            "notes": dict(sorted(notes.items())),
        }
        _emit_json(_envelope("contract", {"input": args.input, "order": order}, result))
        return EXIT_OK
    if args.dot:
        sys.stdout.write(final.to_dot("final"))
        return EXIT_OK
    cur = G
    for rec in trace:
        cur, _ = contract(cur, rec.curve)
        print(rec.describe(cur))
    print(f"final K^2 = {final.ambient_k_squared}")
    for n in final.names():
        c = final.curves[n]
        line = f"  {n}: C^2 = {c.self_int}, K.C = {c.k_degree}, p_a = {c.p_a}"
        if n in notes:
            line += f" ({notes[n]})"
        print(line)
    return EXIT_OK


def cmd_witness(args) -> int:
    S = _tuple_arg(args.tuple)
    v = classify(S)
    w = v.witness()
    if w is None:
        raise DataError(f"{_fmt_tuple(S)} is {v.status.value}; there is no witness")
    data = w.to_json()
    if args.json:
        _emit_json(_envelope("witness", {"tuple": list(S)}, data))
        return EXIT_OK
    names = w.ring.names
    print(f"{w.id}: B = k[{', '.join(names)}] / ({w.ring.relation.format(names)})")
    for name, img in zip(names, w.derivation.images):
        if img:
            print(f"  D({name}) = {img.format(names)}")
    print(f"  well-defined: {data['well_defined']}, homogeneous degree: {data['homogeneous_degree']}")
    print(f"  nilpotency: {w.certify()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_battery()
    ok = all(c.passed for c in checks)
    if args.json:
        result = {"passed": ok, "checks": [c.to_json() for c in checks],
                  "summary": {"total": len(checks), "failed": sum(not c.passed for c in checks)}}
        _emit_json(_envelope("verify-paper", {}, result))
    else:
        width = max(len(c.name) for c in checks)
        for c in checks:
            mark = _color("PASS", "32", sys.stdout) if c.passed else _color("FAIL", "31", sys.stdout)
            print(f"{mark}  {c.name.ljust(width)}  {c.description}")
            if not c.passed:
                print(f"      expected: {c.expected}")
                print(f"      actual:   {c.actual}")
        print(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return EXIT_OK if ok else EXIT_BATTERY


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pbrigid", description="Rigidity and geometry of Pham-Brieskorn rings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="rigidity verdict for a tuple")
    c.add_argument("tuple", nargs="+", help="exponents a_0 ... a_n")
    c.add_argument("--trace", action="store_true", help="print the proof trace")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("enumerate", help="list canonical tuples of a class")
    e.add_argument("--n", type=int, default=3, help="number of exponents minus one")
    e.add_argument("--class", dest="cls", choices=sorted(CLASS_NAMES), default="gamma-minus")
    e.add_argument("--max", type=int, default=None, help="largest entry")
    e.add_argument("--jobs", type=int, default=1, help="worker processes for brute force")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    g = sub.add_parser("geometry", help="surface report for a cotype 0 4-tuple")
    g.add_argument("tuple", nargs="+")
    out = g.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--dot", action="store_true", help="resolution graph in DOT")
    g.set_defaults(func=cmd_geometry)

    r = sub.add_parser("resolution", help="resolution graph as JSON, input for contract")
    r.add_argument("tuple", nargs="+")
    r.set_defaults(func=cmd_resolution)

    k = sub.add_parser("contract", help="contract (-1)-curves in a graph")
    k.add_argument("--input", required=True, help="graph JSON file, or - for stdin")
    how = k.add_mutually_exclusive_group()
    how.add_argument("--auto", action="store_true", help="contract non-competing (-1)-curves (default)")
    how.add_argument("--order", help="comma-separated curve names")
    fmt = k.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--dot", action="store_true", help="final graph in DOT")
    k.set_defaults(func=cmd_contract)

    w = sub.add_parser("witness", help="LND certifying a NotRigid verdict")
    w.add_argument("tuple", nargs="+")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_witness)

    v = sub.add_parser("verify-paper", help="recompute every reference value")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pbrigid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, geometry.GeometryError, arith.TupleError) as exc:
        print(f"pbrigid: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
