"""Command-line front end.

Subcommands: ``fan``, ``chow``, ``intersect``, ``mirror``, ``jinv``,
``verify``.  All inputs are flags (no configuration files or environment
variables), rationals are printed as exact ``p/q`` strings, and identical
invocations produce byte-identical output.  Exit codes: 0 ok,
1 verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .checks import run_verification
from .intersection import compute_w
from .series import j_from_w, lagrange_oracle, mirror_w
from .toric import (
    DivisorClasses,
    build_fan,
    max_cone_count,
    relation_check,
    sr_ideal,
    sr_ideal_factors,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


@dataclass
class CommandResult:
    """Deterministic, serializable outcome of one CLI invocation."""

    command: str
    parameters: dict[str, object]
    values: list[tuple[str, str]] = field(default_factory=list)
    status: str = "ok"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key in sorted(self.parameters):
            lines.append(f"{key} = {self.parameters[key]}")
        if self.values:
            width = max(len(label) for label, _ in self.values)
            for label, value in self.values:
                lines.append(f"{label.ljust(width)}  {value}")
        lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        doc = {
            "command": self.command,
            "parameters": self.parameters,
            "values": [[label, value] for label, value in self.values],
            "status": self.status,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json_text(cls, text: str) -> CommandResult:
        doc = json.loads(text)
        return cls(
            command=doc["command"],
            parameters=doc["parameters"],
            values=[(label, value) for label, value in doc["values"]],
            status=doc["status"],
        )

    def emit(self, fmt: str, out) -> None:
        out.write(self.to_json_text() if fmt == "json" else self.to_text())


def _usage_error(command: str, parameters: dict, message: str, fmt: str, out) -> int:
    result = CommandResult(command, parameters, [("error", message)], "usage_error")
    result.emit(fmt, out)
    return EXIT_USAGE


def _cmd_fan(args, out) -> int:
    params = {"degree": args.degree}
    if args.degree < 1:
        return _usage_error("fan", params, "degree must be >= 1", args.format, out)
    fan = build_fan(args.degree)
    values = [
        ("dimension", str(fan.dimension)),
        ("ray_count", str(fan.ray_count)),
        ("max_cones", str(max_cone_count(args.degree))),
        ("relation_check", "true" if relation_check(fan) else "false"),
    ]
    for label in fan.labels:
        values.append((f"ray {label}", "[" + ", ".join(map(str, fan.rays[label])) + "]"))
    for i, collection in enumerate(fan.primitive_collections):
        values.append((f"primitive_collection {i}", " ".join(collection)))
    CommandResult("fan", params, values).emit(args.format, out)
    return EXIT_OK


def _cmd_chow(args, out) -> int:
    params = {"degree": args.degree}
    if args.degree < 1:
        return _usage_error("chow", params, "degree must be >= 1", args.format, out)
    d = args.degree
    values = []
    gens = sr_ideal(d)
    for i, (poly, factors) in enumerate(zip(gens, sr_ideal_factors(d))):
        pretty = " * ".join(
            f"({form.render('H')})" if mult == 1 else f"({form.render('H')})^{mult}"
            for form, mult in factors
        )
        values.append((f"generator {i} factors", pretty))
        values.append((f"generator {i} expanded", poly.render("H")))
    classes = DivisorClasses(d)
    fan = build_fan(d)
    for label in fan.labels:
        values.append((f"class {label}", classes.rewrite(label).render("H")))
    CommandResult("chow", params, values).emit(args.format, out)
    return EXIT_OK


def _cmd_intersect(args, out) -> int:
    params = {"degree": args.degree, "a": args.a, "b": args.b}
    if args.degree < 1:
        return _usage_error("intersect", params, "degree must be >= 1", args.format, out)
    value = compute_w(args.degree, args.a, args.b, threads=args.threads)
    CommandResult("intersect", params, [("w", str(value))]).emit(args.format, out)
    return EXIT_OK


def _cmd_mirror(args, out) -> int:
    params = {"order": args.order}
    if args.order < 1:
        return _usage_error("mirror", params, "order must be >= 1", args.format, out)
    values = [(f"w_{d}", str(c)) for d, c in enumerate(mirror_w(args.order), start=1)]
    CommandResult("mirror", params, values).emit(args.format, out)
    return EXIT_OK


def _cmd_jinv(args, out) -> int:
    params = {"order": args.order}
    if args.order < 1:
        return _usage_error("jinv", params, "order must be >= 1", args.format, out)
    composed = j_from_w(args.order)
    inverted = lagrange_oracle(args.order)
    values = [(f"j_{d}", str(c)) for d, c in enumerate(composed, start=1)]
    values.append(("routes_agree", "true" if composed == inverted else "false"))
    CommandResult("jinv", params, values).emit(args.format, out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    params = {"degree_max": args.degree_max}
    if args.degree_max < 1:
        return _usage_error("verify", params, "degree-max must be >= 1", args.format, out)
    if args.format == "json":
        emit = None
    else:
        def emit(line: str) -> None:
            out.write(line + "\n")
    ok, results = run_verification(args.degree_max, threads=args.threads, emit=emit)
    values = [
        (r.name, ("PASS" if r.ok else "FAIL") + f" expected={r.expected} actual={r.actual}")
        for r in results
    ]
    passed = sum(1 for r in results if r.ok)
    values.append(("summary", f"{passed}/{len(results)} checks passed"))
    status = "ok" if ok else "verification_failed"
    result = CommandResult("verify", params, values, status)
    if args.format == "json":
        result.emit("json", out)
    else:
        out.write(f"summary: {passed}/{len(results)} checks passed\n")
        out.write(f"status: {status}\n")
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")


def _add_threads(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="cap on concurrent residue branches (results do not depend on it)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasimap",
        description="Exact intersection numbers of the quasi-map moduli of P(1,1,1,3) "
                    "and the coefficients of the j-invariant.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("fan", help="rays and primitive collections of the degree-d fan")
    p.add_argument("--degree", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_fan)

    p = sub.add_parser("chow", help="intersection-ring ideal generators and divisor classes")
    p.add_argument("--degree", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_chow)

    p = sub.add_parser("intersect", help="the two-point number w(O_{z^a} O_{z^b})_{0,d}")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _add_threads(p)
    _add_format(p)
    p.set_defaults(handler=_cmd_intersect)

    p = sub.add_parser("mirror", help="mirror-map coefficients w_1..w_N")
    p.add_argument("--order", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_mirror)

    p = sub.add_parser("jinv", help="j-invariant coefficients by both reconstruction routes")
    p.add_argument("--order", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_jinv)

    p = sub.add_parser("verify", help="run the full exact verification ladder")
    p.add_argument("--degree-max", type=int, required=True)
    _add_threads(p)
    _add_format(p)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args, out or sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
