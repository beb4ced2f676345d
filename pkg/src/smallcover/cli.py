"""Command-line front end: ``smallcover <command> ...``.

Exit codes: 0 success, 1 mathematical failure (invalid characteristic
function, non-Bott matrix, pipeline mismatch), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bott, charfn, polygon
from .gf2 import BitMatrix, MatrixParseError
from .polytope import InvalidDimensionError, InvalidPolytopeError, cube

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


class MathFailure(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    result: dict
    warnings: list[str] = field(default_factory=list)
    ok: bool = True

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "warnings": self.warnings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


# input parsing -------------------------------------------------------------------


def parse_builtin(spec: str) -> tuple[str, int]:
    fam, sep, num = spec.partition(":")
    if not sep or fam not in charfn.BUILTINS or not num.isdigit():
        raise UsageError(f"expected family:n with family in kn|p5|p6, got {spec!r}")
    n = int(num)
    if n < (1 if fam == "kn" else 2):
        raise UsageError(f"{fam} needs a larger n than {n}")
    return fam, n


def load_charfn(path: str) -> charfn.CharacteristicFunction:
    p = Path(path)
    try:
        return charfn.read_charfn(p.read_text(), base=p.parent)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    except (MatrixParseError, InvalidPolytopeError, InvalidDimensionError, charfn.DimensionMismatchError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def load_matrix(path: str) -> BitMatrix:
    try:
        return BitMatrix.from_text(Path(path).read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    except MatrixParseError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def load_bott(args) -> bott.BottMatrix:
    if args.builtin:
        fam, n = parse_builtin(args.builtin)
        if fam != "kn":
            raise UsageError("only kn:N names a built-in Bott matrix")
        return bott.kn_bott_matrix(n)
    if not args.file:
        raise UsageError("give a matrix file or --builtin kn:N")
    A = load_matrix(args.file)
    if A.nrows != A.ncols:
        raise UsageError(f"{args.file}: matrix is not square")
    check = bott.is_bott_matrix(A)
    if not check:
        raise MathFailure(str(bott.NotBottError(check.cycle)))
    return bott.BottMatrix(A)


# commands -------------------------------------------------------------------------


def cmd_validate(args) -> Report:
    if args.builtin:
        fam, n = parse_builtin(args.builtin)
        chi = charfn.BUILTINS[fam](n)
        inputs = {"builtin": args.builtin}
    elif args.file:
        chi = load_charfn(args.file)
        inputs = {"file": args.file}
    else:
        raise UsageError("give --builtin family:n or --file path")
    res = charfn.validate(chi)
    return Report(
        "validate",
        inputs,
        {"valid": res.valid, "failing_vertices": [list(v) for v in res.failing_vertices]},
        ok=res.valid,
    )


METHODS = ("ishida", "st", "closed", "mod2", "circuits")


def cmd_betti(args) -> Report:
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    if not methods:
        raise UsageError("no method given")
    sources = [x for x in (args.model, args.bott, args.chi) if x]
    if len(sources) != 1:
        raise UsageError("give exactly one of --model, --bott, --chi")

    family = n = A = chi = None
    if args.model:
        family, n = parse_builtin(args.model)
        chi = charfn.BUILTINS[family](n)
        if family == "kn":
            A = bott.kn_bott_matrix(n)
        inputs = {"model": args.model}
    elif args.bott:
        ns = argparse.Namespace(builtin=None, file=args.bott)
        A = load_bott(ns)
        inputs = {"bott": args.bott}
    else:
        chi = load_charfn(args.chi)
        inputs = {"chi": args.chi}
    inputs["methods"] = methods

    vectors: dict[str, list[int]] = {}
    for m in methods:
        if m in ("ishida", "circuits"):
            if A is None:
                raise UsageError(f"method {m} needs a Bott matrix (kn:N or --bott)")
            f = bott.ishida_betti if m == "ishida" else bott.betti_from_circuits
            vectors[m] = f(A).as_list()
        elif m == "closed":
            if family is None:
                raise UsageError("closed forms exist only for kn:N, p5:N, p6:N")
            vectors[m] = bott.closed_betti(family, n).as_list()
        elif m == "st":
            if chi is None:
                chi = bott.char_fn_from_bott(bott.upper_triangular_form(A)[0])
            res = charfn.validate(chi)
            if not res:
                raise MathFailure(f"invalid characteristic function at {len(res.failing_vertices)} vertices")
            vectors[m] = charfn.suciu_trevisan_betti(chi, parallel=args.parallel).as_list()
        else:
            P = chi.polytope if chi is not None else cube(A.n)
            vectors[m] = charfn.dj_mod2_betti(P).as_list()

    result: dict = {"betti": vectors}
    ok = True
    rational = [vectors[m] for m in methods if m != "mod2"]
    if len(rational) > 1:
        ok = all(v == rational[0] for v in rational)
        result["match"] = ok
    return Report("betti", inputs, result, ok=ok)


def cmd_tables(args) -> Report:
    if args.max_n < 2:
        raise UsageError("--max-n must be at least 2")
    ctor = charfn.BUILTINS[args.family]
    rows = []
    mismatches = []
    width = args.max_n + 1
    for n in range(2, args.max_n + 1):
        st = charfn.suciu_trevisan_betti(ctor(n), parallel=args.parallel).as_list()
        closed = bott.closed_betti(args.family, n).as_list()
        if st != closed:
            mismatches.append(n)
        rows.append({"n": n, "betti": st + [0] * (width - len(st)), "closed_form": closed + [0] * (width - len(closed))})
    return Report(
        "tables",
        {"family": args.family, "max_n": args.max_n},
        {"rows": rows, "mismatches": mismatches},
        ok=not mismatches,
    )


def cmd_bott(args) -> Report:
    A = load_bott(args)
    inputs = {"query": args.query, "source": args.builtin or args.file}
    q = args.query
    if q == "check":
        chk = bott.is_bott_matrix(A.matrix)
        result = {"is_bott": True, "order": list(chk.order)}
    elif q == "orientable":
        result = {"orientable": bott.orientable(A)}
    elif q == "symplectic":
        result = {"cohomologically_symplectic": bott.cohomologically_symplectic(A)}
    elif q == "chi":
        upper, order = bott.upper_triangular_form(A)
        chi = bott.char_fn_from_bott(upper)
        result = {"order": list(order), "matrix": chi.matrix.to_text(), "valid": charfn.validate(chi).valid}
    elif q == "ring":
        pres = bott.ring_presentation(A)
        result = json.loads(pres.to_json())
        result["text"] = pres.to_text()
    elif q == "betti":
        result = {
            "ishida": bott.ishida_betti(A).as_list(),
            "circuits": bott.betti_from_circuits(A).as_list(),
        }
        result["match"] = result["ishida"] == result["circuits"]
    else:  # free
        rng = random.Random(args.seed)
        pts = [_odd_point(rng, A.n) for _ in range(args.samples)]
        bad = bott.freeness_probe(A, pts)
        inputs.update(seed=args.seed, samples=args.samples)
        result = {"fixed": [[g.exponents.to_list(), [str(c) for c in p.coords]] for g, p in bad]}
        return Report("bott", inputs, result, ok=not bad)
    return Report("bott", inputs, result, ok=result.get("match", True))


def _odd_point(rng: random.Random, n: int) -> bott.TorusPoint:
    coords = []
    for _ in range(n):
        q = rng.randrange(3, 200, 2)
        coords.append(Fraction(rng.randrange(q), q))
    return bott.TorusPoint(coords)


def cmd_genetic_code(args) -> Report:
    try:
        alpha = polygon.LengthVector.parse(args.lengths)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad length vector {args.lengths!r}: {exc}") from exc
    inputs = {"lengths": [str(x) for x in alpha.lengths], "order": list(alpha.order)}
    witness = polygon.half_sum_witness(alpha)
    if witness is not None:
        return Report("genetic-code", inputs, {"generic": False, "witness": list(witness)}, ok=False)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        code = polygon.genetic_code(alpha)
        fam = polygon.recognize_family(code, alpha.n)
    result = {
        "generic": True,
        "empty_space": code.empty_space,
        "genes": [list(g) for g in code.genes],
        "code": str(code),
        "family": fam.value,
    }
    key = {polygon.Family.KN: "kn", polygon.Family.P5_PRISM: "p5", polygon.Family.P6_PRISM: "p6"}.get(fam)
    if key is not None and alpha.n >= (1 if key == "kn" else 2):
        chi = charfn.BUILTINS[key](alpha.n)
        result["betti"] = charfn.suciu_trevisan_betti(chi, parallel=args.parallel).as_list()
    return Report("genetic-code", inputs, result, warnings=[str(w.message) for w in caught])


# rendering --------------------------------------------------------------------------


def _flatten(prefix: str, value, out: list):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list) and value and all(isinstance(v, (int, str, bool)) for v in value):
        out.append((prefix, " ".join(str(v) for v in value)))
    elif isinstance(value, list):
        for k, v in enumerate(value):
            _flatten(f"{prefix}[{k}]", v, out)
    else:
        out.append((prefix, value))


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv" and report.command == "tables":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        rows = report.result["rows"]
        w.writerow(["n"] + [f"b{i}" for i in range(len(rows[0]["betti"]))] if rows else ["n"])
        for r in rows:
            w.writerow([r["n"]] + r["betti"])
        return buf.getvalue()
    pairs: list = []
    _flatten("", report.result, pairs)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(pairs)
        return buf.getvalue()
    lines = [f"{report.command}:"]
    if "text" in report.result:
        lines.append(report.result["text"].rstrip("\n"))
    elif report.command == "tables":
        lines.append("n | " + " ".join(f"b{i}" for i in range(len(report.result["rows"][0]["betti"]))))
        for r in report.result["rows"]:
            lines.append(f"{r['n']} | " + " ".join(str(x) for x in r["betti"]))
        lines.append(f"mismatches: {report.result['mismatches'] or 'none'}")
    else:
        for k, v in pairs:
            if isinstance(v, str) and "\n" in v:
                lines.append(f"{k}:")
                lines += ["  " + ln for ln in v.rstrip("\n").splitlines()]
            else:
                lines.append(f"{k}: {v}")
    lines += [f"warning: {w}" for w in report.warnings]
    return "\n".join(lines) + "\n"


# argument parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--parallel", type=int, default=1, metavar="K", help="worker processes")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    parser = argparse.ArgumentParser(prog="smallcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a characteristic function")
    p.add_argument("--builtin", metavar="FAMILY:N")
    p.add_argument("--file", metavar="PATH")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers by one or more methods")
    p.add_argument("--model", metavar="FAMILY:N")
    p.add_argument("--bott", metavar="PATH", help="Bott matrix file")
    p.add_argument("--chi", metavar="PATH", help="characteristic function file")
    p.add_argument("--method", default="st", help="comma list of " + "|".join(METHODS))
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("tables", parents=[common], help="Betti tables for a family, checked against closed forms")
    p.add_argument("--family", choices=("kn", "p5", "p6"), required=True)
    p.add_argument("--max-n", type=int, default=5)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("bott", parents=[common], help="queries on a Bott matrix")
    p.add_argument("file", nargs="?")
    p.add_argument("--builtin", metavar="kn:N")
    p.add_argument(
        "--query",
        choices=("check", "orientable", "symplectic", "chi", "ring", "betti", "free"),
        default="check",
    )
    p.add_argument("--samples", type=int, default=100, help="points for --query free")
    p.set_defaults(func=cmd_bott)

    p = sub.add_parser("genetic-code", parents=[common], help="genetic code of a length vector")
    p.add_argument("--lengths", required=True, help="comma-separated rationals")
    p.set_defaults(func=cmd_genetic_code)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.parallel < 1:
        parser.error("--parallel must be at least 1")
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MathFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(report, args.format))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
