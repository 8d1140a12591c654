"""Command-line front end.

Each subcommand reads one job file ``{"version": 1, "command", "payload"}``.
``tree-metric``, ``tree-path`` and ``real-test`` also accept bare point files.
Results go to stdout as JSON (or CSV for tables).

Exit codes: 0 success, 2 input error, 3 precision or ladder exhausted,
4 invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import checks
from . import serialize as ser
from . import spectrum as sp
from .berkovich import dan_distance, path_point, seminorm_eval
from .degeneration import (
    DegenerationJob,
    check_unimodular,
    convergence_table,
    example_suite,
    reduced_words,
    translation_spectrum,
)
from .errors import InputError, LadderExhausted, PrecisionExhausted, PuiseuxTreeError
from .moebius import apply, axis_point, displacement, translation_length
from .real_locus import is_real_point, project_to_real_tree
from .slnr import cartan_delta, eta_norm, identity_lift, is_minimal_vector, parse_word

EXIT_OK, EXIT_INPUT, EXIT_PRECISION, EXIT_INVARIANT = 0, 2, 3, 4

TABLE_HEADER = ("word", "t", "rescaled", "limit", "gap")


class InvariantViolation(Exception):
    """A self-check failed; carries the result document to print."""

    def __init__(self, result):
        super().__init__("invariant violation")
        self.result = result


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------


class Source:
    """A loaded input file, kept for error locations."""

    def __init__(self, name: str):
        self.name = name
        try:
            with open(name, encoding="utf-8") as fh:
                self.text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {name}: {exc.strerror}") from None
        self.doc = ser.parse_json(self.text)

    @property
    def is_job(self) -> bool:
        return isinstance(self.doc, dict) and "version" in self.doc


def _require(payload: dict, path: str, required, optional=()):
    return ser._fields(payload, path, required, optional)


def _load_points(sources, count: int):
    if any(s.is_job for s in sources):
        raise InputError(f"expected one job file or {count} point files")
    points = [ser.decode_point(s.doc, "$") for s in sources]
    if len(points) != count:
        raise InputError(f"expected one job file or {count} point files")
    return points


def _job_payload(sources, command: str) -> dict:
    if len(sources) != 1:
        raise InputError(f"{command} takes exactly one job file")
    name, payload = ser.decode_job(sources[0].doc)
    if name != command:
        raise InputError(f"job file is for {name!r}, not {command!r}", "$.command")
    return payload


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_tree_metric(sources, args):
    if len(sources) == 1 and sources[0].is_job:
        payload = _require(_job_payload(sources, "tree-metric"), "$.payload", ("p", "q"))
        p = ser.decode_point(payload["p"], "$.payload.p")
        q = ser.decode_point(payload["q"], "$.payload.q")
    else:
        p, q = _load_points(sources, 2)
    return {"distance": ser.encode_rational(dan_distance(p, q))}


def cmd_tree_path(sources, args):
    if len(sources) == 1 and sources[0].is_job:
        payload = _require(_job_payload(sources, "tree-path"), "$.payload", ("p", "q", "s"))
        p = ser.decode_point(payload["p"], "$.payload.p")
        q = ser.decode_point(payload["q"], "$.payload.q")
        s = ser.decode_rational(payload["s"], "$.payload.s")
    else:
        p, q = _load_points(sources, 2)
        if args.distance is None:
            raise InputError("bare point files need --distance")
        s = ser.decode_rational(args.distance, "--distance")
    return {"point": ser.encode_point(path_point(p, q, s)), "distance_total": ser.encode_rational(dan_distance(p, q))}


def cmd_seminorm(sources, args):
    payload = _require(_job_payload(sources, "seminorm"), "$.payload", ("point", "poly"))
    p = ser.decode_point(payload["point"], "$.payload.point")
    f = ser.decode_poly(payload["poly"], "$.payload.poly")
    return {"value": ser.encode_logvalue(seminorm_eval(p, f))}


def cmd_real_test(sources, args):
    if len(sources) == 1 and sources[0].is_job:
        payload = _require(_job_payload(sources, "real-test"), "$.payload", ("point",))
        p = ser.decode_point(payload["point"], "$.payload.point")
    else:
        (p,) = _load_points(sources, 1)
    out = ser.encode_certificate(is_real_point(p))
    if p.is_disk:
        out["projection"] = ser.encode_point(project_to_real_tree(p))
    return out


def cmd_orbit(sources, args):
    payload = _require(_job_payload(sources, "orbit"), "$.payload", ("matrix", "point"), ("steps",))
    g = ser.decode_moebius(payload["matrix"], "$.payload.matrix")
    p = ser.decode_point(payload["point"], "$.payload.point")
    steps = payload.get("steps", 1)
    if not isinstance(steps, int) or isinstance(steps, bool) or steps < 0:
        raise InputError("steps must be a nonnegative integer", "$.payload.steps")
    orbit = [p]
    for _ in range(steps):
        orbit.append(apply(g, orbit[-1], args.precision))
    out = {"orbit": [ser.encode_point(q) for q in orbit]}
    if p.is_disk:
        out["displacements"] = [
            ser.encode_rational(dan_distance(a, b)) for a, b in zip(orbit, orbit[1:])
        ]
    return out


def cmd_translation_length(sources, args):
    payload = _require(
        _job_payload(sources, "translation-length"), "$.payload", (), ("matrix", "rep", "words")
    )
    if "matrix" in payload:
        if "rep" in payload or "words" in payload:
            raise InputError("give either matrix or rep and words", "$.payload")
        g = ser.decode_moebius(payload["matrix"], "$.payload.matrix")
        axis = axis_point(g)
        return {
            "length": ser.encode_rational(translation_length(g)),
            "axis_point": ser.encode_point(axis),
            "displacement_at_axis": ser.encode_rational(displacement(g, axis)),
        }
    _require(payload, "$.payload", ("rep", "words"))
    rep = _exact_rep(payload["rep"], "$.payload.rep")
    words = _words(payload["words"], rep, "$.payload.words")
    rows = translation_spectrum(rep, words)
    return {"rows": [{"word": w, "length": ser.encode_rational(q)} for w, q in rows]}


def cmd_minvec_check(sources, args):
    payload = _require(_job_payload(sources, "minvec-check"), "$.payload", ("rep",), ("tol",))
    rep = ser.decode_rep(payload["rep"], "$.payload.rep")
    if rep.exact:
        raise InputError("minvec-check needs a real representation", "$.payload.rep")
    tol = payload.get("tol", 1e-10)
    check = is_minimal_vector(rep, tol)
    return {"ok": check.ok, "residual": check.residual, "eta": eta_norm(rep)}


def cmd_cartan(sources, args):
    payload = _require(_job_payload(sources, "cartan"), "$.payload", ("A", "B"))
    A = ser.decode_real_matrix(payload["A"], "$.payload.A")
    B = ser.decode_real_matrix(payload["B"], "$.payload.B")
    if A.shape != B.shape:
        raise InputError("A and B differ in size", "$.payload")
    diag = cartan_delta(A, B)
    return {"lambdas": list(diag.lambdas), "d_delta": diag.ratio}


def cmd_spectrum_sign(sources, args):
    payload = _require(_job_payload(sources, "spectrum-sign"), "$.payload", ("point", "polys"))
    p = ser.decode_spectrum_point(payload["point"], "$.payload.point")
    polys = [
        ser.decode_poly(f, f"$.payload.polys[{i}]")
        for i, f in enumerate(ser._list(payload["polys"], "$.payload.polys"))
    ]
    for i, f in enumerate(polys):
        if not f.is_real():
            raise InputError("coefficients must be real", f"$.payload.polys[{i}]")
    signs = [sp.sign_at(p, f) for f in polys]
    cls = sp.classify(p)
    closure = sorted((ser.encode_spectrum_point(q) for q in cls.closure), key=ser.dumps)
    return {
        "signs": signs,
        "in_basic_open": all(s > 0 for s in signs),
        "classification": {"closed": cls.closed, "archimedean": cls.archimedean, "closure": closure},
    }


def _exact_rep(obj, path: str):
    rep = ser.decode_rep(obj, path)
    if not rep.exact:
        rep = ser.decode_rep({**obj, "mode": "exact"}, path)
    try:
        check_unimodular(rep)
    except PuiseuxTreeError as exc:
        raise InputError(str(exc), path) from None
    return rep


def _words(value, rep, path: str) -> list[str]:
    words = ser._list(value, path)
    for i, w in enumerate(words):
        if not isinstance(w, str):
            raise InputError("words are strings", f"{path}[{i}]")
        try:
            parse_word(w, rep.names)
        except ValueError as exc:
            raise InputError(str(exc), f"{path}[{i}]") from None
    return words


def cmd_degenerate(sources, args):
    payload = _require(
        _job_payload(sources, "degenerate"),
        "$.payload",
        ("t_grid",),
        ("rep", "example", "words", "max_length", "basepoint"),
    )
    if ("rep" in payload) == ("example" in payload):
        raise InputError("give exactly one of rep and example", "$.payload")
    if "example" in payload:
        suite = example_suite()
        if payload["example"] not in suite:
            raise InputError(f"example must be one of {', '.join(sorted(suite))}", "$.payload.example")
        rep = suite[payload["example"]]
    else:
        rep = _exact_rep(payload["rep"], "$.payload.rep")
    if "words" in payload:
        words = _words(payload["words"], rep, "$.payload.words")
    else:
        max_length = payload.get("max_length", 4)
        if not isinstance(max_length, int) or isinstance(max_length, bool) or max_length < 0:
            raise InputError("max_length must be a nonnegative integer", "$.payload.max_length")
        words = reduced_words(rep.names, max_length)
    grid = ser._list(payload["t_grid"], "$.payload.t_grid")
    if not all(ser._is_number(t) for t in grid):
        raise InputError("t_grid entries must be numbers", "$.payload.t_grid")
    base = (
        ser.decode_cover_point(payload["basepoint"], "$.payload.basepoint")
        if "basepoint" in payload
        else identity_lift(2)
    )
    if base.A.shape != (2, 2):
        raise InputError("basepoint must be 2x2", "$.payload.basepoint")
    try:
        job = DegenerationJob(rep, words, [float(t) for t in grid], base)
    except ValueError as exc:
        raise InputError(str(exc), "$.payload") from None
    rows = convergence_table(job, jobs=args.jobs)
    return {
        "rows": [
            {"word": r.word, "t": r.t, "rescaled": r.rescaled, "limit": ser.encode_rational(r.limit), "gap": r.gap}
            for r in rows
        ]
    }


def _run_criterion(task):
    number, seed = task
    return checks.run_criterion(number, seed).to_dict()


def cmd_check_suite(sources, args):
    numbers = sorted(checks.CRITERIA)
    if sources:
        payload = _require(_job_payload(sources, "check-suite"), "$.payload", (), ("criteria",))
        chosen = ser._list(payload.get("criteria", numbers), "$.payload.criteria")
        if not all(n in checks.CRITERIA for n in chosen):
            raise InputError(f"criteria must be among {numbers}", "$.payload.criteria")
        numbers = sorted(set(chosen))
    tasks = [(n, args.seed) for n in numbers]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_criterion, tasks))
    else:
        results = [_run_criterion(t) for t in tasks]
    out = {"seed": args.seed, "passed": all(r["passed"] for r in results), "criteria": results}
    if not out["passed"]:
        raise InvariantViolation(out)
    return out


COMMANDS = {
    "tree-path": cmd_tree_path,
    "tree-metric": cmd_tree_metric,
    "seminorm": cmd_seminorm,
    "real-test": cmd_real_test,
    "orbit": cmd_orbit,
    "translation-length": cmd_translation_length,
    "minvec-check": cmd_minvec_check,
    "cartan": cmd_cartan,
    "spectrum-sign": cmd_spectrum_sign,
    "degenerate": cmd_degenerate,
    "check-suite": cmd_check_suite,
}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _csv_rows(command: str, result: dict):
    if command == "degenerate":
        return TABLE_HEADER, [[r["word"], repr(r["t"]), repr(r["rescaled"]), r["limit"], repr(r["gap"])] for r in result["rows"]]
    if command == "translation-length" and "rows" in result:
        return ("word", "length"), [[r["word"], r["length"]] for r in result["rows"]]
    if command == "check-suite":
        return ("criterion", "name", "passed", "samples"), [
            [r["criterion"], r["name"], r["passed"], r["samples"]] for r in result["criteria"]
        ]
    raise InputError(f"csv output is not available for {command}")


def render(command: str, result: dict, fmt: str) -> str:
    if fmt == "json":
        return ser.dumps(result)
    header, rows = _csv_rows(command, result)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _parse_precision(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_parse_precision, default=None,
                        help="known_below exponent for series expansions, e.g. -40")
    common.add_argument("--out", choices=("json", "csv"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for tables and sweeps")
    common.add_argument("--seed", type=int, default=0, help="seed for property sweeps")
    parser = argparse.ArgumentParser(prog="puiseux-tree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("files", nargs="*" if name == "check-suite" else "+")
        if name == "tree-path":
            p.add_argument("--distance", help="arc length s when given two point files")
    return parser


_PATH_TOKEN = re.compile(r"\.([A-Za-z_][\w]*)|\[(\d+)\]")


def _resolve(doc, path: str):
    node = doc
    for key, index in _PATH_TOKEN.findall(path[1:] if path.startswith("$") else path):
        try:
            node = node[key] if key else node[int(index)]
        except (KeyError, IndexError, TypeError):
            return None
    return node


def _describe(exc: InputError, sources) -> str:
    msg = str(exc)
    if exc.line is None and exc.path and exc.path.startswith("$") and len(sources) == 1:
        src = sources[0]
        value = _resolve(src.doc, exc.path)
        line = ser.locate_line(src.text, value) if isinstance(value, (str, int, float)) else None
        if line is not None:
            msg = f"line {line}, {msg}"
    return msg


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    sources: list[Source] = []
    try:
        for name in args.files:
            try:
                sources.append(Source(name))
            except InputError as exc:
                raise InputError(f"{name}: {exc}") from None
        result = COMMANDS[args.command](sources, args)
        stdout.write(render(args.command, result, args.out))
        return EXIT_OK
    except InvariantViolation as exc:
        stdout.write(render(args.command, exc.result, args.out))
        print("error: invariant violation", file=stderr)
        return EXIT_INVARIANT
    except (PrecisionExhausted, LadderExhausted) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_PRECISION
    except InputError as exc:
        print(f"error: {_describe(exc, sources)}", file=stderr)
        return EXIT_INPUT
    except (PuiseuxTreeError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - anything else is a bug
        print(f"error: internal invariant violated: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
