"""JSON codecs for job files and command results.

Every decoder takes the value and a JSON-path string used in error messages,
and raises :class:`InputError` on anything malformed.  Encoders emit canonical
forms, so decoding an encoded value gives back an equal value.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from . import spectrum as sp
from .berkovich import INFINITY, BerkPoint, disk, from_chart_w, type1
from .errors import InputError, LiteralSyntaxError
from .field import ComplexPuiseux, LogValue, PuiseuxNumber, format_literal, parse_literal
from .moebius import MoebiusMap
from .poly import Poly
from .real_locus import RealnessCertificate
from .slnr import CoverPoint, RepTuple

JOB_VERSION = 1


def _fields(obj, path: str, required=(), optional=()) -> dict:
    if not isinstance(obj, dict):
        raise InputError("expected an object", path)
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise InputError(f"unknown field {unknown[0]!r}", path)
    for key in required:
        if key not in obj:
            raise InputError(f"missing field {key!r}", path)
    return obj


def _list(obj, path: str, length=None) -> list:
    if not isinstance(obj, list):
        raise InputError("expected an array", path)
    if length is not None and len(obj) != length:
        raise InputError(f"expected {length} entries, got {len(obj)}", path)
    return obj


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------


def encode_rational(q: Fraction) -> str:
    return str(q)


def decode_rational(value, path: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError("expected a rational", path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (float, str)):
        try:
            return Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"expected a rational string like '3/2', got {value!r}", path)


def encode_literal(a: PuiseuxNumber) -> str:
    return format_literal(a)


def decode_literal(value, path: str) -> PuiseuxNumber:
    if isinstance(value, bool):
        raise InputError("expected a field literal", path)
    if isinstance(value, int):
        return PuiseuxNumber.constant(value)
    if isinstance(value, float):
        # decimals are read exactly from their shortest repr
        return PuiseuxNumber.constant(Fraction(repr(value)))
    if isinstance(value, str):
        try:
            return parse_literal(value)
        except LiteralSyntaxError as exc:
            raise InputError(str(exc), path, offset=exc.offset) from None
    raise InputError(f"expected a field literal, got {value!r}", path)


def encode_complex(v: ComplexPuiseux):
    if v.is_real():
        return encode_literal(v.re)
    return [encode_literal(v.re), encode_literal(v.im)]


def decode_complex(value, path: str) -> ComplexPuiseux:
    if isinstance(value, list):
        re, im = _list(value, path, 2)
        return ComplexPuiseux(decode_literal(re, f"{path}[0]"), decode_literal(im, f"{path}[1]"))
    return ComplexPuiseux(decode_literal(value, path))


def encode_logvalue(v: LogValue) -> dict:
    if v.is_zero:
        return {"kind": "zero"}
    return {"kind": "finite", "exponent": encode_rational(v.exponent)}


def decode_logvalue(obj, path: str) -> LogValue:
    _fields(obj, path, ("kind",), ("exponent",))
    if obj["kind"] == "zero":
        return LogValue(None)
    if obj["kind"] == "finite" and "exponent" in obj:
        return LogValue(decode_rational(obj["exponent"], f"{path}.exponent"))
    raise InputError("kind must be 'zero' or 'finite' with an exponent", path)


# ---------------------------------------------------------------------------
# Berkovich points
# ---------------------------------------------------------------------------


def encode_point(p: BerkPoint) -> dict:
    if p.is_infinity:
        return {"chart": "Z", "kind": "type1", "center": "inf"}
    out = {"chart": "Z", "kind": p.kind, "center": encode_complex(p.center)}
    if p.is_disk:
        out["log_radius"] = encode_rational(p.log_radius)
    return out


def decode_point(obj, path: str) -> BerkPoint:
    _fields(obj, path, ("kind", "center"), ("chart", "log_radius"))
    chart = obj.get("chart", "Z")
    if chart not in ("Z", "W"):
        raise InputError("chart must be 'Z' or 'W'", f"{path}.chart")
    kind = obj["kind"]
    if kind not in ("type1", "disk"):
        raise InputError("kind must be 'type1' or 'disk'", f"{path}.kind")
    at_inf = obj["center"] == "inf"
    if kind == "type1":
        if "log_radius" in obj:
            raise InputError("type-1 points have no log_radius", path)
        if at_inf:
            return INFINITY if chart == "Z" else type1(0)
        center = decode_complex(obj["center"], f"{path}.center")
        return type1(center) if chart == "Z" else from_chart_w(center)
    if at_inf:
        raise InputError("a disk needs a finite center", f"{path}.center")
    if "log_radius" not in obj:
        raise InputError("missing field 'log_radius'", path)
    center = decode_complex(obj["center"], f"{path}.center")
    t = decode_rational(obj["log_radius"], f"{path}.log_radius")
    return disk(center, t) if chart == "Z" else from_chart_w(center, t)


# ---------------------------------------------------------------------------
# polynomials, matrices, certificates
# ---------------------------------------------------------------------------


def encode_poly(f: Poly) -> list:
    """Coefficients from the constant term upward."""
    return [
        encode_literal(c) if isinstance(c, PuiseuxNumber) else encode_complex(c)
        for c in f.coeffs
    ]


def decode_poly(value, path: str) -> Poly:
    """Real entries give K coefficients; ``[re, im]`` pairs give complex ones."""
    coeffs = _list(value, path)
    return Poly(
        [
            decode_complex(c, f"{path}[{i}]") if isinstance(c, list) else decode_literal(c, f"{path}[{i}]")
            for i, c in enumerate(coeffs)
        ]
    )


def encode_moebius(g: MoebiusMap) -> list:
    return [[encode_complex(e) for e in row] for row in g.rows()]


def decode_moebius(value, path: str) -> MoebiusMap:
    rows = _list(value, path, 2)
    entries = []
    for i, row in enumerate(rows):
        for j, e in enumerate(_list(row, f"{path}[{i}]", 2)):
            entries.append(decode_complex(e, f"{path}[{i}][{j}]"))
    try:
        return MoebiusMap(*entries)
    except ZeroDivisionError as exc:
        raise InputError(str(exc), path) from None


def encode_certificate(cert: RealnessCertificate) -> dict:
    out = {"verdict": cert.verdict, "witness": cert.witness}
    if not cert.verdict:
        out["family"] = [encode_poly(f) for f in cert.family]
        out["lhs"] = encode_logvalue(cert.lhs)
        out["rhs"] = encode_logvalue(cert.rhs)
    return out


def decode_certificate(obj, path: str) -> RealnessCertificate:
    _fields(obj, path, ("verdict", "witness"), ("family", "lhs", "rhs", "projection"))
    if obj["verdict"]:
        return RealnessCertificate(True, obj["witness"])
    return RealnessCertificate(
        False,
        obj["witness"],
        tuple(decode_poly(f, f"{path}.family[{i}]") for i, f in enumerate(obj.get("family", []))),
        decode_logvalue(obj.get("lhs"), f"{path}.lhs"),
        decode_logvalue(obj.get("rhs"), f"{path}.rhs"),
    )


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def decode_real_matrix(value, path: str) -> np.ndarray:
    rows = _list(value, path)
    if not rows:
        raise InputError("empty matrix", path)
    out = []
    for i, row in enumerate(rows):
        row = _list(row, f"{path}[{i}]", len(rows))
        for j, v in enumerate(row):
            if not _is_number(v):
                raise InputError("expected a number", f"{path}[{i}][{j}]")
        out.append([float(v) for v in row])
    return np.array(out)


def decode_rep(obj, path: str) -> RepTuple:
    """``{"names": [...], "matrices": [...], "mode": "real" | "exact"}``.

    Without ``mode`` the representation is real when every entry is a JSON
    number and exact otherwise.
    """
    _fields(obj, path, ("names", "matrices"), ("mode",))
    names = _list(obj["names"], f"{path}.names")
    if not all(isinstance(n, str) and n and "'" not in n for n in names):
        raise InputError("generator names must be nonempty strings without quotes", f"{path}.names")
    mats = _list(obj["matrices"], f"{path}.matrices", len(names))
    if not mats:
        raise InputError("need at least one generator", f"{path}.matrices")
    cells = [e for m in mats if isinstance(m, list) for row in m if isinstance(row, list) for e in row]
    mode = obj.get("mode", "real" if all(_is_number(e) for e in cells) else "exact")
    if mode == "real":
        decoded = [decode_real_matrix(m, f"{path}.matrices[{k}]") for k, m in enumerate(mats)]
        if len({m.shape for m in decoded}) != 1:
            raise InputError("generators must have equal size", f"{path}.matrices")
        return RepTuple(list(names), decoded)
    if mode != "exact":
        raise InputError("mode must be 'real' or 'exact'", f"{path}.mode")
    decoded = []
    for k, m in enumerate(mats):
        p = f"{path}.matrices[{k}]"
        rows = _list(m, p)
        decoded.append(
            [
                [decode_literal(e, f"{p}[{i}][{j}]") for j, e in enumerate(_list(row, f"{p}[{i}]", len(rows)))]
                for i, row in enumerate(rows)
            ]
        )
    return RepTuple(list(names), decoded, exact=True)


def encode_rep(rep: RepTuple) -> dict:
    if rep.exact:
        mats = [[[encode_literal(e) for e in row] for row in m] for m in rep.mats]
        return {"names": list(rep.names), "matrices": mats, "mode": "exact"}
    return {
        "names": list(rep.names),
        "matrices": [np.asarray(m).tolist() for m in rep.mats],
        "mode": "real",
    }


def decode_cover_point(obj, path: str) -> CoverPoint:
    _fields(obj, path, ("A",), ("t",))
    A = decode_real_matrix(obj["A"], f"{path}.A")
    t = None
    if "t" in obj:
        t = _list(obj["t"], f"{path}.t", len(A) - 1)
        if not all(_is_number(v) for v in t):
            raise InputError("expected numbers", f"{path}.t")
    try:
        return CoverPoint(A, t)
    except ValueError as exc:
        raise InputError(str(exc), path) from None


def encode_cover_point(p: CoverPoint) -> dict:
    return {"A": p.A.tolist(), "t": p.t.tolist()}


# ---------------------------------------------------------------------------
# real-spectrum points
# ---------------------------------------------------------------------------


def encode_spectrum_point(p: sp.SpectrumLinePoint) -> dict:
    out = {"variant": p.variant}
    if p.u is not None:
        out["u"] = encode_literal(p.u)
    if p.variant == "free_cut":
        out["ladder"] = [encode_literal(a) for a in p.ladder]
        out["budget"] = p.budget
    return out


def decode_spectrum_point(obj, path: str) -> sp.SpectrumLinePoint:
    _fields(obj, path, ("variant",), ("u", "ladder", "budget"))
    variant = obj["variant"]
    if variant not in sp.VARIANTS:
        raise InputError(f"variant must be one of {', '.join(sp.VARIANTS)}", f"{path}.variant")
    u = decode_literal(obj["u"], f"{path}.u") if "u" in obj else None
    ladder = tuple(
        decode_literal(a, f"{path}.ladder[{i}]")
        for i, a in enumerate(_list(obj.get("ladder", []), f"{path}.ladder"))
    )
    budget = obj.get("budget", 3)
    if not isinstance(budget, int) or isinstance(budget, bool):
        raise InputError("budget must be an integer", f"{path}.budget")
    try:
        return sp.SpectrumLinePoint(variant, u, ladder, budget)
    except ValueError as exc:
        raise InputError(str(exc), path) from None


# ---------------------------------------------------------------------------
# job files
# ---------------------------------------------------------------------------


def parse_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, line=exc.lineno, column=exc.colno, offset=exc.pos) from None


def decode_job(doc) -> tuple[str, dict]:
    """Validate a ``{version, command, payload}`` document."""
    _fields(doc, "$", ("version", "command", "payload"))
    if doc["version"] != JOB_VERSION:
        raise InputError(f"unsupported version {doc['version']!r}", "$.version")
    if not isinstance(doc["command"], str):
        raise InputError("command must be a string", "$.command")
    if not isinstance(doc["payload"], dict):
        raise InputError("payload must be an object", "$.payload")
    return doc["command"], doc["payload"]


def encode_job(command: str, payload: dict) -> dict:
    return {"version": JOB_VERSION, "command": command, "payload": payload}


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def locate_line(text: str, value) -> int | None:
    """1-based line of the first occurrence of ``value`` rendered as JSON."""
    needle = json.dumps(value)
    pos = text.find(needle)
    if pos < 0:
        return None
    return text.count("\n", 0, pos) + 1
