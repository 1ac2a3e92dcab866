"""Function-spec documents and JSON encoding of results.

A document names one function over one prime::

    {"prime": 2, "model": {"kind": "prop214_family", "N": 3, "v_alpha": "1"}}
    {"prime": 5, "series": {"order": 8, "coeffs": ["0", "1", "-1/2"]}}
    {"prime": 3, "meromorphic": {"numerator": {...}, "denominator": {...}}}

with an optional free-form ``metadata`` object.  Every rational is a
``"num/den"`` string; ``"inf"`` marks a vanishing coefficient in valuation
lists.  :func:`canonical` gives the normalized form that reports echo and
digest, so parsing an echo reproduces the digest.
"""
from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .arith import _Infinity, check_prime, format_ext, format_rat, parse_ext, parse_rat
from .errors import InvalidPrime, PadicError
from .polygon import (
    CoefficientModel,
    FamilyModel,
    ListModel,
    PolyModel,
    PrefixTailModel,
    TailCertificate,
)
from .primeness import Certificate, Hypothesis, MeromorphicModel
from .series import Poly, TruncatedSeries

MODEL_KINDS = ("polynomial", "valuation_list", "prefix_tail", "prop214_family")


class DocumentError(PadicError, ValueError):
    """A malformed document; ``where`` locates the offending field."""
    code = "DocumentError"

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass(frozen=True)
class FunctionDoc:
    prime: int
    model: CoefficientModel | None = None
    series: TruncatedSeries | None = None
    meromorphic: MeromorphicModel | None = None
    metadata: dict | None = None

    @property
    def section(self) -> str:
        if self.model is not None:
            return "model"
        return "series" if self.series is not None else "meromorphic"


# -- parsing ------------------------------------------------------------------


def _field(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise DocumentError(where, "expected an object")
    if key not in obj:
        raise DocumentError(f"{where}.{key}" if where else key, "missing field")
    value = obj[key]
    if kind is not None and (not isinstance(value, kind) or isinstance(value, bool)):
        raise DocumentError(f"{where}.{key}" if where else key,
                            f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _rat(value, where) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(where, f"expected a rational string, got {value!r}")
    try:
        return parse_rat(value) if isinstance(value, str) else Fraction(value)
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from None


def _ext(value, where):
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return parse_ext(value)
    return _rat(value, where)


def _rat_list(values, where, ext=False) -> list:
    if not isinstance(values, list):
        raise DocumentError(where, "expected a list")
    conv = _ext if ext else _rat
    return [conv(v, f"{where}[{i}]") for i, v in enumerate(values)]


def _guard(where, build):
    try:
        return build()
    except DocumentError:
        raise
    except (PadicError, ValueError, TypeError) as exc:
        raise DocumentError(where, str(exc)) from None


def parse_model(obj, prime: int, where: str = "model") -> CoefficientModel:
    kind = _field(obj, "kind", where, str)
    if kind == "polynomial":
        coeffs = _rat_list(_field(obj, "coeffs", where), f"{where}.coeffs")
        return _guard(where, lambda: PolyModel(prime, Poly(coeffs)))
    if kind == "valuation_list":
        ws = _rat_list(_field(obj, "w", where), f"{where}.w", ext=True)
        return _guard(where, lambda: ListModel(prime, tuple(ws)))
    if kind == "prefix_tail":
        ws = _rat_list(_field(obj, "w", where), f"{where}.w", ext=True)
        tail = _field(obj, "tail", where, dict)
        n0 = _field(tail, "ratios_increasing_from", f"{where}.tail", int)
        unbounded = _field(tail, "unbounded", f"{where}.tail")
        if not isinstance(unbounded, bool):
            raise DocumentError(f"{where}.tail.unbounded", "expected true or false")
        return _guard(where, lambda: PrefixTailModel(prime, tuple(ws), TailCertificate(n0, unbounded)))
    if kind == "prop214_family":
        N = _field(obj, "N", where, int)
        va = _rat(_field(obj, "v_alpha", where), f"{where}.v_alpha")
        return _guard(where, lambda: FamilyModel(prime, N, va))
    raise DocumentError(f"{where}.kind", f"unknown kind {kind!r}; expected one of {', '.join(MODEL_KINDS)}")


def parse_series(obj, prime: int, where: str = "series") -> TruncatedSeries:
    if isinstance(obj, dict) and "prime" in obj and obj["prime"] != prime:
        raise DocumentError(f"{where}.prime", f"{obj['prime']!r} differs from the document prime {prime}")
    order = _field(obj, "order", where, int)
    coeffs = _rat_list(_field(obj, "coeffs", where), f"{where}.coeffs")
    if order < 0 or len(coeffs) > order + 1:
        raise DocumentError(f"{where}.coeffs", f"{len(coeffs)} coefficients do not fit order {order}")
    return _guard(where, lambda: TruncatedSeries.from_coeffs(prime, coeffs, order))


def parse_document(obj) -> FunctionDoc:
    if not isinstance(obj, dict):
        raise DocumentError("", "a document must be a JSON object")
    unknown = set(obj) - {"prime", "model", "series", "meromorphic", "metadata"}
    if unknown:
        raise DocumentError(sorted(unknown)[0], "unknown field")
    prime = _field(obj, "prime", "", int)
    try:
        check_prime(prime)
    except InvalidPrime as exc:
        raise DocumentError("prime", str(exc)) from None
    present = [k for k in ("model", "series", "meromorphic") if k in obj]
    if len(present) != 1:
        raise DocumentError("", "exactly one of model, series, meromorphic is required"
                            f" (found {present or 'none'})")
    metadata = obj.get("metadata")
    if metadata is not None and not isinstance(metadata, dict):
        raise DocumentError("metadata", "expected an object")
    section = present[0]
    if section == "model":
        return FunctionDoc(prime, model=parse_model(obj["model"], prime), metadata=metadata)
    if section == "series":
        return FunctionDoc(prime, series=parse_series(obj["series"], prime), metadata=metadata)
    mero = obj["meromorphic"]
    num = parse_model(_field(mero, "numerator", "meromorphic"), prime, "meromorphic.numerator")
    den = None
    if isinstance(mero, dict) and mero.get("denominator") is not None:
        den = parse_model(mero["denominator"], prime, "meromorphic.denominator")
    subject = _guard("meromorphic", lambda: MeromorphicModel(num, den))
    return FunctionDoc(prime, meromorphic=subject, metadata=metadata)


def loads_document(text: str) -> FunctionDoc:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    return parse_document(obj)


# -- dumping -------------------------------------------------------------------


def dump_model(model: CoefficientModel) -> dict:
    if isinstance(model, PolyModel):
        return {"kind": "polynomial", "coeffs": [format_rat(c) for c in model.poly.coeffs]}
    if isinstance(model, ListModel):
        return {"kind": "valuation_list", "w": [format_ext(v) for v in model.w_list]}
    if isinstance(model, PrefixTailModel):
        return {"kind": "prefix_tail", "w": [format_ext(v) for v in model.w_list],
                "tail": {"ratios_increasing_from": model.tail.ratios_increasing_from,
                         "unbounded": model.tail.unbounded}}
    if isinstance(model, FamilyModel):
        return {"kind": "prop214_family", "N": model.N, "v_alpha": format_rat(model.v_alpha)}
    raise TypeError(f"cannot serialize {type(model).__name__}")


def dump_series(s: TruncatedSeries) -> dict:
    return {"prime": s.prime, "order": s.order, "coeffs": [format_rat(c) for c in s.coeffs]}


def dump_document(doc: FunctionDoc) -> dict:
    out: dict[str, Any] = {"prime": doc.prime}
    if doc.model is not None:
        out["model"] = dump_model(doc.model)
    elif doc.series is not None:
        out["series"] = dump_series(doc.series)
    else:
        out["meromorphic"] = {"numerator": dump_model(doc.meromorphic.numerator),
                              "denominator": dump_model(doc.meromorphic.denominator)}
    if doc.metadata is not None:
        out["metadata"] = doc.metadata
    return out


def canonical(doc: FunctionDoc) -> str:
    return json.dumps(dump_document(doc), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(doc: FunctionDoc) -> str:
    return "sha256:" + hashlib.sha256(canonical(doc).encode("utf-8")).hexdigest()


# -- results -------------------------------------------------------------------


def to_json(value):
    """Plain JSON data for results: rationals become strings, enums their names."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, enum.Enum):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, _Infinity)):
        return format_ext(value)
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    if isinstance(value, Poly):
        return [format_rat(c) for c in value.coeffs]
    if isinstance(value, TruncatedSeries):
        return dump_series(value)
    raise TypeError(f"no JSON form for {type(value).__name__}")


def dump_hypothesis(h: Hypothesis) -> dict:
    return {"kind": str(h.kind), "evidence": str(h.evidence), "target": h.target,
            "data": to_json(h.data)}


def dump_certificate(c: Certificate) -> dict:
    return {"verdict": str(c.verdict), "rule": c.rule, "evidence": str(c.evidence),
            "hypotheses": [dump_hypothesis(h) for h in c.hypotheses]}


__all__ = [
    "DocumentError", "FunctionDoc", "MODEL_KINDS", "parse_model", "parse_series",
    "parse_document", "loads_document", "dump_model", "dump_series", "dump_document",
    "canonical", "digest", "to_json", "dump_hypothesis", "dump_certificate",
]
