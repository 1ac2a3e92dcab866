"""Command-line front end: ``padicprime <command> [options]``.

Commands
    polygon   Newton polygon vertices plus M, mu, nu and zero counts per t
    zeros     zero counts per t only
    certify   discharge primeness hypotheses and report certificates
    family    emit a document for the closed-form family (or its quotient)
    commute   commutation residual of f with a polynomial, or a commutant search

Reports are JSON with sorted keys and every rational as a string, so equal
inputs give byte-identical output.  Exit status is 0 when the analysis ran
(whatever its outcome), 2 for input or usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .arith import format_rat, parse_rat
from .documents import (
    DocumentError,
    FunctionDoc,
    digest,
    dump_certificate,
    dump_document,
    dump_hypothesis,
    loads_document,
    to_json,
)
from .errors import PadicError, NotTranscendental
from .permutability import (
    AffineMap,
    CounterexampleFound,
    HypothesisNotMet,
    OnlyIdentity,
    build_commuting_pair,
    commute_residual,
    corollary34_check,
    find_affine_commutants,
)
from .polygon import (
    FamilyModel,
    PolyModel,
    PrefixTailModel,
    Transcendental,
    growth_classify,
    max_modulus_log,
    newton_polygon,
)
from .primeness import (
    Evidence,
    Hypothesis,
    Kind,
    MeromorphicModel,
    build_prop214_family,
    check_dominates,
    check_ratio_condition,
    rule_engine,
)
from .series import Poly

EXIT_OK = 0
EXIT_INPUT = 2
DEFAULT_FAMILY_HULL = 32


class UsageError(Exception):
    pass


# -- argument types -------------------------------------------------------------


def _rat_arg(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _assume_arg(text: str) -> tuple[Kind, str]:
    kind, _, target = text.partition(":")
    try:
        k = Kind(kind)
    except ValueError:
        names = ", ".join(k.value for k in Kind)
        raise argparse.ArgumentTypeError(f"unknown hypothesis {kind!r}; expected one of {names}") from None
    target = target or "subject"
    if target not in ("subject", "numerator", "denominator"):
        raise argparse.ArgumentTypeError(f"unknown target {target!r}")
    return k, target


def _coeff_arg(text: str) -> tuple[int, Fraction]:
    k, sep, c = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected k=c, got {text!r}")
    try:
        return int(k), parse_rat(c)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rat_list_arg(text: str) -> list[Fraction]:
    try:
        return [parse_rat(part) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padicprime", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", default=[], metavar="PATH",
                        help="function-spec document (repeatable; '-' reads stdin)")
    common.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--t", action="append", type=_rat_arg, default=[], metavar="RAT",
                      help="log-radius t = log_p r (repeatable)")

    p = sub.add_parser("polygon", parents=[common, grid], help="hull vertices and per-t modulus data")
    p.add_argument("--hull-up-to", type=int, metavar="N",
                   help=f"last index for the hull (default: all known terms, {DEFAULT_FAMILY_HULL} for families)")
    sub.add_parser("zeros", parents=[common, grid], help="zero counts per t")

    c = sub.add_parser("certify", parents=[common], help="primeness certificates")
    c.add_argument("--scan-to", type=int, default=1000, metavar="N")
    c.add_argument("--assume", action="append", type=_assume_arg, default=[], metavar="KIND[:TARGET]",
                   help="inject an Assumed hypothesis (target: subject, numerator or denominator)")

    f = sub.add_parser("family", help="emit a document for the closed-form family")
    f.add_argument("--N", type=int, required=True)
    f.add_argument("--v-alpha", type=_rat_arg, required=True)
    f.add_argument("--v-beta", type=_rat_arg)
    f.add_argument("--prime", type=int, default=2)
    f.add_argument("--part", choices=("quotient", "numerator", "denominator"), default="quotient")
    f.add_argument("--output", metavar="PATH")

    m = sub.add_parser("commute", parents=[common], help="commutation with polynomials")
    m.add_argument("--order", type=int, metavar="K", help="truncation order (default: the series order)")
    how = m.add_mutually_exclusive_group(required=True)
    how.add_argument("--P", type=_rat_list_arg, metavar="A,B", help="affine map x -> A x + B")
    how.add_argument("--P-coeffs", type=_rat_list_arg, metavar="C0,C1,...", help="polynomial coefficients")
    how.add_argument("--search", action="store_true", help="search affine and higher-degree commutants")
    how.add_argument("--build-ord", type=int, metavar="ORD",
                     help="build a commuting pair instead of reading --input")
    m.add_argument("--b-shift", type=_rat_arg, default=Fraction(0))
    m.add_argument("--coeff", action="append", type=_coeff_arg, default=[], metavar="K=C")
    m.add_argument("--prime", type=int, default=2, help="prime for --build-ord")
    m.add_argument("--degree-bound", type=int, default=5)
    return parser


# -- per-input analyses ----------------------------------------------------------


def _parts(doc: FunctionDoc, warnings: list) -> list[tuple[str, object]]:
    if doc.model is not None:
        return [("subject", doc.model)]
    if doc.series is not None:
        warnings.append({"code": "TruncatedSeries",
                         "message": f"series treated as the polynomial of its truncation to order {doc.series.order}"})
        return [("subject", PolyModel(doc.prime, doc.series.to_poly()))]
    return [("numerator", doc.meromorphic.numerator), ("denominator", doc.meromorphic.denominator)]


def _t_rows(part, model, ts, warnings, with_modulus=True):
    rows = []
    for t in ts:
        try:
            pt = max_modulus_log(model, t)
        except PadicError as exc:
            rows.append({"part": part, "t": format_rat(t), "warning": exc.code, "message": str(exc)})
            warnings.append({"code": exc.code, "part": part, "t": format_rat(t), "message": str(exc)})
            continue
        row = {"part": part, "t": format_rat(t), "in_open_disk": pt.mu, "in_closed_disk": pt.nu,
               "on_circle": pt.nu - pt.mu}
        if with_modulus:
            row.update({"M": format_rat(pt.value), "mu": pt.mu, "nu": pt.nu})
        rows.append(row)
    return rows


def run_polygon(doc, args, warnings) -> dict:
    hulls, rows = {}, []
    for part, model in _parts(doc, warnings):
        up_to = args.hull_up_to
        if up_to is None and isinstance(model, FamilyModel):
            up_to = DEFAULT_FAMILY_HULL
        if isinstance(model, PrefixTailModel) and up_to is None:
            warnings.append({"code": "PrefixOnly", "part": part,
                             "message": f"hull covers the known prefix (indices < {model.known_length}) only"})
        try:
            poly = newton_polygon(model, up_to)
            last = up_to if up_to is not None else model.known_length - 1
            hulls[part] = {"up_to": last, "vertices": [[n, format_rat(w)] for n, w in poly.vertices]}
        except PadicError as exc:
            hulls[part] = {"warning": exc.code, "message": str(exc)}
            warnings.append({"code": exc.code, "part": part, "message": str(exc)})
        rows.extend(_t_rows(part, model, args.t, warnings))
    return {"hull": hulls, "points": rows}


def run_zeros(doc, args, warnings) -> dict:
    rows = []
    for part, model in _parts(doc, warnings):
        rows.extend(_t_rows(part, model, args.t, warnings, with_modulus=False))
    return {"points": rows}


def _subject(doc: FunctionDoc, warnings) -> MeromorphicModel:
    if doc.meromorphic is not None:
        return doc.meromorphic
    return MeromorphicModel(_parts(doc, warnings)[0][1])


def run_certify(doc, args, warnings) -> tuple[dict, list]:
    subject = _subject(doc, warnings)
    entire = subject.is_entire
    growth = {"numerator": growth_classify(subject.numerator),
              "denominator": growth_classify(subject.denominator)}
    results: dict = {"entire": entire,
                     "growth": {k: {"class": type(g).__name__, **to_json(vars(g))} for k, g in growth.items()}}
    hyps: list[Hypothesis] = []
    failed = []

    def attempt(name, target, fn):
        try:
            h = fn()
        except PadicError as exc:
            failed.append({"kind": name, "target": target, "reason": f"{exc.code}: {exc}"})
            warnings.append({"code": exc.code, "message": f"{name} on {target}: {exc}"})
            return None
        if h is None:
            failed.append({"kind": name, "target": target, "reason": "condition not met"})
            return None
        h = Hypothesis(h.kind, h.evidence, target, h.data)
        hyps.append(h)
        return h

    parts = [("subject" if entire else "numerator", "numerator", subject.numerator)]
    if not entire:
        parts.append(("denominator", "denominator", subject.denominator))
    transcendental = 0
    for target, part, model in parts:
        if isinstance(growth[part], Transcendental):
            transcendental += 1
            attempt(Kind.RATIO.value, target, lambda m=model: check_ratio_condition(m, args.scan_to))
    if not entire and transcendental == 2:
        attempt(Kind.DOMINATES.value, "subject",
                lambda: check_dominates(subject.numerator, subject.denominator))

    assumed = []
    for kind, target in args.assume:
        h = Hypothesis(kind, Evidence.ASSUMED, target, {"source": "--assume"})
        hyps.append(h)
        assumed.append(dump_hypothesis(h))
        warnings.append({"code": "Assumed",
                         "message": f"ASSUMED {kind.value} on {target}: declared by the user, not verified"})
    results["hypotheses"] = [dump_hypothesis(h) for h in hyps]
    results["failed"] = failed
    results["assumed"] = assumed

    try:
        certs = rule_engine(subject, hyps)
    except NotTranscendental as exc:
        results["refusal"] = {"code": exc.code, "message": str(exc)}
        return results, []
    for c in certs:
        if c.evidence < Evidence.PROVED:
            warnings.append({"code": "EvidenceDowngrade",
                             "message": f"{c.verdict.value} via {c.rule} rests on {c.evidence} evidence"})
    return results, [dump_certificate(c) for c in certs]


def _residual_report(f, P, order) -> dict:
    res = commute_residual(f, P, order)
    poly = P.as_poly() if isinstance(P, AffineMap) else P
    out = {"P": to_json(poly), "order": order, "residual_zero": res.is_zero()}
    first = res.first_nonzero()
    if first is not None:
        out["first_nonzero"] = {"degree": first[0], "value": format_rat(first[1])}
    return out


def _outcome(result) -> dict:
    if isinstance(result, OnlyIdentity):
        return {"outcome": "OnlyIdentity", "degree_bound": result.degree_bound, "order": result.order,
                "pair": list(result.pair), "excluded_iterates": [to_json(P) for P in result.excluded]}
    if isinstance(result, CounterexampleFound):
        P = result.commutant
        P = P.as_poly() if isinstance(P, AffineMap) else P
        return {"outcome": "CounterexampleFound", "commutant": to_json(P),
                "degree_bound": result.degree_bound, "order": result.order}
    assert isinstance(result, HypothesisNotMet)
    return {"outcome": "HypothesisNotMet", "reason": result.reason, "support": list(result.support)}


def run_commute(doc, args, warnings) -> dict:
    if doc.series is None:
        raise DocumentError(doc.section, "commute needs a document with a series section")
    f = doc.series
    order = args.order if args.order is not None else f.order
    if f.truncation_sensitive:
        warnings.append({"code": "TruncationSensitive", "message": "series coefficients depend on an unknown tail"})
    results: dict = {"order": order}
    if args.search:
        results["affine_commutants"] = [{"a": format_rat(P.a), "b": format_rat(P.b)}
                                        for P in find_affine_commutants(f, order)]
        results["corollary"] = _outcome(corollary34_check(f, order, args.degree_bound))
        warnings.append({"code": "Bounded",
                         "message": f"search is exhaustive only up to degree {args.degree_bound} at order {order}"})
        return results
    P = AffineMap(*args.P) if args.P is not None else Poly(args.P_coeffs)
    if isinstance(P, AffineMap) and len(args.P) != 2:
        raise UsageError("--P takes exactly two rationals A,B")
    results["residual"] = _residual_report(f, P, order)
    return results


# -- driver ----------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _options(args) -> dict:
    skip = {"command", "input", "output", "fmt"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None or v == [] or v is False:
            continue
        if k == "assume":
            v = [f"{kind.value}:{target}" for kind, target in v]
        elif k == "coeff":
            v = {str(key): format_rat(c) for key, c in v}
        out[k] = to_json(v)
    return out


def _run_one(name, doc, args):
    warnings: list = []
    certificates: list = []
    if name == "polygon":
        results = run_polygon(doc, args, warnings)
    elif name == "zeros":
        results = run_zeros(doc, args, warnings)
    elif name == "certify":
        results, certificates = run_certify(doc, args, warnings)
    else:
        results = run_commute(doc, args, warnings)
    return results, certificates, warnings


def _built_pair_doc(args) -> FunctionDoc:
    if args.order is None:
        raise UsageError("--build-ord needs --order")
    P, f = build_commuting_pair(args.build_ord, args.b_shift, dict(args.coeff), args.order, args.prime)
    return FunctionDoc(f.prime, series=f, metadata={"name": "commuting pair",
                                                    "P": {"a": format_rat(P.a), "b": format_rat(P.b)}}), P


def _run_inputs(args) -> tuple[list, bool]:
    runs, bad = [], False
    if args.command == "commute" and args.build_ord is not None:
        try:
            doc, P = _built_pair_doc(args)
        except (PadicError, UsageError) as exc:
            return [{"input": {"path": "<built>"}, "error": _error(exc)}], True
        entry = {"input": {"path": "<built>", "digest": digest(doc), "document": dump_document(doc)},
                 "certificates": [], "warnings": []}
        entry["results"] = {"order": args.order, "residual": _residual_report(doc.series, P, args.order)}
        return [entry], False
    if not args.input:
        raise UsageError("at least one --input is required")
    for path in args.input:
        entry: dict = {"input": {"path": path}}
        try:
            doc = loads_document(_read(path))
        except OSError as exc:
            entry["error"] = {"code": "InputError", "message": str(exc)}
            runs.append(entry)
            bad = True
            continue
        except DocumentError as exc:
            entry["error"] = _error(exc)
            runs.append(entry)
            bad = True
            continue
        entry["input"].update({"digest": digest(doc), "document": dump_document(doc)})
        try:
            results, certificates, warnings = _run_one(args.command, doc, args)
        except (DocumentError, UsageError) as exc:
            entry["error"] = _error(exc)
            bad = True
        except PadicError as exc:
            # e.g. OrderTooLow: the request cannot be answered from this input
            entry["error"] = _error(exc)
            bad = True
        else:
            entry.update({"results": results, "certificates": certificates, "warnings": warnings})
        runs.append(entry)
    return runs, bad


def _error(exc) -> dict:
    out = {"code": getattr(exc, "code", "UsageError"), "message": str(exc)}
    if isinstance(exc, DocumentError) and exc.where:
        out["field"] = exc.where
    return out


def _csv(runs) -> str:
    buf = io.StringIO()
    cols = ["input", "part", "t", "M", "mu", "nu", "in_open_disk", "in_closed_disk", "on_circle", "warning"]
    writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for run in runs:
        for row in run.get("results", {}).get("points", []):
            writer.writerow({"input": run["input"]["path"], **row})
    return buf.getvalue()


def _family_doc(args) -> dict:
    if args.part == "numerator" and args.v_beta is None:
        f = FamilyModel(args.prime, args.N, args.v_alpha)
        return dump_document(FunctionDoc(args.prime, model=f))
    if args.v_beta is None:
        raise UsageError(f"--part {args.part} needs --v-beta")
    f, g = build_prop214_family(args.N, args.v_alpha, args.v_beta, args.prime)
    meta = {"name": "closed-form family", "N": args.N,
            "v_alpha": format_rat(args.v_alpha), "v_beta": format_rat(args.v_beta)}
    if args.part == "quotient":
        return dump_document(FunctionDoc(args.prime, meromorphic=MeromorphicModel(f, g), metadata=meta))
    model = f if args.part == "numerator" else g
    return dump_document(FunctionDoc(args.prime, model=model, metadata=meta))


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "family":
            text = json.dumps(_family_doc(args), sort_keys=True, indent=2) + "\n"
            _emit(text, args.output)
            return EXIT_OK
        if args.fmt == "csv" and args.command not in ("polygon", "zeros"):
            raise UsageError("--csv applies to polygon and zeros only")
        runs, bad = _run_inputs(args)
    except (UsageError, PadicError) as exc:
        print(f"padicprime {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {"command": {"name": args.command, "options": _options(args)}, "runs": runs}
    if args.fmt == "csv":
        text = _csv(runs)
    else:
        text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    _emit(text, args.output)
    for run in runs:
        if "error" in run:
            print(f"padicprime {args.command}: {run['input']['path']}: {run['error']['message']}",
                  file=sys.stderr)
    return EXIT_INPUT if bad else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
