import json
import subprocess
import sys

import pytest

from padicprime.cli import main
from padicprime.documents import DocumentError, canonical, digest, loads_document, parse_document


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


POLY = {"prime": 3, "model": {"kind": "polynomial", "coeffs": ["-3", "0", "1"]}}
FAMILY = {"prime": 2, "model": {"kind": "prop214_family", "N": 3, "v_alpha": "1"}}
SERIES = {"prime": 2, "series": {"order": 12, "coeffs": ["0", "0", "1", "1"]}}
PREFIX = {"prime": 2, "model": {"kind": "prefix_tail", "w": ["0", "0", "1", "3", "6"],
                                "tail": {"ratios_increasing_from": 0, "unbounded": True}}}


def test_polygon_rows(tmp_path, capsys):
    code, rep = report(capsys, "polygon", "--input", write(tmp_path, "p.json", POLY),
                       "--t", "-1", "--t", "1")
    assert code == 0
    rows = rep["runs"][0]["results"]["points"]
    assert [r["t"] for r in rows] == ["-1", "1"]
    assert rows[1] == {"part": "subject", "t": "1", "M": "2", "mu": 2, "nu": 2,
                       "in_open_disk": 2, "in_closed_disk": 2, "on_circle": 0}
    assert rep["runs"][0]["results"]["hull"]["subject"]["vertices"] == [[0, "1"], [2, "0"]]


def test_family_hull(tmp_path, capsys):
    code, rep = report(capsys, "polygon", "--input", write(tmp_path, "f.json", FAMILY),
                       "--hull-up-to", "8")
    verts = rep["runs"][0]["results"]["hull"]["subject"]["vertices"]
    assert verts == [[0, "0"], [2, "0"], [4, "2"], [5, "4"], [7, "12"], [8, "18"]]


def test_prefix_warning_row(tmp_path, capsys):
    code, rep = report(capsys, "zeros", "--input", write(tmp_path, "t.json", PREFIX), "--t", "1000")
    assert code == 0
    row = rep["runs"][0]["results"]["points"][0]
    assert row["warning"] == "InsufficientPrefix"
    assert rep["runs"][0]["warnings"][0]["code"] == "InsufficientPrefix"


def test_csv(tmp_path, capsys):
    code, out, _ = run(capsys, "polygon", "--csv", "--input", write(tmp_path, "p.json", POLY),
                       "--t", "0")
    lines = out.splitlines()
    assert lines[0].startswith("input,part,t,M,mu,nu")
    assert lines[1].endswith(",subject,0,0,2,2,2,2,0,")


def test_certify_family_and_quotient(tmp_path, capsys):
    f = write(tmp_path, "f.json", FAMILY)
    assert main(["family", "--N", "3", "--v-alpha", "1", "--v-beta", "2",
                 "--output", str(tmp_path / "q.json")]) == 0
    code, rep = report(capsys, "certify", "--input", f, "--input", str(tmp_path / "q.json"))
    assert code == 0
    first = {(c["verdict"], c["rule"], c["evidence"]) for c in rep["runs"][0]["certificates"]}
    assert first == {("PseudoPrime", "increasing-ratio", "Proved"),
                     ("LeftPrime", "entire-left-prime", "Proved")}
    second = {(c["verdict"], c["rule"], c["evidence"]) for c in rep["runs"][1]["certificates"]}
    assert second == {("PseudoPrime", "dominated-quotient", "Proved")}


def test_certify_over_polynomial(tmp_path, capsys):
    doc = {"prime": 2, "meromorphic": {"numerator": FAMILY["model"],
                                       "denominator": {"kind": "polynomial", "coeffs": ["1", "1"]}}}
    code, rep = report(capsys, "certify", "--input", write(tmp_path, "m.json", doc))
    rules = {c["rule"] for c in rep["runs"][0]["certificates"]}
    assert "ratio-over-poly" in rules


def test_certify_refuses_polynomial(tmp_path, capsys):
    code, rep = report(capsys, "certify", "--input", write(tmp_path, "p.json", POLY))
    assert code == 0
    assert rep["runs"][0]["results"]["refusal"]["code"] == "NotTranscendental"
    assert rep["runs"][0]["certificates"] == []


def test_assume_is_echoed(tmp_path, capsys):
    code, rep = report(capsys, "certify", "--input", write(tmp_path, "f.json", FAMILY),
                       "--assume", "AtMostOneMultipleZeroPerBeta")
    run_ = rep["runs"][0]
    assert rep["command"]["options"]["assume"] == ["AtMostOneMultipleZeroPerBeta:subject"]
    assert run_["results"]["assumed"][0]["evidence"] == "Assumed"
    assert ("Prime", "Assumed") in {(c["verdict"], c["evidence"]) for c in run_["certificates"]}
    assert any(w["code"] == "Assumed" for w in run_["warnings"])


def test_commute_modes(tmp_path, capsys):
    s = write(tmp_path, "s.json", SERIES)
    code, rep = report(capsys, "commute", "--input", s, "--search")
    res = rep["runs"][0]["results"]
    assert res["affine_commutants"] == [{"a": "1", "b": "0"}]
    assert res["corollary"]["outcome"] == "OnlyIdentity"
    assert res["corollary"]["degree_bound"] == 5
    code, rep = report(capsys, "commute", "--input", s, "--P=-1,0")
    residual = rep["runs"][0]["results"]["residual"]
    assert residual["residual_zero"] is False
    assert residual["first_nonzero"] == {"degree": 2, "value": "2"}
    code, rep = report(capsys, "commute", "--build-ord", "2", "--b-shift", "2",
                       "--coeff", "1=1", "--coeff", "2=3", "--order", "16")
    assert code == 0 and rep["runs"][0]["results"]["residual"]["residual_zero"] is True


def test_commute_without_series(tmp_path, capsys):
    code, rep = report(capsys, "commute", "--input", write(tmp_path, "f.json", FAMILY), "--search")
    assert code == 2
    assert rep["runs"][0]["error"]["code"] == "DocumentError"


def test_input_errors(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"prime": 2, "model": {"kind": "polynomial", "coeffs": ["1", "x"]}})
    code, rep = report(capsys, "zeros", "--input", bad, "--t", "0")
    assert code == 2 and rep["runs"][0]["error"]["field"] == "model.coeffs[1]"
    code, rep = report(capsys, "zeros", "--input", write(tmp_path, "j.json", '{"prime": 2,\n'))
    assert code == 2 and rep["runs"][0]["error"]["field"].startswith("line 2")
    code, _, err = run(capsys, "zeros", "--t", "0")
    assert code == 2 and "--input" in err
    with pytest.raises(SystemExit):
        main(["zeros", "--t", "abc"])


@pytest.mark.parametrize("doc, where", [
    ({"prime": 4, "model": FAMILY["model"]}, "prime"),
    ({"prime": 2}, ""),
    ({"prime": 2, "model": FAMILY["model"], "series": SERIES["series"]}, ""),
    ({"prime": 2, "model": {"kind": "spline"}}, "model.kind"),
    ({"prime": 2, "model": {"kind": "prop214_family", "N": 2, "v_alpha": "1"}}, "model"),
    ({"prime": 2, "series": {"order": 1, "coeffs": ["1", "2", "3"]}}, "series.coeffs"),
])
def test_document_validation(doc, where):
    with pytest.raises(DocumentError) as info:
        parse_document(doc)
    assert info.value.where == where


@pytest.mark.parametrize("doc", [POLY, FAMILY, SERIES, PREFIX])
def test_echo_round_trip(tmp_path, capsys, doc):
    code, rep = report(capsys, "zeros", "--input", write(tmp_path, "d.json", doc), "--t", "0")
    echoed = rep["runs"][0]["input"]
    again = loads_document(json.dumps(echoed["document"]))
    assert digest(again) == echoed["digest"]
    assert canonical(again) == canonical(loads_document(json.dumps(doc)))


def test_byte_identical_reports(tmp_path):
    path = write(tmp_path, "f.json", FAMILY)
    cmd = [sys.executable, "-m", "padicprime", "certify", "--input", path, "--scan-to", "200"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and b'"rule": "increasing-ratio"' in first


def test_family_errors(capsys):
    code, _, err = run(capsys, "family", "--N", "3", "--v-alpha", "1", "--v-beta", "1")
    assert code == 2 and "v_alpha < v_beta" in err
