import csv
import json
import math
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from harmconv import canonical as C
from harmconv import mapspec
from harmconv.cli import main
from harmconv.errors import SchemaError


def write(tmp_path, doc, name="spec.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


F0 = {"type": "right_halfplane_f0", "order": 8}


class TestMapSpec:
    def test_published_schema_matches(self):
        with open("docs/mapspec.schema.json") as fh:
            assert json.load(fh) == json.loads(json.dumps(mapspec.SCHEMA))
        jsonschema.Draft202012Validator.check_schema(mapspec.SCHEMA)

    def test_f0(self):
        f = mapspec.load(F0)
        assert np.allclose(f.h.coeffs[:4], [0, 1, 1.5, 2])
        assert np.allclose(f.g.coeffs[:4], [0, 0, -0.5, -1])

    def test_bad_a_names_field(self):
        with pytest.raises(SchemaError, match=r"\['a'\]"):
            mapspec.load({"type": "halfplane_member", "a": {"re": 0.8, "im": 0.8}})

    def test_nested_field_path(self):
        doc = {"type": "convolution", "operands": [F0, {"type": "strip_member", "beta": 4.0, "order": 8}]}
        with pytest.raises(SchemaError, match=r"\['operands'\]\[1\]\['beta'\]"):
            mapspec.load(doc)

    def test_unknown_type(self):
        with pytest.raises(SchemaError):
            mapspec.load({"type": "disk"})

    def test_convolution_termwise(self):
        a = {"type": "slanted_halfplane_canonical", "a": {"re": 0.2, "im": 0.1}, "gamma": 0.5}
        b = {"type": "slanted_halfplane_canonical", "a": -0.3, "gamma": 2.0}
        f = mapspec.load({"type": "convolution", "order": 30, "operands": [a, b]})
        fa, fb = mapspec.load(dict(a, order=30)), mapspec.load(dict(b, order=30))
        assert np.allclose(f.h.coeffs, fa.h.coeffs * fb.h.coeffs, rtol=1e-15, atol=0)
        assert np.allclose(f.g.coeffs, fa.g.coeffs * fb.g.coeffs, rtol=1e-15, atol=0)

    def test_round_trip_bit_exact(self):
        doc = {
            "type": "convex_combination",
            "order": 64,
            "weights": [0.3, 0.7],
            "operands": [
                {"type": "f_lambda_delta", "a": {"re": 0.1, "im": -0.2}, "lambda": 2.0, "delta": 0.4,
                 "dilatation": {"kind": "admissible_moebius", "theta": 1.0, "sign": -1}},
                {"type": "f_lambda_delta", "a": {"re": 0.1, "im": -0.2}, "lambda": 2.0, "delta": 0.4},
            ],
        }
        f = mapspec.load(doc)
        text = mapspec.serialize_map(f)
        g = mapspec.load(text)
        assert f.h == g.h and f.g == g.g and f.class_tag == g.class_tag
        assert mapspec.serialize_map(g) == text

    def test_rotation(self):
        f = mapspec.load({"type": "rotation", "mu": math.pi / 2, "operands": [F0]})
        assert f.h[2] == pytest.approx(1.5j)

    def test_constructor_error_context(self):
        doc = {"type": "halfplane_member", "a": 0.3, "dilatation": {"kind": "monomial", "n": 1}}
        with pytest.raises(Exception, match="halfplane_member"):
            mapspec.load(doc)


class TestConstruct:
    def test_stdout(self, tmp_path, capsys):
        code, out, _ = run(["construct", write(tmp_path, F0)], capsys)
        d = json.loads(out)
        assert code == 0
        assert [c[0] for c in d["h"][:4]] == [0, 1, 1.5, 2]
        assert [c[0] for c in d["g"][:4]] == [0, 0, -0.5, -1]

    def test_17_digits(self, tmp_path, capsys):
        spec = {"type": "slanted_halfplane_canonical", "a": {"re": 0.1, "im": 0.2}, "gamma": 1.0, "order": 5}
        _, out, _ = run(["construct", write(tmp_path, spec)], capsys)
        f = mapspec.load(spec)
        assert "%.17g" % f.h[2].real in out

    def test_schema_error_exit(self, tmp_path, capsys):
        code, _, err = run(["construct", write(tmp_path, {"type": "halfplane_member", "a": 1.5})], capsys)
        assert code == 2 and "['a']" in err

    def test_missing_file(self, capsys):
        assert run(["construct", "/nonexistent.json"], capsys)[0] == 2

    def test_atomic_output(self, tmp_path, capsys):
        out = tmp_path / "f.json"
        assert run(["construct", write(tmp_path, F0), "-o", str(out)], capsys)[0] == 0
        assert json.loads(out.read_text())["order"] == 8
        assert [p.name for p in tmp_path.iterdir() if p.name.endswith(".tmp")] == []


class TestCheck:
    def test_f0_passes(self, tmp_path, capsys):
        spec = write(tmp_path, {"type": "right_halfplane_f0"})
        code, out, _ = run(
            ["check", spec, "--check", "univalence", "--check", "convex_direction:0",
             "--check", "membership:halfplane:a=0,gamma=0"], capsys)
        d = json.loads(out)
        assert code == 0 and d["verdict"] == "pass"
        assert d["certificates"][0]["certificate"]["min_real_part"] >= 0

    def test_z_squared_fails(self, tmp_path, capsys):
        spec = write(tmp_path, {"type": "coefficients", "h": [[0, 0], [0, 0], [1, 0]], "g": [[0, 0]] * 3})
        code, out, _ = run(["check", spec, "--check", "convex_direction:0"], capsys)
        assert code == 1 and json.loads(out)["verdict"] == "fail"

    def test_flipped_membership_fails(self, tmp_path, capsys):
        spec = write(tmp_path, {"type": "rotation", "mu": math.pi, "operands": [{"type": "right_halfplane_f0"}]})
        code, out, _ = run(["check", spec, "--check", "membership:halfplane"], capsys)
        assert code == 1

    def test_strip_membership(self, tmp_path, capsys):
        spec = write(tmp_path, {"type": "strip_member", "beta": math.pi / 2,
                                "dilatation": {"kind": "monomial", "n": 1}})
        code, out, _ = run(["check", spec, "--check", "membership:strip:b=0,beta=1.5707963267948966"], capsys)
        assert code == 0

    def test_unknown_check(self, tmp_path, capsys):
        assert run(["check", write(tmp_path, F0), "--check", "shiny"], capsys)[0] == 2

    def test_verdict_recomputable(self, tmp_path, capsys):
        from harmconv.scenarios import recompute_verdict

        spec = write(tmp_path, {"type": "right_halfplane_f0"})
        _, out, _ = run(["check", spec, "--check", "convex_direction:0.5"], capsys)
        d = json.loads(out)
        assert recompute_verdict(d) == d["verdict"]


class TestReproduce:
    def test_list(self, capsys):
        code, out, _ = run(["reproduce", "--list"], capsys)
        assert code == 0 and "th4.3-case1" in out.split()

    def test_unknown(self, capsys):
        assert run(["reproduce", "th9.9"], capsys)[0] == 2

    def test_case1(self, capsys):
        code, out, _ = run(["reproduce", "th4.3-case1", "--a", "0.5", "--a2", "0.2"], capsys)
        d = json.loads(out)
        assert code == 0 and d["verdict"] == "pass"
        assert d["inputs"]["zero_counts"]["zeros_inside"] == 2
        assert d["inputs"]["zero_counts"]["zeros_on_boundary"] == 1

    def test_skipped_precondition(self, capsys):
        code, out, _ = run(["reproduce", "th4.3-case1", "--a", "-0.9", "--a2", "-0.9"], capsys)
        d = json.loads(out)
        assert d["verdict"] == "skipped" and d["reason"]
        assert code == 0

    def test_set_override(self, capsys):
        code, out, _ = run(["reproduce", "th3.4", "--n", "1", "--set", "lambda=1.0",
                            "--grid-radii", "8", "--grid-angles", "64"], capsys)
        d = json.loads(out)
        assert code == 0 and d["inputs"]["lambda"] == 1.0 and d["verdict"] == "pass"


class TestRender:
    def rows(self, path):
        with open(path) as fh:
            return list(csv.DictReader(fh))

    def test_f0(self, tmp_path, capsys):
        svg = tmp_path / "f0.svg"
        code, _, _ = run(["render", write(tmp_path, {"type": "right_halfplane_f0"}), "--out", str(svg)], capsys)
        assert code == 0
        text = svg.read_text()
        assert text.startswith("<?xml") and 'version="1.1"' in text and text.count("<polyline") == 8 + 16
        rows = self.rows(tmp_path / "f0.csv")
        assert list(rows[0]) == ["re_z", "im_z", "re_w", "im_w", "jacobian", "abs_dilatation"]
        assert min(float(r["re_w"]) for r in rows) > -0.5

    def test_strip(self, tmp_path, capsys):
        spec = write(tmp_path, {"type": "strip_member", "beta": math.pi / 2,
                                "dilatation": {"kind": "monomial", "n": 1}})
        svg = tmp_path / "s.svg"
        run(["render", spec, "--out", str(svg), "--rings", "3", "--rays", "4", "--samples", "50"], capsys)
        re = [float(r["re_w"]) for r in self.rows(tmp_path / "s.csv")]
        assert max(abs(x) for x in re) < math.pi / 4

    def test_identity_circles(self, tmp_path, capsys):
        spec = write(tmp_path, {"type": "coefficients", "h": [[0, 0], [1, 0]], "g": [[0, 0], [0, 0]]})
        run(["render", spec, "--out", str(tmp_path / "i.svg"), "--csv", str(tmp_path / "i.csv")], capsys)
        for r in self.rows(tmp_path / "i.csv"):
            assert abs(complex(float(r["re_w"]), float(r["im_w"])) - complex(float(r["re_z"]), float(r["im_z"]))) <= 1e-12


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "harmconv", "reproduce", "--list"], capture_output=True, text=True)
    assert out.returncode == 0 and "th2.1" in out.stdout


def test_bad_flag_exit_code(capsys):
    assert main(["reproduce", "th2.1", "--order", "many"]) == 2
