import io
import json
import re
import sys

import pytest
from hypothesis import given

from logcy import cli, emit
from logcy.bridge import build_standard
from logcy.errors import DocumentError
from logcy.fan import det
from logcy.fibration import Fibration, longitude, meridian
from logcy.io import (canonical_dumps, emit_fibration_doc, load_json, parse_fibration_doc,
                      parse_surface, parse_surface_doc, surface_doc)
from logcy.model import corner_blowup, hirzebruch, p2

from conftest import toric_models

P2 = '{"rays":[[1,0],[0,1],[-1,-1]],"interior_blowups":[1,1,1]}'


def run(argv, stdin=""):
    old_in, old_out, old_err = sys.stdin, sys.stdout, sys.stderr
    sys.stdin, sys.stdout, sys.stderr = io.StringIO(stdin), io.StringIO(), io.StringIO()
    try:
        code = cli.main(argv)
        return code, sys.stdout.getvalue(), sys.stderr.getvalue()
    finally:
        sys.stdin, sys.stdout, sys.stderr = old_in, old_out, old_err


def test_parse_examples():
    m = parse_surface(P2)
    assert m == p2((1, 1, 1))
    assert parse_surface('{"rays":[[1,0],[0,1],[-1,-1]]}').m == (0, 0, 0)
    with pytest.raises(DocumentError) as e:
        parse_surface('{"rays":[[1,0],[0,1],[-1,-1]],"interior_blowups":[1]}')
    assert e.value.path == "interior_blowups"


def test_parse_keeps_ray_order():
    m = parse_surface('{"rays":[[0,1],[-1,-1],[1,0]]}')
    assert m.fan.rays == ((0, 1), (-1, -1), (1, 0))


def test_syntax_error_position():
    with pytest.raises(DocumentError) as e:
        load_json('{\n  "rays": [1,\n}')
    assert (e.value.line, e.value.col) == (3, 1)


def test_validation_paths():
    with pytest.raises(DocumentError) as e:
        parse_surface('{"rays":[[1,0],[0,1],[-1,"x"]]}')
    assert e.value.path == "rays[2][1]"
    with pytest.raises(DocumentError) as e:
        parse_surface('{"rays":[[1,0],[0,1],[-1,0],[0,-1],[2,2]]}')
    assert e.value.path.startswith("rays")
    with pytest.raises(DocumentError):
        parse_surface('{"rays":[[1,0],[0,1],[-1,-1]],"interior_blowups":[0,-1,0]}')


def test_fibration_doc():
    f = build_standard(p2())
    doc = emit_fibration_doc(f)
    assert [c["d"] for c in doc["cycles"]] == [[0, 0, 0], [1, 1, 1], [2, 2, 2]]
    text = canonical_dumps(doc)
    g = parse_fibration_doc(text)
    assert g == f and g.labels == f.labels
    assert canonical_dumps(emit_fibration_doc(g)) == text


@given(toric_models(kmax=8))
def test_round_trips_byte_exact(model):
    s = canonical_dumps(surface_doc(model, [f"D{i}" for i in range(model.k)]))
    m2, labels = parse_surface_doc(s)
    assert m2 == model and canonical_dumps(surface_doc(m2, labels)) == s
    f = Fibration(model.k, build_standard(model).cycles, tuple(f"x é {i}" for i in range(len(build_standard(model)))))
    t = canonical_dumps(emit_fibration_doc(f))
    assert canonical_dumps(emit_fibration_doc(parse_fibration_doc(t))) == t


def test_shear_examples():
    assert emit.shear_matrix((1, 0)) == [[1, 1], [0, 1]]
    assert emit.dual_shear_matrix((1, 0)) == [[1, 0], [-1, 1]]


@given(toric_models(kmax=9))
def test_shear_properties(model):
    for v in model.fan.rays:
        assert emit.check_shear(v)
        assert emit.perp_positive(v)
        m = emit.shear_matrix(v)
        for x in [(1, 0), (0, 1), (3, -2)]:
            img = (m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1])
            d = det(v, x)
            assert img == (x[0] + d * v[0], x[1] + d * v[1])
    base = emit.emit_almost_toric(model)
    assert len(base["nodes"]) == model.total_m
    for s in base["shears"]:
        assert s["total_matrix"] == emit.shear_matrix(s["direction"], s["multiplicity"])


def test_p2_emitters():
    base = emit.emit_almost_toric(p2((1, 1, 1)))
    assert len(base["nodes"]) == 3
    hb = emit.emit_handlebody(p2((1, 1, 1)))
    curves = [a["curve"] for a in hb["attaching"]]
    assert curves == [[0, 1], [-1, 0], [1, -1]]
    assert [sum(c[0] for c in curves), sum(c[1] for c in curves)] == [0, 0]
    assert all(a["multiplicity"] == 1 for a in hb["attaching"])


def test_empty_emitters():
    assert emit.emit_almost_toric(p2())["nodes"] == []
    assert emit.emit_handlebody(hirzebruch(2))["attaching"] == []


@given(toric_models(kmax=8, toric=True))
def test_perp_blowup_compatible(model):
    for i in range(model.k):
        big = corner_blowup(model, i)
        slot = 0 if i == model.k - 1 else i + 1
        a, b = emit.perp(model.fan.rays[i]), emit.perp(model.fan.rays[(i + 1) % model.k])
        assert emit.perp(big.fan.rays[slot]) == (a[0] + b[0], a[1] + b[1])


def test_svg_deterministic():
    m = p2((2, 0, 1))
    s = emit.emit_svg(m)
    assert s == emit.emit_svg(m)
    assert s.count('class="node"') == 3 and s.count('class="ray"') == 3
    vb = re.search(r'viewBox="([-\d ]+)"', s).group(1).split()
    assert vb == ["-2", "-1", "5", "3"]


def test_no_floats_in_documents():
    doc = emit.emit_almost_toric(p2((1, 2, 3)))
    assert not re.search(r"\d\.\d", canonical_dumps(doc))


def test_cli_build(tmp_path):
    path = tmp_path / "p2.json"
    path.write_text('{"rays":[[1,0],[0,1],[-1,-1]]}')
    code, out, _ = run(["build", "--in", str(path), "--canonical"])
    assert code == 0
    assert [c["d"] for c in json.loads(out)["cycles"]] == [[0, 0, 0], [1, 1, 1], [2, 2, 2]]
    dest = tmp_path / "out.json"
    assert run(["build", "--in", str(path), "--out", str(dest)])[0] == 0
    assert json.loads(dest.read_text())["k"] == 3


def test_cli_cohomology():
    code, out, _ = run(["cohomology", "--divisor", "2,0,0"], '{"rays":[[1,0],[0,1],[-1,-1]]}')
    assert (code, out) == (0, "6 0 0\n")
    assert run(["cohomology", "--divisor", "a,b"], '{"rays":[[1,0],[0,1],[-1,-1]]}')[0] == 2


@pytest.mark.parametrize("check", ["monodromy", "bridge", "elemtrans", "stab", "all"])
def test_cli_verify(check):
    fa = json.dumps({"rays": [[1, 0], [0, 1], [-1, 2], [0, -1]], "interior_blowups": [0, 1, 0, 0]})
    code, out, _ = run(["verify", check], fa)
    assert code == 0 and json.loads(out)["passed"]


def test_cli_verify_torus():
    assert run(["verify", "torus"], '{"rays":[[1,0],[0,1],[-1,-1]]}')[0] == 0
    assert run(["verify", "torus"], P2)[0] == 2


def test_cli_verify_corpus():
    code, out, _ = run(["verify", "monodromy", "--corpus", "5", "--seed", "3", "--kmax", "8"])
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["models"] == 5 and doc["seed"] == 3


def test_cli_failure_exit(monkeypatch):
    from logcy import bridge
    from logcy.bridge import Certificate
    monkeypatch.setitem(bridge.CHECKS, "monodromy", lambda m: Certificate("monodromy", False, {}, {"x": 1}))
    code, out, _ = run(["verify", "monodromy"], P2)
    assert code == 1 and not json.loads(out)["passed"]


def test_cli_classify_destab():
    doc = '{"rays":[[1,0],[0,1],[-1,3],[0,-1]],"interior_blowups":[1,0,1,0]}'
    code, out, _ = run(["classify"], doc)
    assert code == 0 and json.loads(out)["case"] == "2.b.i"
    code, out, _ = run(["destab"], doc)
    res = json.loads(out)
    assert code == 0 and res["k"] == 1 and res["deleted_nonzero"] is False
    assert run(["classify"], '{"rays":[[1,0],[0,1],[-1,-1]]}')[0] == 2


def test_cli_emit_and_mmp():
    for what in ("base", "handlebody"):
        code, out, _ = run(["emit", what], P2)
        assert code == 0 and json.loads(out)["kind"]
    code, out, _ = run(["emit", "svg"], P2)
    assert code == 0 and out.startswith("<?xml")
    code, out, _ = run(["mmp"], '{"rays":[[1,0],[1,1],[0,1],[-1,-1]]}')
    assert code == 0 and json.loads(out)["minimal"] == "P2"


def test_cli_usage_errors():
    assert run(["frobnicate"])[0] == 2
    assert run(["build"], "{not json")[0] == 2
    assert run(["build"], '{"rays":[[1,0],[0,1],[-1,0],[0,-1],[2,2]]}')[0] == 2
    assert run(["build", "--in", "/nonexistent/x.json"])[0] == 2
    code, _, err = run(["build"], '{\n"rays": [}')
    assert code == 2 and "line 2" in err
