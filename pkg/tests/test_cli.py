import json

import numpy as np
import pytest

import oracles as O
from twyb import cochain as cc
from twyb.cli import main
from twyb.cochain import Cochain, CoefficientModule, TwistParams
from twyb.diagram import STANDARD_TREFOIL_PD, fixture
from twyb.families import (affine_map, cyclic_biquandle, dihedral_quandle, from_quandle,
                           symmetric_group, wada)
from twyb.formats import write_cochain, write_structure, write_triple_points
from twyb.movie import braid_loop, loop_triple_data
from twyb.yb import Twist, YBOperator, make_twisted


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return rc, out, err


def result(out):
    return json.loads(out.split("--- json\n", 1)[1])["result"]


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p
    return put


def test_verify_cyclic3(capsys, files):
    op = cyclic_biquandle(3)
    f = files("c3.yb", write_structure(op, Twist(affine_map(3, 1, 1))))
    rc, out, _ = run(capsys, "verify", f)
    assert rc == 0
    assert "biquandle: yes" in out and "twist: yes" in out
    assert result(out)["biquandle"] is True


def test_verify_corrupted_row(capsys, files):
    op = cyclic_biquandle(3)
    r1 = op.r1.copy()
    r1[0, [0, 1]] = r1[0, [1, 0]]
    f = files("bad.yb", write_structure(YBOperator(r1, op.r2)))
    rc, out, _ = run(capsys, "verify", f)
    assert rc == 1
    assert "ybe: no (witness" in out and len(result(out)["witness"]) == 3


def test_verify_wada_and_bad_twist(capsys, files):
    rc, out, _ = run(capsys, "verify", files("w.yb", write_structure(wada(symmetric_group(3)))))
    assert rc == 0 and "biquandle: yes" in out
    f = files("t.yb", write_structure(cyclic_biquandle(3), Twist(affine_map(3, 2, 0))))
    rc, out, _ = run(capsys, "verify", f)
    assert rc == 1 and "twist: no" in out


def test_twist_op(capsys, files, tmp_path):
    f = files("c3.yb", write_structure(cyclic_biquandle(3), Twist(affine_map(3, 1, 1))))
    out_file = tmp_path / "t1.yb"
    rc, out, _ = run(capsys, "twist-op", f, "--t", 1, "--out", out_file)
    assert rc == 0 and result(out)["ybe"] is True
    assert result(out)["r1"][0] == [2, 0, 1]
    rc, out, _ = run(capsys, "verify", out_file)
    assert rc == 0 and "biquandle: yes" in out


def test_cocycles_matches_oracle(capsys, files):
    op = cyclic_biquandle(2)
    f = files("c2.yb", write_structure(op))
    rc, out, _ = run(capsys, "cocycles", f, "--degree", 2, "--variant", "tbq", "--module", "2,1")
    assert rc == 0
    want = O.brute_force_cocycle_count(op.r1.tolist(), op.r2.tolist(), [0, 1], 0, 2, 1, "coord")
    assert 2 ** sum(1 for _ in result(out)["cocycle_orders"]) == want
    assert "zero cochain is a cocycle: yes" in out
    assert f"dim Z^2 = {want.bit_length() - 1}" in out


def test_cocycles_shift_equal_dims(capsys, files):
    f = files("c3.yb", write_structure(cyclic_biquandle(3), Twist(affine_map(3, 1, 1))))
    dims = []
    for tw in ("0,0,0", "0,1,1", "0,-1,-1"):
        rc, out, _ = run(capsys, "cocycles", f, "--degree", 2, "--module", "5,2", "--twist", tw)
        assert rc == 0
        dims.append([ln for ln in out.splitlines() if ln.startswith("dim")])
    assert dims[0] == dims[1] == dims[2]


def test_cocycles_basis_file_and_composite(capsys, files, tmp_path):
    f = files("c2.yb", write_structure(cyclic_biquandle(2)))
    basis = tmp_path / "basis.txt"
    rc, out, _ = run(capsys, "cocycles", f, "--degree", 2, "--module", "4,1", "--out", basis)
    assert rc == 0 and "dim Z" not in out and "Z^2 = " in out
    assert basis.read_text().startswith("cochain 2 4 1")


def test_homology(capsys, files):
    f = files("c2.yb", write_structure(cyclic_biquandle(2)))
    rc, out, _ = run(capsys, "homology", f, "--degree", 2, "--module", "3,1", "--variant", "td")
    assert rc == 0 and "H_2 =" in out


def test_color_trefoil(capsys, files):
    f = files("d3.yb", write_structure(from_quandle(dihedral_quandle(3))))
    rc, out, _ = run(capsys, "color", "--diagram", STANDARD_TREFOIL_PD, "--structure", f)
    assert rc == 0 and "colorings: 9" in out
    rc2, out2, _ = run(capsys, "color", "--diagram", STANDARD_TREFOIL_PD, "--structure", f,
                       "--brute-force")
    assert result(out2)["colorings"] == result(out)["colorings"]


def _invariant_setup(files):
    tw = make_twisted(from_quandle(dihedral_quandle(3)))
    M = CoefficientModule(3, 1)
    phi = cc.coboundary(tw, TwistParams(0, 0, 1, cc.Variant.TBQ), Cochain(1, 3, 3, [0, 1, 2]), M)
    return files("d3.yb", write_structure(tw.op)), files("phi.txt", write_cochain(phi, M))


def test_invariant_trefoil_and_kink(capsys, files):
    s, c = _invariant_setup(files)
    outs = []
    for name in ("trefoil", "trefoil-RI+"):
        d = files(f"{name}.pd", fixture(name).to_text())
        rc, out, _ = run(capsys, "invariant", "--diagram", d, "--structure", s, "--cocycle", c,
                         "--n", 1, "--normalize-T")
        assert rc == 0
        outs.append([ln for ln in out.splitlines() if ln.startswith("phi")])
    assert outs[0] == outs[1] == ["phi = 9*[0]", "phi up to T = 9*[0]"]
    rc, out, _ = run(capsys, "invariant", "--diagram", "[]", "--structure", s, "--cocycle", c)
    assert "phi = 3*[0]" in out


def test_invariant_rejects_non_cocycle(capsys, files):
    s = files("d3.yb", write_structure(from_quandle(dihedral_quandle(3))))
    c = files("bad.txt", write_cochain(Cochain(2, 3, 3, np.ones(9, dtype=int)), CoefficientModule(3, 1)))
    rc, out, _ = run(capsys, "invariant", "--diagram", STANDARD_TREFOIL_PD, "--structure", s,
                     "--cocycle", c)
    assert rc == 1 and "rejected" in out


def test_invariant_mod_p(capsys, files):
    s, c = _invariant_setup(files)
    rc, out, _ = run(capsys, "invariant", "--diagram", STANDARD_TREFOIL_PD, "--structure", s,
                     "--cocycle", c, "--mod-p", "--numbering", "undefined")
    assert rc == 0 and "phi = 0" in out


def test_surface_invariant(capsys, files):
    tw = make_twisted(cyclic_biquandle(2))
    data = loop_triple_data(tw.op, braid_loop((1, 2, 1, 3, 2, 1)), 4)
    M = CoefficientModule(3, 1)
    p = TwistParams(0, 0, 1, cc.Variant.TBQ)
    psi = Cochain(2, 2, 3, np.where(cc.degenerate_mask(tw, p, 2), 0, [1, 2, 0, 1]))
    theta = cc.coboundary(tw, p, psi, M)
    s = files("c2.yb", write_structure(tw.op))
    t = files("tp.txt", write_triple_points(data))
    c = files("theta.txt", write_cochain(theta, M))
    rc, out, _ = run(capsys, "surface-invariant", "--triples", t, "--structure", s, "--cocycle", c)
    assert rc == 0 and f"phi = {len(data.colorings)}*[0]" in out


def test_extension(capsys, files):
    tw = make_twisted(cyclic_biquandle(2))
    M = CoefficientModule(2, 1)
    zero = files("z.txt", write_cochain(Cochain.zero(2, 2, 2), M))
    s = files("c2.yb", write_structure(tw.op))
    rc, out, _ = run(capsys, "extension", "--structure", s, "--module", "2,1",
                     "--phi1", zero, "--phi2", zero)
    assert rc == 0 and "S is YB: yes" in out and "cocycle: yes" in out


def test_determinism_and_digests(capsys, files):
    s, c = _invariant_setup(files)
    argv = ("invariant", "--diagram", STANDARD_TREFOIL_PD, "--structure", s, "--cocycle", c)
    _, a, _ = run(capsys, *argv)
    _, b, err = run(capsys, *argv)
    assert a == b and "elapsed" in err and "elapsed" not in a
    inputs = json.loads(a.split("--- json\n", 1)[1])["inputs"]
    assert str(s) in inputs and "<inline>" in inputs


@pytest.mark.parametrize("argv", [
    ["verify", "/nonexistent.yb"],
    ["bogus"],
    ["cocycles", "STRUCT", "--degree", "2", "--module", "4,2"],
    ["cocycles", "STRUCT", "--degree", "2", "--twist", "1,2"],
    ["color", "--diagram", "[[1,2,3,4]]", "--structure", "STRUCT"],
    ["verify", "BROKEN"],
])
def test_input_errors_exit_2(capsys, files, argv):
    s = files("c2.yb", write_structure(cyclic_biquandle(2)))
    b = files("broken.yb", "yb 2\nr1 0 9\n")
    argv = [str(s) if a == "STRUCT" else str(b) if a == "BROKEN" else a for a in argv]
    rc, out, err = run(capsys, *argv)
    assert rc == 2 and out == ""
    assert err
