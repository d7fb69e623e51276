import json

import numpy as np
import pytest

from udesign.cli import main
from udesign.linalg import read_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


# --- zonal ----------------------------------------------------------------------

def test_zonal_print(capsys):
    code, out = run(capsys, "zonal", "print", "--kappa", "4", "--m", "1",
                    "--n", "2")
    assert code == 0
    blob = json.loads(out)
    assert blob["univariate"] == ["1", "-20", "90", "-140", "70"]


def test_zonal_print_bivariate(capsys):
    code, out = run(capsys, "zonal", "print", "--kappa", "1,1", "--m", "2",
                    "--n", "4")
    assert code == 0
    assert "bivariate" in json.loads(out)


def test_zonal_eval(capsys):
    code, out = run(capsys, "zonal", "eval", "--kappa", "1", "--m", "1",
                    "--n", "2", "--y", "0.5")
    assert code == 0
    assert abs(float(out.strip())) < 1e-14


# --- zeros ----------------------------------------------------------------------

def test_zeros_find_univariate(capsys):
    code, out = run(capsys, "zeros", "find", "--kappas", "4", "--m", "1",
                    "--n", "2")
    assert code == 0
    certs = json.loads(out)
    assert len(certs) == 4
    assert all(c["kind"] == "common-zero" for c in certs)


def test_zeros_find_bivariate(capsys):
    code, out = run(capsys, "zeros", "find", "--kappas", "2;1,1", "--m", "2",
                    "--n", "4")
    assert code == 0
    certs = json.loads(out)
    assert len(certs) == 4


def test_zeros_find_no_zero(capsys):
    # Z_1 and Z_2 for m = 1 have disjoint root sets
    code, _ = run(capsys, "zeros", "find", "--kappas", "1;2", "--m", "1",
                  "--n", "2")
    assert code == 1


def test_zeros_find_bad_m(capsys):
    code, _ = run(capsys, "zeros", "find", "--kappas", "1", "--m", "3",
                  "--n", "6")
    assert code == 2


def test_zeros_loci_csv(tmp_path, capsys):
    out_file = tmp_path / "loci.csv"
    code, _ = run(capsys, "zeros", "loci", "--kappas", "2;1,1", "--n", "4",
                  "--grid", "11", "--out", str(out_file))
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0].startswith("y1,y2,")
    assert len(lines) == 1 + 11 * 11


# --- design build / verify / export / sample -------------------------------------

@pytest.fixture(scope="module")
def u2_manifest(tmp_path_factory):
    path = tmp_path_factory.mktemp("designs") / "design_u2.json"
    assert main(["design", "build", "--n", "2", "--out", str(path)]) == 0
    return path


def test_design_build_u1(tmp_path, capsys):
    path = tmp_path / "design_u1.json"
    code, _ = run(capsys, "design", "build", "--n", "1", "--out", str(path))
    assert code == 0
    blob = json.loads(path.read_text())
    assert blob["metadata"]["cardinality"] == "5"


def test_design_build_u2_metadata(u2_manifest):
    blob = json.loads(u2_manifest.read_text())
    md = blob["metadata"]
    assert md["built_cardinality"] == str(5 ** 8)
    assert md["multiplicity_divisor"] == 5 ** 3
    assert md["cardinality"] == str(5 ** 5)
    assert md["phase_shrunk_cardinality"] == str(5 ** 4)
    assert md["phase_classes"] == 5
    assert "recipe" in blob


def test_design_verify_exact(u2_manifest, capsys):
    code, out = run(capsys, "design", "verify", "--manifest", str(u2_manifest),
                    "--mode", "exact")
    assert code == 0
    blob = json.loads(out)
    assert blob["passed"] is True
    assert blob["mode"] == "exact-enumerated"


def test_design_verify_probe(u2_manifest, capsys):
    code, out = run(capsys, "design", "verify", "--manifest", str(u2_manifest),
                    "--mode", "probe", "--probes", "2", "--t", "3")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_design_verify_sampled(u2_manifest, capsys):
    code, out = run(capsys, "design", "verify", "--manifest", str(u2_manifest),
                    "--mode", "sampled", "--samples", "20000")
    assert code == 0
    blob = json.loads(out)
    assert blob["passed"] is True
    assert blob["mode"] == "sampled"


def test_design_export(u2_manifest, tmp_path, capsys):
    out_file = tmp_path / "u2.bin"
    code, _ = run(capsys, "design", "export", "--manifest", str(u2_manifest),
                  "--out", str(out_file))
    assert code == 0
    with open(out_file, "rb") as fh:
        count = 0
        while (g := read_matrix(fh)) is not None:
            assert g.shape == (2, 2)
            count += 1
    assert count == 5 ** 5


def test_design_sample(u2_manifest, tmp_path, capsys):
    out_file = tmp_path / "sample.bin"
    code, _ = run(capsys, "design", "sample", "--manifest", str(u2_manifest),
                  "--count", "7", "--seed", "1", "--out", str(out_file))
    assert code == 0
    with open(out_file, "rb") as fh:
        mats = []
        while (g := read_matrix(fh)) is not None:
            mats.append(g)
    assert len(mats) == 7
    for g in mats:
        assert np.allclose(g @ g.conj().T, np.eye(2), atol=1e-10)


# --- pipeline ---------------------------------------------------------------------

def test_pipeline_u2(tmp_path, capsys):
    code, _ = run(capsys, "pipeline", "--target-n", "2",
                  "--outdir", str(tmp_path), "--samples", "20000")
    assert code == 0
    for n in (1, 2):
        assert (tmp_path / ("design_u%d.json" % n)).exists()
        verdict = json.loads((tmp_path / ("verify_u%d.json" % n)).read_text())
        assert verdict["passed"] is True


# --- bounds -----------------------------------------------------------------------

def test_bounds_u2(capsys):
    code, out = run(capsys, "bounds", "--n", "2", "--m", "1", "--t", "4")
    assert code == 0
    assert str(5 ** 10) in out


def test_bounds_u4(capsys):
    code, out = run(capsys, "bounds", "--n", "4", "--m", "2", "--t", "4")
    assert code == 0
    assert str(5 ** 180) in out


# --- error handling ----------------------------------------------------------------

def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["design", "build", "--n", "3", "--out", "x.json"])
    assert exc.value.code == 2


def test_unknown_manifest_is_error(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    with pytest.raises((SystemExit, OSError)):
        main(["design", "verify", "--manifest", str(missing)])
