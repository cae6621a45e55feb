"""Command-line interface: exit codes, determinism, file outputs."""

import json
import os

from curvezeta.cli import main

CUSP = ["-f", "y^2-x^3"]


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_resolve_smoke(capsys):
    code, out, err = run(capsys, ["resolve", *CUSP])
    assert code == 0 and err == ""
    assert "blow-ups: 3" in out
    assert "N=(6,), nu=5" in out


def test_resolve_writes_reports(capsys, tmp_path):
    outdir = str(tmp_path / "res")
    code, out, _ = run(capsys, ["resolve", *CUSP, "-o", outdir])
    assert code == 0
    names = sorted(os.listdir(outdir))
    assert names == ["divisors.csv", "dual_graph.png", "graph.dot", "graph.json"]


def test_export_graph_roundtrip(capsys, tmp_path):
    path = str(tmp_path / "cusp.json")
    code, _, _ = run(capsys, ["export-graph", *CUSP, "-o", path])
    assert code == 0
    code, direct, _ = run(capsys, ["zeta", *CUSP, "-p", "7"])
    assert code == 0
    code, loaded, _ = run(capsys, ["zeta", "--graph", path, "-p", "7"])
    assert code == 0
    assert direct == loaded


def test_zeta_output_is_deterministic(capsys):
    runs = [
        run(capsys, ["zeta", *CUSP, "-p", "7", "--chi-all"]) for _ in range(2)
    ]
    assert runs[0] == runs[1]
    assert runs[0][0] == 0


def test_zeta_writes_files(capsys, tmp_path):
    outdir = str(tmp_path / "zeta")
    code, _, _ = run(capsys, ["zeta", *CUSP, "-p", "7", "-o", outdir])
    assert code == 0
    assert sorted(os.listdir(outdir)) == ["zeta_chi0.csv", "zeta_chi0.json"]
    with open(os.path.join(outdir, "zeta_chi0.json")) as handle:
        payload = json.load(handle)
    assert payload["p"] == 7


def test_poles_listing(capsys):
    code, out, _ = run(capsys, ["poles", *CUSP, "-p", "7"])
    assert code == 0
    assert "6*s + 5 = 0" in out
    assert "s + 1 = 0" in out
    assert "holomorphic: False" in out


def test_poles_files(capsys, tmp_path):
    outdir = str(tmp_path / "poles")
    code, _, _ = run(capsys, ["poles", *CUSP, "-p", "7", "--chi", "3", "-o", outdir])
    assert code == 0
    assert sorted(os.listdir(outdir)) == ["poles_chi3.csv", "poles_chi3.png"]


def test_monodromy_command(capsys, tmp_path):
    outdir = str(tmp_path / "mono")
    code, out, _ = run(capsys, ["monodromy", *CUSP, "-o", outdir])
    assert code == 0
    assert "zeta factors" in out
    assert "net=+1" in out and "net=-1" in out
    assert os.path.exists(os.path.join(outdir, "monodromy.json"))


def test_monodromy_at_smooth_point(capsys):
    code, out, _ = run(capsys, ["monodromy", "-f", "x", "--point", "0,5"])
    assert code == 0
    assert "base point: (0,5)" in out


def test_check_conjectures(capsys, tmp_path):
    outdir = str(tmp_path / "conj")
    code, out, _ = run(
        capsys, ["check-conjectures", *CUSP, "-p", "7", "--chi-all", "-o", outdir]
    )
    assert code == 0
    assert "overall: verified" in out
    assert os.path.exists(os.path.join(outdir, "conjectures.json"))


def test_oracle_verify_and_shards(capsys, tmp_path):
    base = ["oracle-verify", "-f", "x", "-p", "5", "-B", "2"]
    code, out, _ = run(capsys, base)
    assert code == 0
    assert "equal on all 3 coefficients" in out
    code, sharded, _ = run(capsys, [*base, "--shards", "3"])
    assert code == 0
    assert sharded == out
    outdir = str(tmp_path / "oracle")
    code, _, _ = run(capsys, [*base, "-o", outdir])
    assert code == 0
    assert sorted(os.listdir(outdir)) == [
        "coefficients_chi0.csv",
        "coefficients_chi0.png",
    ]


def test_table_weight_matches_origin_class(capsys, tmp_path):
    table = tmp_path / "phi.json"
    table.write_text(json.dumps({"0,0": 1}))
    code, origin, _ = run(
        capsys, ["zeta", *CUSP, "-p", "7", "--phi", "origin-class"]
    )
    assert code == 0
    code, tabled, _ = run(
        capsys, ["zeta", *CUSP, "-p", "7", "--phi", f"table={table}"]
    )
    assert code == 0
    pick = lambda text: [l for l in text.splitlines() if "Z" in l]
    assert pick(origin) == pick(tabled)


def test_usage_errors_exit_two(capsys):
    code, _, err = run(capsys, ["zeta", "-p", "7"])
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, ["resolve", "-f", "x +* y"])
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, ["zeta", *CUSP, "-p", "7", "--phi", "nonsense"])
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, ["zeta", *CUSP, "-p", "7", "--chi", "1,2"])
    assert code == 2 and "error:" in err


def test_nonrational_center_exit_three(capsys):
    code, _, err = run(capsys, ["resolve", "-f", "(x^2-2)*y"])
    assert code == 3
    assert "non-rational" in err


def test_bad_prime_exit_four(capsys):
    code, _, err = run(capsys, ["zeta", *CUSP, "-p", "2"])
    assert code == 4 and "bad prime" in err
    code, _, err = run(capsys, ["zeta", *CUSP, "-p", "9"])
    assert code == 4


def test_domain_error_exit_five(capsys, tmp_path):
    missing = str(tmp_path / "absent.json")
    code, _, err = run(capsys, ["zeta", "--graph", missing, "-p", "7"])
    assert code == 5 and "error:" in err
