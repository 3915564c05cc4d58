import cmath
import json
import math

import pytest

from sysbound import bounds
from sysbound.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def matrix_json(a, b, c, d):
    return json.dumps([[z.real, z.imag] for z in (complex(a), complex(b), complex(c), complex(d))])


# ---------------------------------------------------------------------------
# bound
# ---------------------------------------------------------------------------

def test_bound_closed_link_zero(capsys):
    code, out, _ = run(capsys, ["bound", "closed-link", "--volume", "0", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert float(payload["bound"]) == pytest.approx(7.35663, abs=1e-4)
    assert float(payload["profile"]["Vc"]) == 0
    assert "crossing" in payload["profile"]


def test_bound_cusped_small_volume(capsys):
    code, out, _ = run(capsys, ["bound", "cusped", "--volume", "1", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["bound"] == "7.3553436809554675"
    assert float(payload["profile"]["Vc"]) == pytest.approx(bounds.CUSP_DENSITY_BOUND)
    assert "crossing" not in payload["profile"]


def test_bound_cusped_large_volume(capsys):
    code, out, _ = run(capsys, ["bound", "cusped", "--volume", "1e6", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert float(payload["bound"]) == pytest.approx(
        math.log(2 * (bounds.CUSP_DENSITY_BOUND * 1e6) ** (4 / 3) + 8), rel=1e-12
    )


def test_bound_cusped_rejects_zero_volume(capsys):
    code, _, err = run(capsys, ["bound", "cusped", "--volume", "0"])
    assert code == 2
    assert "usage error" in err


def test_bound_csv_and_human(capsys):
    code, out, _ = run(capsys, ["bound", "closed-link", "--volume", "2", "--format", "csv"])
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.startswith("kind,bound,V,Vc")
    assert row.startswith("closed-link,")
    code, out, _ = run(capsys, ["bound", "closed-link", "--volume", "2"])
    assert code == 0
    assert "systole bound (closed-link)" in out


# ---------------------------------------------------------------------------
# element
# ---------------------------------------------------------------------------

def test_element_classify_parabolic(capsys):
    code, out, _ = run(capsys, ["element", "classify", "--matrix", matrix_json(1, 1, 0, 1)])
    assert code == 0
    assert out.strip() == "parabolic"


def test_element_length_of_worst_case_trace(capsys):
    t = complex(2, (2 * math.pi) ** 2)
    lam = (t + cmath.sqrt(t * t - 4)) / 2
    code, out, _ = run(
        capsys,
        ["element", "length", "--matrix", matrix_json(lam, 0, 0, 1 / lam), "--format", "json"],
    )
    assert code == 0
    assert float(json.loads(out)["length"]) == pytest.approx(7.35534, abs=1e-5)


def test_element_length_rejects_parabolic(capsys):
    code, _, err = run(capsys, ["element", "length", "--matrix", matrix_json(1, 1, 0, 1)])
    assert code == 1
    assert "parabolic" in err


def test_element_sphere(capsys):
    code, out, _ = run(
        capsys, ["element", "sphere", "--matrix", matrix_json(0, -1, 1, 0), "--format", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["center"] == ["0", "0"]
    assert payload["radius"] == "1"


def test_element_sphere_rejects_upper_triangular(capsys):
    code, _, err = run(capsys, ["element", "sphere", "--matrix", matrix_json(1, 1, 0, 1)])
    assert code == 1
    assert "infinity" in err


def test_element_malformed_matrix(capsys):
    code, _, err = run(capsys, ["element", "classify", "--matrix", "[[1,0],[1,0]]"])
    assert code == 2
    code, _, err = run(capsys, ["element", "classify", "--matrix", "not json"])
    assert code == 2
    code, _, err = run(capsys, ["element", "classify", "--matrix", matrix_json(1, 1, 1, 1)])
    assert code == 2  # singular


def test_unknown_command_exits_two(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["bogus"])
    assert excinfo.value.code == 2
    capsys.readouterr()


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

def test_lattice_reduce(capsys):
    code, out, _ = run(capsys, ["lattice", "reduce", "--lattice", "[[1,0],[3.5,2]]", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["ell"] == "1"
    assert payload["z"] == ["0.5", "2"]
    assert payload["area"] == "2"


def test_lattice_waist_and_diameter(capsys):
    code, out, _ = run(capsys, ["lattice", "waist", "--lattice", "[[1,0],[0,1]]", "--format", "json"])
    assert code == 0
    assert json.loads(out)["waist"] == "1"
    code, out, _ = run(capsys, ["lattice", "diameter", "--lattice", "[[1,0],[0,1]]", "--format", "json"])
    assert code == 0
    assert float(json.loads(out)["diameter"]) == pytest.approx(math.sqrt(2) / 2)


def test_lattice_degenerate(capsys):
    code, _, err = run(capsys, ["lattice", "waist", "--lattice", "[[1,0],[2,0]]"])
    assert code == 1
    assert "degenerate" in err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

VERIFY_FAST = [
    "verify", "techlem2",
    "--vc-min", "17.1", "--vc-max", "100", "--vc-points", "4", "--ell-points", "50",
]


def test_verify_techlem2_fast(capsys):
    code, out, _ = run(capsys, VERIFY_FAST + ["--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["claim_id"] == "techlem2"
    assert payload["status"] == "pass"
    assert payload["points_checked"] == 200
    assert float(payload["worst_margin"]) > 0


def test_verify_output_byte_stable(capsys):
    _, out1, _ = run(capsys, VERIFY_FAST + ["--format", "json"])
    _, out2, _ = run(capsys, VERIFY_FAST + ["--format", "json"])
    assert out1 == out2
    _, csv1, _ = run(capsys, VERIFY_FAST + ["--format", "csv"])
    _, csv2, _ = run(capsys, VERIFY_FAST + ["--format", "csv"])
    assert csv1 == csv2
    assert csv1.splitlines()[0] == "claim_id,status,worst_margin,worst_point,points_checked"


def test_verify_crossing_and_exit_code_on_fail(capsys):
    code, out, _ = run(
        capsys,
        ["verify", "crossing", "--v-min", "0.5", "--v-max", "50", "--points", "5",
         "--monotonic-samples", "50", "--format", "json"],
    )
    assert code == 0
    assert json.loads(out)["status"] == "pass"
    code, out, _ = run(
        capsys,
        ["verify", "crossing", "--v-min", "0.5", "--v-max", "50", "--points", "3",
         "--monotonic-samples", "50", "--rel-tol", "1e-18", "--format", "json"],
    )
    assert code == 1
    assert json.loads(out)["status"] == "fail"


def test_verify_length_lemma_seed_in_claim(capsys):
    code, out, _ = run(
        capsys,
        ["verify", "length-lemma", "--samples", "500", "--r-max", "30", "--seed", "9",
         "--sharpness-points", "50", "--format", "json"],
    )
    assert code == 0
    assert json.loads(out)["claim_id"] == "length-lemma:seed=9"


def test_verify_cubic_human(capsys):
    code, out, _ = run(capsys, ["verify", "cubic", "--vc-min", "2", "--vc-max", "100", "--vc-points", "5"])
    assert code == 0
    assert out.startswith("cubic: PASS")


def test_verify_margins_csv(tmp_path, capsys):
    path = tmp_path / "margins.csv"
    code, _, _ = run(capsys, VERIFY_FAST + ["--margins-csv", str(path), "--format", "json"])
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "vc,worst_ell,margin"
    assert len(lines) == 5  # header + one row per cusp volume


def test_verify_config_defaults_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(
        "# preset grid\nvc-min = 17.1\nvc-max = 100\nvc-points = 4\nell-points = 30\n"
    )
    code, out, _ = run(capsys, ["verify", "techlem2", "--config", str(cfg), "--format", "json"])
    assert code == 0
    assert json.loads(out)["points_checked"] == 120
    code, out, _ = run(
        capsys,
        ["verify", "techlem2", "--config", str(cfg), "--ell-points", "10", "--format", "json"],
    )
    assert code == 0
    assert json.loads(out)["points_checked"] == 40


def test_verify_bad_grid_is_usage_error(capsys):
    code, _, err = run(capsys, ["verify", "techlem2", "--vc-min", "100", "--vc-max", "10"])
    assert code == 2
    assert "usage error" in err


def test_verify_probe_below_threshold(capsys):
    code, out, _ = run(
        capsys,
        ["verify", "techlem2", "--vc-min", "1", "--vc-max", "2", "--vc-points", "3",
         "--ell-points", "10", "--probe", "--format", "json"],
    )
    assert code == 0
    assert json.loads(out)["points_checked"] == 0


# ---------------------------------------------------------------------------
# bianchi
# ---------------------------------------------------------------------------

def test_bianchi_split(capsys):
    code, out, _ = run(capsys, ["bianchi", "split", "--p", "11", "--d", "2"])
    assert code == 0
    assert "3+1√-2" in out
    code, out, _ = run(capsys, ["bianchi", "split", "--p", "11", "--d", "2", "--format", "json"])
    assert code == 0
    assert json.loads(out) == {"p": 11, "d": 2, "split": True, "a": 3, "b": 1, "norm": 11}


def test_bianchi_split_requires_split(capsys):
    code, out, _ = run(capsys, ["bianchi", "split", "--p", "5", "--d", "2", "--format", "json"])
    assert code == 0
    assert json.loads(out)["split"] is False
    code, _, _ = run(capsys, ["bianchi", "split", "--p", "5", "--d", "2", "--require-split"])
    assert code == 1


def test_bianchi_index(capsys):
    code, out, _ = run(capsys, ["bianchi", "index", "--d", "2", "--pi", "3,1", "--n", "1"])
    assert code == 0
    assert out.strip() == "660"
    code, _, err = run(capsys, ["bianchi", "index", "--d", "2", "--pi", "0,1", "--n", "1"])
    assert code == 1
    assert "odd prime" in err


def test_bianchi_census_csv(capsys):
    code, out, _ = run(
        capsys, ["bianchi", "census", "--d", "2", "--pi", "3,1", "--n-max", "3", "--format", "csv"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,index,volume,trace_lb,systole_lb,ratio"
    assert len(lines) == 4
    first = lines[1].split(",")
    assert first[0] == "1"
    assert first[1] == "660"
    assert first[3] == "9"


def test_bianchi_census_json_mirror(capsys):
    code, out, _ = run(
        capsys, ["bianchi", "census", "--d", "2", "--pi", "3,1", "--n-max", "2", "--format", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    row = payload["rows"][0]
    assert row["trace_lb"] == 9
    assert row["trace_lb_uncorrected"] == 11
    assert float(payload["rows"][1]["volume"]) / float(row["volume"]) == pytest.approx(1331)


def test_bianchi_census_height_check(capsys):
    code, out, err = run(
        capsys,
        ["bianchi", "census", "--d", "2", "--pi", "3,1", "--n-max", "1", "--height", "2",
         "--format", "csv"],
    )
    assert code == 0
    assert out.splitlines()[0] == "n,index,volume,trace_lb,systole_lb,ratio"
    assert "n=1:" in err
    assert "loxodromic" in err


def test_bianchi_census_needs_covolume_for_other_rings(capsys):
    code, _, err = run(capsys, ["bianchi", "census", "--d", "1", "--pi", "1,1", "--n-max", "1"])
    assert code == 2
    assert "base-covolume" in err


def test_bianchi_ideals(capsys):
    code, out, _ = run(
        capsys, ["bianchi", "ideals", "--d", "2", "--max-modulus", "2", "--format", "csv"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "a,b,norm"
    assert len(lines) == 11
    code, out, _ = run(
        capsys, ["bianchi", "ideals", "--d", "2", "--max-modulus", "1", "--format", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 2
    assert payload["elements"] == [{"a": -1, "b": 0, "norm": 1}, {"a": 1, "b": 0, "norm": 1}]
