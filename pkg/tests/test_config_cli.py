from __future__ import annotations

import json

import pytest

from pidisc.cli import main
from pidisc.config import ConfigError, build, grid_points, load_config, parse_config, parse_point

WEYL_Q = {"family": "weyl", "field": "rational", "lambda": [1], "epsilon": [-1]}
WEYL_F5 = {"family": "weyl", "field": {"prime": 5}, "lambda": [1], "epsilon": [{"order": 2}], "grid": "full"}
MO_Q = {"family": "matrix_order", "field": "rational", "traces": ["std", "red"]}
MO_F5 = {"family": "matrix_order", "field": {"prime": 5}, "traces": ["std", "red"], "grid": "full"}
QA_Q = {"family": "quantum_affine_space", "field": "rational", "traces": ["std", "red"]}
QA_F5 = {"family": "quantum_affine_space", "field": {"prime": 5}, "traces": ["std", "red"], "grid": "full"}
QA_F13 = {"family": "quantum_affine_space", "field": {"prime": 13}, "traces": ["std", "red"]}


@pytest.fixture
def cfg(tmp_path):
    def write(data, name="c.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data) if not isinstance(data, str) else data)
        return str(path)
    return write


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv, "--json")
    assert rc == 0, err
    return json.loads(out)


# -- configuration ---------------------------------------------------------


def test_parse_config_defaults():
    c = parse_config(dict(WEYL_Q))
    assert c.family == "weyl" and c.traces == ["reg", "red"] and c.seed == 0


@pytest.mark.parametrize("data, msg", [
    ({"family": "nope"}, "family"),
    ({"family": "weyl", "lambda": [1]}, "epsilon"),
    ({"family": "matrix_order", "field": {"prime": 4}}, "prime"),
    ({"family": "matrix_order", "traces": ["foo"]}, "traces"),
    ({"family": "matrix_order", "extra": 1}, "unknown keys"),
    ({"family": "matrix_order", "seed": "x"}, "seed"),
    ([], "object"),
])
def test_parse_config_errors(data, msg):
    with pytest.raises(ConfigError, match=msg):
        parse_config(data)


def test_load_config_reports_position(cfg):
    path = cfg('{"family": "weyl",\n  "lambda": [1,]\n}')
    with pytest.raises(ConfigError, match="line 2"):
        load_config(path)


def test_parse_point():
    A = build(parse_config(dict(WEYL_Q))).algebra
    assert parse_point(A, "X1=3, Y1=1/2") == (3, parse_point(A, "X1=0,Y1=0.5")[1])
    for bad in ("X1=3", "X1=3,Z=1", "X1", "X1=a,Y1=1"):
        with pytest.raises(ConfigError):
            parse_point(A, bad)


def test_grid_points_respect_relations():
    A = build(parse_config(dict(QA_F5))).algebra
    pts = grid_points(A, "full")
    assert len(pts) == 125
    assert all((d * d - b * c) % 5 == 0 for _, b, c, d in pts)
    assert len(grid_points(A, {"a": [0]})) == 25
    with pytest.raises(ConfigError):
        grid_points(build(parse_config(dict(WEYL_Q))).algebra, "full")


def test_structure_constants_family(cfg, capsys):
    data = {
        "family": "structure_constants",
        "field": {"prime": 7},
        "traces": ["reg"],
        "structure_constants": {
            "center": ["s"],
            "labels": ["1", "t"],
            "identity": "1",
            "products": [["t", "t", {"1": "s"}]],
        },
    }
    info = run_json(capsys, "disc", "--config", cfg(data), "--level", "2", "--variant", "d")
    # Gram [[2, 0], [0, 2s]]
    assert info["generators"] == ["s"]


# -- describe --------------------------------------------------------------


def test_describe_examples(cfg, capsys):
    info = run_json(capsys, "describe", "--config", cfg(MO_Q))
    assert (info["pi_degree"], info["size"], info["free"]) == (2, 5, False)
    info = run_json(capsys, "describe", "--config", cfg(WEYL_Q))
    assert info["r"] == 2 and info["Z"] == ["-4*X1*Y1 + 1"]
    info = run_json(capsys, "describe", "--config", cfg(QA_Q))
    assert info["center_generators"] == ["a = X1^2", "b = X2^2", "c = X3^2", "d = X2*X3"]


# -- disc ------------------------------------------------------------------


def test_disc_examples(cfg, capsys):
    res = run_json(capsys, "disc", "--config", cfg(MO_Q), "--level", "4", "--trace", "std",
                   "--compare", "x^2; x*y; y^2")
    assert res["compare"]["equal"]
    res = run_json(capsys, "disc", "--config", cfg(QA_Q), "--level", "4", "--trace", "std",
                   "--compare", ";".join(f"a^2*b^{i // 2}*c^{(4 - i) // 2}*d^{i % 2}" for i in range(5)))
    assert res["compare"]["equal"]
    res = run_json(capsys, "disc", "--config", cfg(WEYL_Q), "--level", "4", "--variant", "d", "--raw")
    assert res["generators"] == ["-256*X1^2*Y1^2 + 128*X1*Y1 - 16"]


def test_disc_compare_polynomial_ideal(cfg, capsys):
    res = run_json(capsys, "disc", "--config", cfg(WEYL_Q), "--level", "4", "--variant", "d",
                   "--compare", "(1 - 4*X1*Y1)^2")
    assert res["compare"]["equal"]


def test_disc_budget(cfg, capsys):
    rc, _, err = run(capsys, "disc", "--config", cfg(QA_Q), "--level", "3", "--max-dets", "5")
    assert rc == 2 and "budget" in err


# -- fiber -----------------------------------------------------------------


def test_fiber_examples(cfg, capsys):
    rep = run_json(capsys, "fiber", "--config", cfg(WEYL_Q), "--point", "X1=1,Y1=0")
    assert rep["azumaya"]
    rep = run_json(capsys, "fiber", "--config", cfg(WEYL_F5), "--point", "X1=1,Y1=4")
    assert not rep["azumaya"] and rep["irreducibles"] == [1, 1]
    rep = run_json(capsys, "fiber", "--config", cfg(MO_Q), "--point", "x=0,y=0")
    assert rep["ss_dim"] == 2 and rep["gram_ranks"]["std"] == 2


@pytest.mark.parametrize("point", ["X1=1", "X1=1,Y1=2,Z=3", "bogus"])
def test_fiber_invalid_point(cfg, capsys, point):
    rc, _, err = run(capsys, "fiber", "--config", cfg(WEYL_Q), "--point", point)
    assert rc == 2 and err.startswith("error:")


def test_fiber_point_off_variety(cfg, capsys):
    rc, _, err = run(capsys, "fiber", "--config", cfg(QA_F13), "--point", "a=1,b=1,c=1,d=2")
    assert rc == 2 and "relation" in err


# -- scan ------------------------------------------------------------------


def _non_az(report):
    return {tuple(p.values()) for p in report["non_azumaya"]}


def test_scan_matrix_order(cfg, capsys):
    rep = run_json(capsys, "scan", "--config", cfg(MO_F5))
    assert len(rep["points"]) == 25 and _non_az(rep) == {(0, 0)}


def test_scan_weyl(cfg, capsys):
    rep = run_json(capsys, "scan", "--config", cfg(WEYL_F5))
    assert _non_az(rep) == {(a, b) for a in range(5) for b in range(5) if (1 - 4 * a * b) % 5 == 0}
    assert len(_non_az(rep)) == 4
    assert all(row[k]["disagree"] == 0 for row in rep["cross_check"] for k in row if k != "level")
    assert [row["level"] for row in rep["cross_check"]] == [1, 2, 3, 4, 5]


def test_scan_quantum_affine_unpure(cfg, capsys):
    rep = run_json(capsys, "scan", "--config", cfg(QA_F5))
    pts = {tuple(r["point"].values()) for r in rep["points"]}
    assert _non_az(rep) == {p for p in pts if p[0] == 0 or (p[1] == 0 and p[2] == 0)}


def test_scan_grid_flag(cfg, capsys):
    rep = run_json(capsys, "scan", "--config", cfg(WEYL_F5), "--grid", '{"X1": [1], "Y1": [0, 4]}')
    assert [tuple(r["point"].values()) for r in rep["points"]] == [(1, 0), (1, 4)]
    rc, _, _ = run(capsys, "scan", "--config", cfg(WEYL_F5), "--grid", "{nope")
    assert rc == 2


def test_scan_is_deterministic(cfg, capsys, tmp_path):
    path = cfg(WEYL_F5)
    outs = []
    for jobs in ("1", "1", "2"):
        out = tmp_path / f"scan{len(outs)}.json"
        assert run(capsys, "scan", "--config", path, "--jobs", jobs, "--out", str(out))[0] == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


# -- singular --------------------------------------------------------------


def test_singular_examples(cfg, capsys):
    path = cfg(QA_F13)
    rep = run_json(capsys, "singular", "--config", path, "--point", "a=2,b=0,c=0,d=0")
    assert rep["singular"] and rep["gram_rank"] < 4 and rep["inclusion_ok"]
    rep = run_json(capsys, "singular", "--config", path, "--point", "a=0,b=1,c=0,d=0")
    assert not rep["singular"]
    rep = run_json(capsys, "singular", "--config", path, "--point", "a=3,b=1,c=4,d=2")
    assert not rep["singular"] and rep["azumaya"]


def test_singular_unsupported(cfg, capsys):
    rc, _, err = run(capsys, "singular", "--config", cfg(WEYL_Q), "--point", "X1=0,Y1=0")
    assert rc == 2 and "no relations" in err


# -- verify and exit codes ---------------------------------------------------


def test_verify_weyl(capsys):
    rc, out, _ = run(capsys, "verify", "weyl")
    assert rc == 0 and "FAIL" not in out


def test_verify_example1_reports_failure(capsys):
    rc, out, _ = run(capsys, "verify", "example1")
    assert rc == 3
    failing = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert len(failing) == 2 and all("<x,y> lies in" in line for line in failing)


@pytest.mark.parametrize("argv", [
    ["describe"],
    ["describe", "--config", "/nonexistent.json"],
    ["disc", "--config", "X", "--level", "x"],
    ["verify", "nosuchsuite"],
])
def test_invalid_invocations(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_level_must_be_positive(cfg, capsys):
    assert run(capsys, "disc", "--config", cfg(MO_Q), "--level", "0")[0] == 2


def test_bad_config_exit_code(cfg, capsys):
    rc, _, err = run(capsys, "describe", "--config", cfg({"family": "weyl", "lambda": [1], "epsilon": [1]}))
    assert rc == 2 and "epsilon" in err
