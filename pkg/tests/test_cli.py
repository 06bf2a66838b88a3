from __future__ import annotations

import json

import pytest

from containlab.cli import CASES, RunManifest, main
from containlab.containment import VERDICT_FIELDS, ContainmentVerdict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_config_list(capsys):
    code, out, _ = run(capsys, "config", "list")
    assert code == 0
    assert "dual-hesse" in out.split()


def test_config_show_dual_hesse(capsys):
    code, out, _ = run(capsys, "config", "show", "dual-hesse")
    assert code == 0
    assert "12 points" in out and "9 lines" in out


def test_config_show_klein(capsys):
    code, out, _ = run(capsys, "config", "show", "klein-f7")
    assert code == 0
    assert "49 points (21 quadruple, 28 triple)" in out


def test_config_show_star(capsys):
    code, out, _ = run(capsys, "config", "show", "star:3:2")
    assert code == 0
    assert "3 points" in out


def test_config_show_json(capsys):
    code, out, _ = run(capsys, "config", "show", "dual-hesse", "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data["points"]) == 12 and len(data["lines"]) == 9


def test_unknown_config_is_usage_error(capsys):
    code, _, err = run(capsys, "config", "show", "no-such-thing")
    assert code == 2
    assert "error" in err


def test_bad_exponent_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["check", "--config", "dual-hesse", "--m", "0", "--r", "2"])
    assert exc.value.code == 2


def test_check_dual_hesse_fails(capsys):
    code, out, _ = run(capsys, "check", "--config", "dual-hesse", "--m", "3", "--r", "2")
    assert code == 10
    assert "is not contained in" in out
    assert "witness (degree 9)" in out


def test_check_dual_hesse_els(capsys):
    code, out, _ = run(capsys, "check", "--config", "dual-hesse", "--m", "4", "--r", "2")
    assert code == 0
    assert "ELS" in out


def test_check_punctured_fails(capsys):
    code, _, _ = run(capsys, "check", "--config", "punctured:3", "--m", "3", "--r", "2")
    assert code == 10


def test_check_budget_exit_code(capsys):
    code, out, _ = run(capsys, "check", "--config", "dual-hesse", "--m", "3", "--r", "2", "--max-pairs", "1")
    assert code == 20
    assert "budget exceeded" in out


def test_check_json_round_trip(capsys, tmp_path):
    path = tmp_path / "run.json"
    code, out, _ = run(capsys, "check", "--config", "star:4:2", "--m", "3", "--r", "2",
                       "--json", "--out", str(path))
    assert code == 0
    data = json.loads(out)
    assert set(data) == set(VERDICT_FIELDS)
    v = ContainmentVerdict.from_dict(data)
    assert v.holds is True
    manifest = RunManifest.load(path)
    assert manifest.command[:2] == ["check", "--config"]
    assert ContainmentVerdict.from_dict(manifest.results[0]).same_outcome(v)


def test_invariants_symbolic_alpha(capsys):
    code, out, _ = run(capsys, "invariants", "--config", "dual-hesse", "--symbolic", "3", "--what", "alpha")
    assert code == 0
    assert "alpha = 9" in out


def test_invariants_single_point_reg(capsys):
    code, out, _ = run(capsys, "invariants", "--config", "general:1:2:1", "--what", "reg")
    assert code == 0
    assert "reg = 1" in out


def test_invariants_punctured_square_alpha(capsys):
    # stated value p^2 + 1; a degree-8 element (square of a quartic in I) exists
    code, out, _ = run(capsys, "invariants", "--config", "punctured:3", "--what", "alpha", "--power", "2")
    assert code == 0
    assert "alpha = 10" in out


def test_invariants_unknown_item(capsys):
    code, _, err = run(capsys, "invariants", "--config", "dual-hesse", "--what", "alpha,bogus")
    assert code == 2
    assert "bogus" in err


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "--config", "star:4:2", "--what", "alpha,reg", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["alpha"] == 3 and "regularity" in data


def test_reproduce_dual_hesse_deterministic(capsys, tmp_path):
    runs = []
    for k in range(2):
        path = tmp_path / f"m{k}.json"
        code, out, _ = run(capsys, "reproduce", "--case", "dual-hesse", "--threads", "1", "--out", str(path))
        assert code == 0
        assert "PASS" in out
        results = RunManifest.load(path).results
        for res in results:
            res.pop("seconds")
        runs.append(results)
    assert runs[0] == runs[1]


def test_reproduce_unknown_case(capsys):
    code, _, err = run(capsys, "reproduce", "--case", "nope")
    assert code == 2
    assert "unknown case" in err


def test_reproduce_catalog_size():
    assert len(CASES) >= 6


def test_search_dual_hesse(capsys, tmp_path):
    path = tmp_path / "s.json"
    code, out, _ = run(capsys, "search", "--config", "dual-hesse", "--m-max", "4", "--r-max", "2",
                       "--out", str(path))
    assert code == 0
    est = RunManifest.load(path).results[0]["resurgence"]
    assert [3, 2] in est["violations"]
    assert est["lower_bound"] == "3/2"
    assert "resurgence lower bound: 3/2" in out


def test_search_star_no_violation(capsys):
    code, out, _ = run(capsys, "search", "--config", "star:5:2", "--m-max", "4", "--r-max", "2")
    assert code == 0
    assert "I^(3) <= I^2: holds" in out


def test_search_single_point(capsys):
    code, out, _ = run(capsys, "search", "--config", "general:1:2:7", "--m-max", "3", "--r-max", "3")
    assert code == 0
    assert "no violations in the window" in out


def test_search_window_validation(capsys):
    code, _, _ = run(capsys, "search", "--config", "dual-hesse", "--m-max", "0", "--r-max", "2")
    assert code == 2
