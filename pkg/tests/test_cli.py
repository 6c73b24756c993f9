import json
from fractions import Fraction

import pytest

from dedesym.cli import main
from dedesym.classical import dedekind_sum_fast
from dedesym.field import parse_element


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_sum_text_and_json(capsys):
    code, out, _ = run(capsys, "sum", "1", "3")
    assert code == 0 and out == "1/18"
    code, out, _ = run(capsys, "sum", "1", "3", "--naive", "--json")
    payload = json.loads(out)
    assert Fraction(payload["exact"]) == dedekind_sum_fast(1, 3)
    assert payload["algorithm"] == "naive"
    assert abs(payload["float"] - 1 / 18) < 1e-12


def test_phi(capsys):
    code, out, _ = run(capsys, "phi", "1", "0", "3", "1")
    assert code == 0 and out == "0"
    code, out, _ = run(capsys, "phi", "1", "1", "0", "1")
    assert out == "1/12"


def test_omega(capsys):
    code, out, _ = run(capsys, "omega", "--q", "3", "--g", "0,-1,1,0", "--h", "0,-1,1,0")
    assert code == 0 and out == "0"
    code, out, _ = run(capsys, "omega", "--q", "5", "--g", "0,-1,1,0", "--h", "1,L,0,1", "--json")
    payload = json.loads(out)
    assert payload["q"] == 5
    assert Fraction(payload["exact"]) in (
        Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1),
    )


def test_symbol_row_both(capsys):
    code, out, _ = run(capsys, "symbol", "--q", "3", "--row", "3;1", "--algorithm", "both")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "1/18"
    assert lines[1] == "algorithms_agree: true"


def test_symbol_word_json_round_trip(capsys):
    code, out, _ = run(
        capsys, "symbol", "--q", "5", "--word", "i,t^2,i,t^-1", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["algorithms_agree"] is True
    value = parse_element(5, payload["exact"])
    assert [str(c) for c in value.coords] == payload["coords"]


def test_symbol_trivial_coset_is_usage_error(capsys):
    code, _, err = run(capsys, "symbol", "--q", "3", "--word", "t^2")
    assert code == 2
    assert "c = 0" in err


def test_member(capsys):
    code, out, _ = run(capsys, "member", "--q", "5", "--matrix", "0,-1,1,0")
    assert code == 0 and out == "i"
    code, out, _ = run(capsys, "member", "--q", "3", "--matrix", "1,1/2,0,1")
    assert out == "not-member"


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--q", "3", "--row", "3;1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["terminal"] == ["1", "0"]
    assert [s["translate"] for s in payload["steps"]] == [0, 3]


def test_equidist_with_csv(capsys, tmp_path):
    table_path = tmp_path / "t.csv"
    code, out, _ = run(
        capsys, "equidist", "--q", "3", "--xmax", "60",
        "--checkpoints", "15,30,45,60", "--n", "1",
        "--csv", str(table_path),
    )
    assert code == 0
    assert table_path.exists()
    assert "double cosets" in out


def test_check_quick_suite(capsys):
    code, out, _ = run(capsys, "check", "--suite", "classical", "--quick")
    assert code == 0
    assert out.count("[PASS]") == 3


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sum", "1"])  # missing argument
    assert exc.value.code == 2
    code, _, err = run(capsys, "omega", "--q", "3", "--g", "0,-1,1", "--h", "0,-1,1,0")
    assert code == 2 and "4 comma-separated entries" in err
    code, _, err = run(capsys, "symbol", "--q", "3", "--word", "i", "--row", "3;1")
    assert code == 2
