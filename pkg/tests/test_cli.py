import json

import pytest

from overlap_entanglement.cli import (
    EXIT_FAILED,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    ResultTable,
    emit,
    main,
    parse_range,
    render,
)


def csv_rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    return header, [dict(zip(header, map(float, l.split(",")))) for l in lines[1:]]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_curve_basic(capsys):
    code, out = run(capsys, "curve", "--case", "common", "--N", "2", "--n", "1", "--t-max", "2", "--samples", "3")
    assert code == EXIT_OK
    header, rows = csv_rows(out)
    assert header == ["t", "negativity"]
    assert [r["t"] for r in rows] == [0.0, 1.0, 2.0]
    assert rows[0]["negativity"] == 0.0
    assert "# case: common" in out


def test_curve_with_oracle(capsys):
    code, out = run(capsys, "curve", "--case", "side", "--N", "2", "--n", "1", "--t-max", "50",
                    "--samples", "2", "--oracle")
    assert code == EXIT_OK
    header, rows = csv_rows(out)
    assert header == ["t", "negativity", "oracle_negativity", "abs_diff"]
    assert rows[-1]["oracle_negativity"] == pytest.approx(0.0351262, abs=1e-7)
    assert rows[-1]["abs_diff"] <= 1e-7


def test_curve_coefficients(capsys):
    code, out = run(capsys, "curve", "--case", "side", "--N", "1", "--n", "1", "--samples", "2", "--coeffs")
    header, rows = csv_rows(out)
    assert header[2:] == [f"a{j}" for j in range(11)]
    assert rows[0]["a1"] == 1.0


@pytest.mark.parametrize(
    "argv",
    [
        ["curve", "--case", "common", "--N", "0", "--n", "1"],
        ["curve", "--case", "common", "--N", "1", "--n", "0"],
        ["curve", "--case", "side", "--N", "1", "--n", "1", "--samples", "1"],
        ["curve", "--case", "side", "--N", "1", "--n", "1", "--t-max", "-1"],
        ["curve", "--case", "side", "--N", "6", "--n", "4", "--oracle"],
        ["stationary", "--case", "side", "--N", "3..1", "--n", "1"],
        ["verify", "--tol", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_stationary_argmax(capsys):
    code, out = run(capsys, "stationary", "--case", "common", "--N", "1..10", "--n", "1", "--argmax")
    assert code == EXIT_OK
    assert "# argmax_N[n=1]: 2" in out
    _, rows = csv_rows(out)
    assert max(rows, key=lambda r: r["stationary_negativity"])["N"] == 2


def test_stationary_side_argmax(capsys):
    _, out = run(capsys, "stationary", "--case", "side", "--N", "1..20", "--n", "3", "--argmax")
    assert "# argmax_N[n=3]: 2" in out


def test_stationary_side_without_common_qubits(capsys):
    _, out = run(capsys, "stationary", "--case", "side", "--N", "2", "--n", "0")
    _, rows = csv_rows(out)
    assert rows == [{"N": 2.0, "n": 0.0, "stationary_negativity": 0.0}]


def test_verify_fails_under_impossible_tolerance(capsys):
    code, out = run(capsys, "verify", "--tol", "1e-15", "--max-total-qubits", "3")
    assert code == EXIT_FAILED
    assert "FAIL" in out


def test_verify_small_cap_passes(capsys):
    code, out = run(capsys, "verify", "--max-total-qubits", "3")
    assert code == EXIT_OK
    assert "FAIL" not in out


@pytest.mark.slow
def test_verify_default(capsys):
    code, out = run(capsys, "verify")
    assert code == EXIT_OK
    families = [l for l in out.splitlines() if l.startswith("PASS")]
    assert len(families) >= 7


def test_emit_formats_full_precision(capsys):
    emit(ResultTable(["x"], [[1 / 36]]), "csv")
    assert capsys.readouterr().out.splitlines()[-1] == "0.027777777777777776"


def test_json_round_trip():
    table = ResultTable(["a", "b"], [[1.0, 0.1], [2.0, 1e-300]], {"case": "side"})
    payload = json.loads(render(table, "json"))
    assert payload == {"metadata": {"case": "side"}, "columns": ["a", "b"], "rows": table.rows}


def test_table_validation():
    with pytest.raises(ValueError):
        ResultTable(["a", "b"], [[1.0]])
    with pytest.raises(ValueError):
        ResultTable(["a"], [[float("nan")]])


def test_write_failure_exit_code(tmp_path, capsys):
    code = main(["stationary", "--case", "common", "--N", "1", "--n", "1",
                 "--out", str(tmp_path / "missing" / "out.csv")])
    assert code == EXIT_IO
    assert "cannot write" in capsys.readouterr().err


def test_output_is_deterministic(tmp_path):
    paths = [tmp_path / f"{k}.json" for k in range(2)]
    for p in paths:
        main(["curve", "--case", "side", "--N", "2", "--n", "2", "--format", "json", "--out", str(p)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


@pytest.mark.parametrize("text, expected", [("3", [3]), ("1..4", [1, 2, 3, 4])])
def test_parse_range(text, expected):
    assert parse_range(text) == expected
