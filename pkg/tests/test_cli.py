"""Command-line interface: formats, exit codes, determinism."""
import json

import pytest

from thetagroups.cli import main

F4_ORDER = ["11111", "11101", "10101", "01010", "11100", "10100", "01001",
            "00100", "11000", "10001", "01000", "00001"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tables_json_roundtrip(capsys):
    code, out, _ = run(capsys, "tables", "--type", "g2", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert json.loads(json.dumps(rows, ensure_ascii=False)) == rows
    assert [r["kac"] for r in rows] == ["111", "011", "010"]
    assert set(rows[0]) == {"type", "kac", "order", "carter", "rank", "little_weyl", "kw"}
    assert set(rows[0]["little_weyl"]) == {"name", "order", "degrees"}
    assert set(rows[0]["kw"]) == {"reduction", "theta_on_L", "n_regular", "criterion"}


def test_tables_markdown_f4_order(capsys):
    code, out, _ = run(capsys, "tables", "--type", "f4", "--format", "md")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("| Kac diagram | m | w | r | W_c | L |")
    assert [ln.split("|")[1].strip() for ln in lines[2:]] == F4_ORDER


def test_tables_deterministic(capsys):
    a = run(capsys, "tables", "--type", "d4-3", "--format", "json", "--seed", "0")[1]
    b = run(capsys, "tables", "--type", "d4-3", "--format", "json", "--seed", "0")[1]
    assert a == b


def test_tables_char7_matches_char0(capsys):
    a = json.loads(run(capsys, "tables", "--type", "d4-3", "--format", "json")[1])
    code, out, err = run(capsys, "tables", "--type", "d4-3", "--format", "json", "--char", "7")
    assert code == 0 and json.loads(out) == a
    assert "cyclotomic mode" in err  # m = 12 row falls back


@pytest.mark.parametrize("argv", [
    ["tables", "--type", "e8"],
    ["tables", "--type", "f4", "--format", "xml"],
    ["tables", "--type", "f4", "--char", "9"],
    ["verify", "--suite", "nope"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_analyze_non_primitive(capsys):
    code, _, err = run(capsys, "analyze", "--type", "f4", "--diagram", "20000")
    assert code == 2 and "primitive" in err


def test_analyze_zero_rank(capsys):
    code, out, _ = run(capsys, "analyze", "--type", "f4", "--diagram", "00011")
    d = json.loads(out)
    assert code == 0 and d["rank"] == 0
    z = d["zero_rank"]
    assert (z["dim_g0"], z["dim_g1"], z["witness"], z["witness_centralizer_in_g0"]) == \
        (16, 5, "e_0010 + e_0001", 11)


def test_analyze_positive(capsys):
    code, out, _ = run(capsys, "analyze", "--type", "d4-3", "--diagram", "100")
    d = json.loads(out)
    assert code == 0
    assert (d["order"], d["g0"], d["rank"], d["little_weyl"]["name"]) == (3, "G2", 1, "μ2")


def test_verify_jacobi_and_counting(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "jacobi")
    assert code == 0 and out.count("PASS") == 3
    code, out, _ = run(capsys, "verify", "--suite", "counting")
    assert code == 0 and "PASS\tcounting\tf4 m=2\t15 = 15" in out


def test_classes_listing(capsys):
    code, out, _ = run(capsys, "classes", "--type", "f4")
    assert code == 0 and len(out.strip().splitlines()) == 25
