import json

from biqknot.cli import main
from biqknot.group_words import format_normal
from biqknot.torus_group import ALL_ELEMENTS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_eval(capsys):
    code, out, _ = run(capsys, "group", "eval", "(ab)^-3 a (ab)^3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("convention: word-order")
    assert lines[-1] == "a^7 b^6"


def test_group_eval_identity(capsys):
    code, out, _ = run(capsys, "group", "eval", "e")
    assert code == 0
    assert out.strip().splitlines()[-1] == "e"


def test_group_eval_bad_word(capsys):
    code, _, err = run(capsys, "group", "eval", "a^")
    assert code == 2
    assert "offset" in err


def test_group_eval_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "group", "eval", "b^-2")
    assert code == 0
    payload = json.loads(out)
    assert payload["normal_form"] == "b^6"
    assert "convention" in payload


def test_group_center(capsys):
    code, out, _ = run(capsys, "group", "center")
    assert code == 0
    body = out.strip().splitlines()[1:]
    assert body == ["e", "b^4", "a^4", "a^4 b^4"]


def test_group_table(capsys):
    code, out, _ = run(capsys, "group", "table")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 64
    assert lines[1].startswith("e : ")


def test_group_parity_table(capsys):
    code, out, _ = run(capsys, "group", "parity-table")
    assert code == 0
    assert "mismatches vs stated pattern: 0" in out
    assert "all classes constant: True" in out


def test_group_calibrate(capsys):
    code, out, _ = run(capsys, "group", "calibrate")
    assert code == 0
    assert "frozen convention: word-order, even-rows-right, even-cols-up, central-b4" in out
    assert "matching variants (8):" in out


def test_audit_default_candidate_reports_f_gap(capsys):
    code, out, _ = run(capsys, "audit", "--n", "2")
    assert code == 1  # the calibrated f is not a bijection; f axioms fail
    assert "strange-I-circ domain=262144 PASS" in out
    assert "f-roundtrip" in out


def test_audit_substitution(capsys):
    code, out, _ = run(capsys, "audit", "--n", "2", "--f", "substitution")
    assert code == 1
    assert "idempotence-circ domain=64 PASS" in out
    assert "f-equivariance-circ domain=4096 FAIL" in out


def test_audit_twist_one_negative_control(capsys):
    code, out, _ = run(capsys, "audit", "--n", "1", "--f", "shear")
    assert code == 1
    assert "strange-I" in out and "FAIL" in out


def test_audit_identity_table(capsys, tmp_path):
    path = tmp_path / "id.txt"
    lines = [f"{format_normal(g)}\t{format_normal(g)}" for g in ALL_ELEMENTS]
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "audit", "--n", "2", "--f", f"table:{path}")
    assert code == 0
    assert "f-equivariance-circ domain=4096 PASS" in out
    assert "f-roundtrip domain=64 PASS" in out


def test_audit_f_table_to_separator(capsys, tmp_path):
    # shear as an explicit table, written with the "from to" separator
    path = tmp_path / "shear.txt"
    lines = []
    for k in range(8):
        for l in range(8):
            src = format_normal(ALL_ELEMENTS[k * 8 + l])
            dst = format_normal(ALL_ELEMENTS[k * 8 + (k + l) % 8])
            lines.append(f"{src} to {dst}")
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "audit", "--f", f"table:{path}")
    assert code == 1  # shear is a bijection but not equivariant
    assert "f-roundtrip domain=64 PASS" in out
    assert "f-equivariance-circ domain=4096 FAIL" in out


def test_audit_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "audit", "--n", "1",
                       "--f", "shear")
    assert code == 1
    payload = json.loads(out)
    assert payload["passed"] is False
    assert any(ax["id"].startswith("strange") and not ax["passed"]
               for ax in payload["axioms"])


def test_color_right_trefoil(capsys):
    code, out, _ = run(capsys, "color", "builtin:right-trefoil",
                       "--start", "a")
    assert code == 0
    assert "count:   4" in out
    assert "(a, a b^7, a^3 b^5, a^7 b^4, a b^2)" in out


def test_color_left_trefoil_end_pinned(capsys):
    code, out, _ = run(capsys, "color", "builtin:left-trefoil",
                       "--start", "a", "--end", "a b^2")
    assert code == 0
    assert "count:   0" in out


def test_color_diagram_file(capsys, tmp_path):
    path = tmp_path / "unknot.txt"
    path.write_text("longknot unknot\n")
    code, out, _ = run(capsys, "color", str(path), "--start", "a^2 b")
    assert code == 0
    assert "count:   1" in out


def test_color_missing_file(capsys):
    code, _, err = run(capsys, "color", "no-such-file", "--start", "a")
    assert code == 2
    assert "error" in err


def test_color_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "color",
                       "builtin:right-trefoil", "--start", "a")
    payload = json.loads(out)
    assert code == 0
    assert payload["count"] == 4
    assert payload["end_colors"] == ["a b^2", "a^7 b^4"]


def test_distinguish(capsys):
    code, out, _ = run(capsys, "distinguish", "builtin:right-trefoil",
                       "builtin:left-trefoil", "--start", "a")
    assert code == 0
    assert "verdict: DISTINGUISHED" in out


def test_distinguish_json_matches_text_data(capsys):
    code, out, _ = run(capsys, "--format", "json", "distinguish",
                       "builtin:right-trefoil", "builtin:left-trefoil",
                       "--start", "a")
    payload = json.loads(out)
    assert code == 0
    assert payload["verdict"] == "DISTINGUISHED"
    assert payload["first"]["count"] == 4
    assert payload["second"]["count"] == 0


def test_unknown_f_candidate_exit_code(capsys):
    code, _, err = run(capsys, "audit", "--f", "bogus")
    assert code == 2
    assert "unknown f candidate" in err


def test_bad_diagram_file_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("longknot bad\nO1+ U1-\n")
    code, _, err = run(capsys, "color", str(path), "--start", "a")
    assert code == 2
    assert "sign" in err
