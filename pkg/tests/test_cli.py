import json

import pytest

from crosscap.cli import main, parse_genus_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_genus_range():
    assert parse_genus_range("7..9") == [7, 8, 9]
    assert parse_genus_range("5") == [5]


def test_relations_verify(capsys):
    code, out, _ = run(capsys, "relations", "verify", "--genus", "7..12")
    assert code == 0
    assert "0 failures" in out


def test_relations_small_genus_warns(capsys):
    code, _, err = run(capsys, "relations", "verify", "--genus", "6")
    assert code == 0 and "lantern" in err


def test_tampered_fixture_file(capsys, tmp_path):
    bad = tmp_path / "fx.txt"
    bad.write_text("3,4 | 3 | disjoint | forged\n")
    code, _, err = run(capsys, "relations", "verify", "--genus", "7", "--fixtures", str(bad))
    assert code == 1 and "fixture-rejected" in err


def test_fixture_env_var(capsys, tmp_path, monkeypatch):
    bad = tmp_path / "fx.txt"
    bad.write_text("3,4 | 2,3 | disjoint | forged\n")
    monkeypatch.setenv("CROSSCAP_FIXTURES", str(bad))
    code, _, _ = run(capsys, "relations", "verify", "--genus", "7")
    assert code == 1


def test_mapping_check(capsys):
    code, out, _ = run(capsys, "mapping", "check", "--genus", "7", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["claims"] == {"pass": 7, "flagged": 1}
    flagged = [e for e in data["entries"] if e["status"] == "flagged"]
    assert flagged[0]["corrected"] == "u6 u5"


def test_cert_round_trip(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "cert", "lemma-a1", "--genus", "7", "-o", str(path))
    assert code == 0 and "verdict: accepted" in out
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "verdict: accepted" in out


def test_verify_rejects_tampered_file(capsys, tmp_path):
    path = tmp_path / "cert.json"
    run(capsys, "cert", "lemma-a1", "-o", str(path))
    data = json.loads(path.read_text())
    data["steps"][10]["position"] += 1
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(path), "--format", "json")
    assert code == 1
    assert json.loads(out)["failed_step"] == 10


def test_cert_normal_gen(capsys):
    code, out, _ = run(capsys, "cert", "normal-gen", "--genus", "7")
    assert code == 0 and "factors: 272" in out


def test_cert_bad_boundary(capsys):
    code, _, err = run(capsys, "cert", "theorem2", "--genus", "7", "--boundary", "2")
    assert code == 2 and "unsupported-boundary" in err


def test_cert_small_genus(capsys):
    code, _, err = run(capsys, "cert", "lemma-a1", "--genus", "6")
    assert code == 2 and "unsupported-genus" in err


def test_abelianize(capsys):
    code, out, _ = run(capsys, "abelianize", "--genus", "7", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["cyclic"] and data["generated_by_u1"]


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--genus", "3", "u1")
    assert code == 0 and out.splitlines() == ["0 1 0", "1 0 0", "0 0 1"]


def test_render(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "--genus", "7", "beta", "gamma", "delta", "epsilon")
    assert code == 0 and out.count('class="curve two-sided"') == 4
    code2, out2, _ = run(capsys, "render", "--genus", "7", "beta", "gamma", "delta", "epsilon")
    assert out2 == out
    code, out, _ = run(capsys, "render", "--genus", "7", "{1,3,5}")
    assert "stroke-dasharray" in out


def test_render_invalid_curve(capsys):
    code, _, err = run(capsys, "render", "--genus", "7", "{1,9}")
    assert code == 2 and "invalid-curve" in err


def test_svg_format_only_for_render(capsys):
    code, _, _ = run(capsys, "eval", "--format", "svg", "u1")
    assert code == 2


@pytest.mark.parametrize("argv", [["bogus"], ["relations", "verify", "--genus", "1..3"], []])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2
