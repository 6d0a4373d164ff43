import json

import pytest

from semitoric.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_crystal_dot_matches_paper_graph(capsys):
    code, out, _ = run(capsys, "crystal", "--type", "A", "--rank", "2",
                       "--weight", "1,1", "--word", "1,2,1",
                       "--format", "dot", "--coords", "phi")
    assert code == 0
    assert out.count("->") == 8
    assert '"(0, 2, 1)" -> "(1, 2, 1)" [label="1"];' in out
    assert '"(2, 1, 0)" -> "(1, 2, 1)" [label="2"];' in out


def test_seed_build_json(capsys):
    code, out, _ = run(capsys, "seed", "build", "--type", "A", "--rank", "3",
                       "--word", "1,2,1,3,2,1")
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"] == [[0, -1, 1, 0, 0, 0],
                               [1, 0, -1, -1, 1, 0],
                               [-1, 1, 0, 0, -1, 1]]


def test_seed_quiver(capsys):
    code, out, _ = run(capsys, "seed", "quiver", "--type", "A", "--rank", "3",
                       "--word", "1,2,1,3,2,1")
    assert code == 0
    assert out.count("->") == 7
    assert "4 [shape=box];" in out


def test_richardson_report(capsys):
    code, out, _ = run(capsys, "richardson", "report", "--type", "A",
                       "--rank", "2", "--weight", "1,1", "--word", "1,2,1",
                       "--v", "1", "--w", "2,1", "--coords", "string")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["richardson_points"] == [[0, 1, 1], [0, 2, 1], [1, 0, 0]]


def test_richardson_scan_identity_v(capsys):
    code, out, _ = run(capsys, "richardson", "report", "--type", "A",
                       "--rank", "2", "--weight", "1,1", "--word", "1,2,1",
                       "--v", "e", "--w", "1,2,1", "--coords", "nz")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_polytope_text(capsys):
    code, out, _ = run(capsys, "polytope", "string", "--type", "A",
                       "--rank", "2", "--weight", "1,1", "--word", "1,2,1",
                       "--format", "text")
    assert code == 0
    assert "0 <= a_1 <= a_2 - 2*a_3 + 1" in out
    assert "saturated=True level=1" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "quiver.dot"
    code, out, _ = run(capsys, "seed", "quiver", "--type", "A", "--rank", "2",
                       "--word", "1,2,1", "--output", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert "1 -> 2;" in text and "3 -> 1;" in text


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["crystal", "--type", "A", "--rank", "2"])  # missing required flags
    assert exc.value.code == 2


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "crystal", "--type", "A", "--rank", "2",
                       "--weight", "1,1", "--word", "1,2")
    assert code == 2
    assert "reduced word" in err


def test_verify_all_subset(capsys):
    code, out, _ = run(capsys, "verify-all", "--criteria", "3")
    assert code == 0
    assert "PASS criterion 3" in out


def test_byte_identical_outputs(capsys):
    args = ("richardson", "scan", "--type", "A", "--rank", "1",
            "--weight", "2", "--word", "1")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
