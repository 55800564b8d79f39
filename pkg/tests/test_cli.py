import json

import pytest
from click.testing import CliRunner

from infdef.cli import cli


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)


def test_alg_check(runner):
    result = runner.invoke(cli, ["-x", "ex1", "alg", "check"])
    assert result.exit_code == 0, result.output
    assert "dim A = 9" in result.stdout


def test_alg_check_json(runner):
    result = runner.invoke(cli, ["-x", "ex2", "--json", "alg", "check"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["dim"] == 6
    assert len(report["basis"]) == 6


def test_cocycle_check_passes(runner):
    result = runner.invoke(cli, ["-x", "ex1", "cocycle", "check"])
    assert result.exit_code == 0
    assert "cocycle: PASS" in result.stdout


def test_cocycle_violation_exits_one(runner, tmp_path):
    session = tmp_path / "bad.toml"
    session.write_text(
        '[quiver]\nvertices = ["1", "2", "3", "4"]\narrows = [\n'
        '  { name = "a1", source = "1", target = "2" },\n'
        '  { name = "a2", source = "2", target = "4" },\n'
        '  { name = "a3", source = "1", target = "3" },\n'
        '  { name = "a4", source = "3", target = "4" },\n]\n'
        '[algebra]\nrelations = ["a1*a2"]\n'
        '[cocycle]\nentries = [{ left = "a1", right = "a2", value = "e_4" }]\n'
    )
    result = runner.invoke(cli, ["-s", str(session), "--json", "cocycle", "check"])
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert report["passed"] is False
    assert report["total_violations"] >= 1
    assert all(len(v["triple"]) == 3 for v in report["violations"])


def test_deforming_a_non_cocycle_is_a_mathematical_failure(runner, tmp_path):
    session = tmp_path / "bad.toml"
    session.write_text(
        '[quiver]\nvertices = ["1", "2"]\narrows = [{ name = "a", source = "1", target = "2" }]\n'
        '[cocycle]\nentries = [{ left = "e_1", right = "a", value = "a" }]\n'
    )
    result = runner.invoke(cli, ["-s", str(session), "deform", "info"])
    assert result.exit_code == 1
    assert "error:" in result.stderr


def test_malformed_session_exits_two(runner, tmp_path):
    session = tmp_path / "broken.toml"
    session.write_text('[quiver]\nvertices = ["1" "2"]\n')
    result = runner.invoke(cli, ["-s", str(session), "alg", "check"])
    assert result.exit_code == 2
    assert "line" in result.stderr


def test_missing_session_exits_two(runner):
    assert runner.invoke(cli, ["alg", "check"]).exit_code == 2
    assert runner.invoke(cli, ["-x", "nope", "alg", "check"]).exit_code == 2


def test_resolve_base(runner):
    result = runner.invoke(cli, ["-x", "ex1", "resolve", "--simple", "4", "-N", "3"])
    assert result.exit_code == 0
    assert "1: [P2,P3]" in result.stdout
    assert "3: []" in result.stdout


def test_resolve_theorem_with_compare(runner):
    args = ["-x", "ex1", "--json", "resolve", "--simple", "4", "--over", "deformed", "--method", "theorem", "-N", "2", "--compare"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["matches_generic"] is True
    assert sorted(report["terms"][2]["vertices"]) == ["1", "2", "3", "4"]


def test_theorem_needs_deformed(runner):
    result = runner.invoke(cli, ["-x", "ex1", "resolve", "--method", "theorem"])
    assert result.exit_code == 2


def test_star_check_fails_on_truncated_loop(runner):
    result = runner.invoke(cli, ["-x", "ex3_r3", "star", "check", "--simple", "1", "-N", "2"])
    assert result.exit_code == 1
    assert "FAIL" in result.stdout


def test_ext_dims(runner):
    result = runner.invoke(cli, ["-x", "ex1", "--json", "ext", "dims", "-N", "3"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["base"] == [4, 4, 1, 0]
    assert report["deformed"] == [4, 8, 9, 9]
    assert report["over"] is None
    assert report["partial_sums_hold"] is True


@pytest.mark.parametrize(
    "over, base, deformed",
    [("base", [4, 4, 1, 0], None), ("deformed", None, [4, 8, 9, 9])],
)
def test_ext_dims_over_one_side(runner, over, base, deformed):
    result = runner.invoke(cli, ["-x", "ex1", "--json", "ext", "dims", "--over", over, "-N", "3"])
    assert result.exit_code == 0, result.stderr
    report = json.loads(result.stdout)
    assert set(report) == {"module", "degree", "over", "base", "deformed", "partial_sums_hold"}
    assert report["over"] == over
    assert report["base"] == base
    assert report["deformed"] == deformed
    assert report["partial_sums_hold"] is None


def test_ext_dims_over_text(runner):
    result = runner.invoke(cli, ["-x", "ex2", "ext", "dims", "--simple", "1", "--over", "deformed", "-N", "4"])
    assert result.exit_code == 0
    assert "over A_f: 1 2 3 4 5" in result.stdout
    assert "over A:" not in result.stdout
    assert "partial sums" not in result.stdout


def test_ext_dims_over_rejects_unknown_side(runner):
    assert runner.invoke(cli, ["-x", "ex1", "ext", "dims", "--over", "both"]).exit_code == 2


def test_ext_basis(runner):
    result = runner.invoke(cli, ["-x", "ex2", "--json", "ext", "basis", "-n", "1"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["dim"] == 4


def test_yoneda_with_check(runner):
    result = runner.invoke(cli, ["-x", "ex2", "yoneda", "--h", "1:[1 0|0 1]", "--g", "1:[0 1|1 0]", "--check"])
    assert result.exit_code == 0, result.stderr
    assert "methods agree: PASS" in result.stdout


def test_yoneda_bad_class(runner):
    assert runner.invoke(cli, ["-x", "ex2", "yoneda", "--h", "1:[1]", "--g", "0:[1 0]"]).exit_code == 2
    assert runner.invoke(cli, ["-x", "ex2", "yoneda", "--h", "0:[1]", "--g", "0:[1 0]"]).exit_code == 2


def test_corollary_check(runner):
    result = runner.invoke(cli, ["-x", "ex1", "corollary", "check", "-N", "2", "--associativity"])
    assert result.exit_code == 0, result.stderr
    assert "associativity: PASS" in result.stdout


def test_emit_dot(runner):
    result = runner.invoke(cli, ["-x", "ex1", "emit", "dot"])
    assert result.exit_code == 0
    assert result.stdout.startswith("digraph ex1 {")


def test_json_error_report(runner):
    result = runner.invoke(cli, ["-x", "ex1", "--json", "resolve", "--simple", "9"])
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"] == "SessionError"
