import orjson
import pytest
from click.testing import CliRunner

from edge_regularity.cli import cli, exit_code
from edge_regularity.invariants import InvariantReport
from edge_regularity.workbench import Check, CheckStatus, ReportRecord


@pytest.fixture
def runner():
    return CliRunner()


def test_invariants_json(runner):
    result = runner.invoke(cli, ["invariants", "--family", "C5", "--json"])
    assert result.exit_code == 0, result.output
    payload = orjson.loads(result.output)
    assert payload[0]["graph_id"] == "C5"
    assert payload[0]["invariants"]["indmatch"] == 1


def test_regularity_from_stdin(runner):
    result = runner.invoke(cli, ["regularity", "--text"], input="D?{\n")
    assert result.exit_code == 0, result.output
    assert result.output.startswith("D?{\tD?{\tpass")


def test_edge_list_input(runner, tmp_path):
    path = tmp_path / "c6.txt"
    path.write_text("n 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n")
    result = runner.invoke(cli, ["cochord", "--input", str(path), "--format", "edges", "--csv"])
    assert result.exit_code == 0, result.output
    assert "c6.txt" in result.output


@pytest.mark.parametrize(
    "args,input_,code",
    [
        (["invariants", "--input", "-"], "D?\n", 2),
        (["invariants", "--family", "C5", "--fields", "4"], None, 2),
        (["invariants", "--family", "Q5"], None, 2),
        (["regularity", "--family", "P8", "--vertex-cap", "7"], None, 3),
        (["invariants", "--family", "P8", "--vertex-cap", "7"], None, 3),
        (["cochord", "--family", "C7", "--edge-cap", "5"], None, 3),
        (["reproduce", "paths-cycles", "--nmax", "16"], None, 3),
    ],
    ids=[
        "parse_error",
        "composite_field",
        "unknown_family",
        "capped_record",
        "capped_invariants",
        "capped_cover",
        "capped_command",
    ],
)
def test_exit_codes(runner, args, input_, code):
    result = runner.invoke(cli, args, input=input_)
    assert result.exit_code == code


def test_exit_code_precedence():
    def record(status):
        return ReportRecord("x", "@", InvariantReport("x"), [Check("c", status)])

    assert exit_code([]) == 0
    assert exit_code([record(CheckStatus.NOTABLE)]) == 0
    assert exit_code([record(CheckStatus.INCOMPLETE), record(CheckStatus.PASS)]) == 3
    assert exit_code([record(CheckStatus.INCOMPLETE), record(CheckStatus.FAIL)]) == 1


def test_cover_methods(runner):
    result = runner.invoke(cli, ["cover", "--method", "split", "--family", "C5", "--json"])
    assert result.exit_code == 0, result.output
    assert orjson.loads(result.output)[0]["values"]["cover"]["size"] == 2


def test_reproduce_scm_example(runner):
    result = runner.invoke(cli, ["reproduce", "scm-example", "--text"])
    assert result.exit_code == 0, result.output
    assert "scm-example" in result.output


def test_verify_sphere(runner):
    result = runner.invoke(cli, ["verify", "sphere", "--mmax", "3", "--fields", "2,3", "--text"])
    assert result.exit_code == 0, result.output
    assert len(result.output.splitlines()) == 3
    assert not result.output.endswith("\n\n")


@pytest.mark.parametrize("fmt", ["--text", "--csv", "--json"], ids=["text", "csv", "json"])
def test_report_has_no_trailing_blank_line(runner, fmt):
    result = runner.invoke(cli, ["regularity", "--family", "C5", "--family", "P4", fmt])
    assert result.exit_code == 0, result.output
    assert result.output.endswith("\n")
    assert not result.output.endswith("\n\n")


def test_search_q51(runner):
    result = runner.invoke(cli, ["search", "q51", "--family", "C5", "--text"])
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[0].startswith("petersen-complement")


def test_corpus(runner):
    result = runner.invoke(cli, ["corpus", "--nmax", "3"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == 7
    assert lines[:4] == ["@", "A?", "A_", "B?"]
    assert lines[-1] == "Bw"
