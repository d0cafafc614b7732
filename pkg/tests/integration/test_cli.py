"""End-to-end CLI runs through click's test runner."""
import orjson
import pytest
from click.testing import CliRunner

from cli.main import cli
from config import Config
from formats.election_file import read_election
from formats.reports import ReportDocument, recheck_document
from utils.logger import setup_logging

E1_PAV = "0,1,2,6,7,8,9,10,11,12,13,14"


@pytest.fixture(autouse=True)
def isolated_dirs(tmp_path, monkeypatch):
    monkeypatch.setattr(Config, "DATA_DIR", tmp_path / "data")
    monkeypatch.setattr(Config, "REPORTS_DIR", tmp_path / "data" / "reports")
    monkeypatch.setattr(Config, "LOGS_DIR", tmp_path / "logs")
    monkeypatch.setattr(Config, "LOG_FILE", str(tmp_path / "logs" / "cli.log"))
    yield
    # the runner closes its streams; detach handlers bound to them
    setup_logging(log_level="WARNING", log_file="")


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, ["--log-level", "ERROR", *[str(a) for a in args]])
    return invoke


def json_of(result) -> dict:
    return orjson.loads(result.stdout)


class TestElect:
    def test_greedy_monroe_on_example_two(self, run, fixtures_dir):
        result = run("elect", "--rule", "greedy-monroe", "--input", fixtures_dir / "E2.appr", "--json")
        assert result.exit_code == 0, result.output
        data = json_of(result)
        assert data["committee"] == [0, 2, 3]
        assert data["rule"] == "greedy-monroe"
        assert data["details"]["monroe_score"] == 5

    def test_seq_pav_on_example_one(self, run, fixtures_dir):
        result = run("elect", "--rule", "seq-pav", "--input", fixtures_dir / "E1.appr", "--json")
        assert result.exit_code == 0, result.output
        data = json_of(result)
        assert data["committee"] == [int(c) for c in E1_PAV.split(",")]
        assert data["details"]["pav_score"] == "11/1"

    def test_human_output(self, run, fixtures_dir):
        result = run("elect", "--rule", "monroe", "--input", fixtures_dir / "E2.appr")
        assert result.exit_code == 0
        assert "Monroe score" in result.output

    def test_report_written_to_file(self, run, fixtures_dir, tmp_path):
        target = tmp_path / "out" / "elect.json"
        result = run("elect", "--rule", "equal-shares", "--input", fixtures_dir / "E3.appr", "--output", target)
        assert result.exit_code == 0
        assert ReportDocument.model_validate(orjson.loads(target.read_bytes())).verdict == "computed"

    def test_bad_delta(self, run, fixtures_dir):
        result = run("elect", "--rule", "ls-pav", "--input", fixtures_dir / "E1.appr", "--delta", "abc")
        assert result.exit_code == 2

    def test_exact_rule_over_budget(self, run, fixtures_dir, monkeypatch):
        monkeypatch.setattr(Config, "ENUMERATION_BUDGET", 1)
        result = run("elect", "--rule", "pav", "--input", fixtures_dir / "E2.appr")
        assert result.exit_code == 3


class TestVerify:
    def test_fpjr_violation_exits_one(self, run, fixtures_dir):
        result = run("verify", "--axiom", "fpjr", "--input", fixtures_dir / "E1.appr", "--committee", E1_PAV, "--json")
        assert result.exit_code == 1
        data = json_of(result)
        assert data["verdict"] == "violated"
        assert data["certificate"] == {"kind": "cohesion", "coalition": [0, 1, 2], "witness": [0, 1, 2, 3, 4, 5], "level": 4}
        document = ReportDocument.model_validate(data)
        assert recheck_document(document, read_election(fixtures_dir / "E1.appr"))

    def test_ejr_satisfied_exits_zero(self, run, fixtures_dir):
        result = run("verify", "--axiom", "ejr", "--input", fixtures_dir / "E1.appr", "--committee", E1_PAV)
        assert result.exit_code == 0
        assert "satisfied" in result.output

    def test_priceable_committee(self, run, fixtures_dir):
        result = run("verify", "--axiom", "priceable", "--input", fixtures_dir / "E2.appr", "--committee", "2,3,4", "--json")
        assert result.exit_code == 0
        assert json_of(result)["price_system"]["price"] == "4/3"

    def test_pjr_plus_certificate(self, run, fixtures_dir):
        result = run("verify", "--axiom", "pjr+", "--input", fixtures_dir / "E3.appr", "--committee", "1,2,3,4,5,6", "--json")
        assert result.exit_code == 1
        assert json_of(result)["certificate"] == {"kind": "deprivation", "coalition": [0, 1, 2, 3, 4, 5], "candidate": 0, "level": 3}

    def test_truncated_search_exits_three(self, run, fixtures_dir):
        result = run("verify", "--axiom", "fpjr", "--input", fixtures_dir / "E1.appr", "--committee", E1_PAV, "--max-witness", 3)
        assert result.exit_code == 3

    @pytest.mark.parametrize("committee", ["0,x", "1,1", "0,99"])
    def test_bad_committee(self, run, fixtures_dir, committee):
        result = run("verify", "--axiom", "jr", "--input", fixtures_dir / "E2.appr", "--committee", committee)
        assert result.exit_code == 2

    def test_malformed_election_file(self, run, tmp_path):
        path = tmp_path / "bad.appr"
        path.write_text("3 2\n0 3\n")
        result = run("verify", "--axiom", "jr", "--input", path, "--committee", "0")
        assert result.exit_code == 2
        assert "bad.appr:2:3" in result.output.replace("\n", "")

    def test_non_ascii_comment_is_a_parse_error(self, run, tmp_path):
        path = tmp_path / "accent.appr"
        path.write_bytes("3 2\n# voter café\n0\n1\n".encode("utf-8"))
        result = run("verify", "--axiom", "jr", "--input", path, "--committee", "0")
        assert result.exit_code == 2
        assert "accent.appr:2:12" in result.output.replace("\n", "")

    def test_unknown_axiom_is_a_usage_error(self, run, fixtures_dir):
        result = run("verify", "--axiom", "strong-jr", "--input", fixtures_dir / "E2.appr", "--committee", "0")
        assert result.exit_code == 2


class TestPricing:
    def test_price_table(self, run, fixtures_dir):
        result = run("price", "--input", fixtures_dir / "E2.appr", "--committee", "2,3,4")
        assert result.exit_code == 0
        assert "4/3" in result.output

    def test_not_priceable(self, run, fixtures_dir):
        result = run("price", "--input", fixtures_dir / "E2.appr", "--committee", "0,2,3", "--json")
        assert result.exit_code == 1
        assert json_of(result)["verdict"] == "violated"

    def test_per_fails_on_example_two(self, run, fixtures_dir):
        result = run("per", "--input", fixtures_dir / "E2.appr", "--committee", "2,3,4")
        assert result.exit_code == 1

    def test_per_partition(self, run, tmp_path):
        path = tmp_path / "per.appr"
        path.write_text("3 3\n0\n0\n1 2\n1\n2\n2\n")
        result = run("per", "--input", path, "--committee", "0,1,2", "--json")
        assert result.exit_code == 0
        assert json_of(result)["partition"]["assigned"] == [0, 1, 2]


class TestReductions:
    def test_reduce_pjr_json(self, run, fixtures_dir):
        result = run("reduce", "--alg", "pjr", "--ell", 3, "--graph", fixtures_dir / "k33.graph", "--json")
        assert result.exit_code == 0
        details = json_of(result)["details"]
        assert details["election"].startswith("9 4\n")
        assert details["winner"] == [3, 4, 5, 6]

    def test_reduce_ejr_to_file(self, run, fixtures_dir, tmp_path):
        target = tmp_path / "ejr.appr"
        result = run("reduce", "--alg", "ejr", "--ell", 3, "--graph", fixtures_dir / "k33.graph", "--output", target)
        assert result.exit_code == 0
        election = read_election(target)
        assert (election.num_voters, election.num_candidates, election.committee_size) == (12, 10, 4)

    def test_reduced_instance_verifies(self, run, fixtures_dir, tmp_path):
        target = tmp_path / "pjr.appr"
        run("reduce", "--alg", "pjr", "--ell", 3, "--graph", fixtures_dir / "k33.graph", "--output", target)
        result = run("verify", "--axiom", "fpjr", "--input", target, "--committee", "3,4,5,6")
        assert result.exit_code == 1

    def test_small_ell_rejected(self, run, fixtures_dir):
        result = run("reduce", "--alg", "pjr", "--ell", 2, "--graph", fixtures_dir / "k33.graph")
        assert result.exit_code == 2

    def test_biclique(self, run, fixtures_dir):
        result = run("biclique", "--graph", fixtures_dir / "k33.graph", "--ell", 3, "--json")
        assert result.exit_code == 0
        details = json_of(result)["details"]
        assert details["found"] is True
        assert details["left"] == [0, 1, 2]

    def test_raw_byte_in_graph_file(self, run, tmp_path):
        path = tmp_path / "raw.graph"
        path.write_bytes(b"3 3\n0 0\n1 \xff\n")
        result = run("biclique", "--graph", path, "--ell", 2)
        assert result.exit_code == 2
        assert "raw.graph:3:3" in result.output.replace("\n", "")


class TestLab:
    def test_small_run_is_consistent(self, run):
        result = run(
            "lab", "--trials", 4, "--n", 5, "--m", 4, "--k", 2, "--seed", 7,
            "--rules", "seq-pav,equal-shares", "--no-progress", "--json",
        )
        assert result.exit_code == 0, result.output
        data = json_of(result)
        assert data["verdict"] == "consistent"
        assert data["details"]["trials"] == 4
        assert data["details"]["settings"]["seed"] == 7

    def test_same_seed_same_document(self, run):
        args = ("lab", "--trials", 3, "--n", 4, "--m", 4, "--k", 2, "--seed", 11, "--rules", "seq-phragmen", "--json")
        assert run(*args).stdout == run(*args).stdout

    def test_unknown_rule(self, run):
        result = run("lab", "--trials", 1, "--rules", "borda", "--no-progress")
        assert result.exit_code == 2

    def test_unknown_axiom(self, run):
        result = run("lab", "--trials", 1, "--axioms", "jr,strong-jr", "--no-progress")
        assert result.exit_code == 2

    def test_table_output(self, run):
        result = run("lab", "--trials", 2, "--n", 4, "--m", 4, "--k", 2, "--rules", "seq-pav", "--no-progress")
        assert result.exit_code == 0
        assert "No proven implication was contradicted" in result.output


class TestMinimize:
    def test_already_minimal_instance(self, run, tmp_path):
        path = tmp_path / "tiny.appr"
        path.write_text("1 1\n0\n")
        result = run("minimize", "--axiom", "jr", "--input", path, "--committee", "", "--json")
        assert result.exit_code == 0, result.output
        details = json_of(result)["details"]
        assert details["election"] == "1 1\n0\n"

    def test_keeps_premise(self, run, fixtures_dir, tmp_path):
        target = tmp_path / "small.appr"
        result = run(
            "minimize", "--axiom", "pjr+", "--keep-satisfied", "fpjr",
            "--input", fixtures_dir / "E3.appr", "--committee", "1,2,3,4,5,6", "--output", target,
        )
        assert result.exit_code == 0, result.output
        assert read_election(target).num_voters <= 12

    def test_satisfied_input_rejected(self, run, fixtures_dir):
        result = run("minimize", "--axiom", "fpjr", "--input", fixtures_dir / "E3.appr", "--committee", "1,2,3,4,5,6")
        assert result.exit_code == 2


def test_invalid_configuration_aborts(run, fixtures_dir, monkeypatch):
    monkeypatch.setattr(Config, "LAB_WORKERS", 0)
    result = run("elect", "--rule", "seq-pav", "--input", fixtures_dir / "E2.appr")
    assert result.exit_code == 1
    assert "Configuration Error" in result.output
