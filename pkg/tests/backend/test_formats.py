"""Election files, rationals and JSON report documents."""
from fractions import Fraction

import orjson
import pytest

from axioms.registry import verify
from election.models import Axiom, Committee, Election
from formats.election_file import parse_election, read_election, serialize_election, write_election
from formats.reports import (
    ReportDocument,
    dumps_report,
    election_digest,
    format_rational,
    load_report,
    parse_rational,
    recheck_document,
    report_for_axiom,
    report_for_matrix,
    report_for_per,
    report_for_price,
    report_for_rule,
    write_report,
)
from lab.matrix import ImplicationMatrix
from pricing.perfect import check_per
from pricing.priceability import check_priceable
from utils.errors import ElectionFileError, InputError, PreconditionError


class TestElectionFile:
    def test_fixture_files_match_the_worked_examples(self, fixtures_dir, e1, e2, e3):
        assert read_election(fixtures_dir / "E1.appr") == e1
        assert read_election(fixtures_dir / "E2.appr") == e2
        assert read_election(fixtures_dir / "E3.appr") == e3

    def test_empty_line_is_an_empty_ballot(self):
        election = parse_election("1 1\n\n")
        assert election.approvals == (frozenset(),)

    def test_comments(self):
        election = parse_election("# header comment\n\n2 1\n0 1  # both\n# skipped\n\n")
        assert election.approvals == (frozenset({0, 1}), frozenset())

    @pytest.mark.parametrize("text,line,column", [
        ("", 1, 1),
        ("3\n", 1, 1),
        ("# c\n3 2 1\n0\n", 2, 1),
        ("3 4\n0\n", 1, 3),
        ("0 1\n", 1, 1),
        ("3 2\n0 3\n", 2, 3),
        ("3 2\n1 0\n", 2, 3),
        ("3 2\n1 1\n", 2, 3),
        ("3 2\n0  x\n", 2, 4),
        ("3 2\n\u00b2\n", 2, 1),
        ("3 2\n", 1, 1),
    ])
    def test_errors_carry_their_location(self, text, line, column):
        with pytest.raises(ElectionFileError) as info:
            parse_election(text, source="bad.appr")
        assert (info.value.line, info.value.column) == (line, column)
        assert str(info.value).startswith(f"bad.appr:{line}:{column}:")

    def test_non_ascii_byte_is_located(self, tmp_path):
        path = tmp_path / "accent.appr"
        path.write_bytes(b"3 2\n# voter caf\xc3\xa9\n0\n")
        with pytest.raises(ElectionFileError) as info:
            read_election(path)
        assert (info.value.line, info.value.column) == (2, 12)
        assert "0xc3" in str(info.value)

    def test_canonical_text(self, e2):
        assert serialize_election(e2) == "6 3\n0\n1\n" + "2 3 4 5\n" * 4

    def test_written_file_reads_back(self, tmp_path, e3):
        path = write_election(e3, tmp_path / "nested" / "e3.appr")
        assert path.read_bytes().count(b"\r") == 0
        assert read_election(path) == e3


class TestRationals:
    def test_format(self):
        assert format_rational(Fraction(4, 3)) == "4/3"
        assert format_rational(Fraction(2)) == "2/1"
        assert format_rational(Fraction(-1, 3)) == "-1/3"

    def test_parse(self):
        assert parse_rational("4/3") == Fraction(4, 3)
        assert parse_rational(" 0/1 ") == 0

    @pytest.mark.parametrize("text", ["2/4", "1/0", "0.5", "3", "a/b", "1/-2"])
    def test_parse_rejects(self, text):
        with pytest.raises(InputError):
            parse_rational(text)


class TestDigest:
    def test_digest_ignores_comments(self, fixtures_dir, e1):
        assert election_digest(read_election(fixtures_dir / "E1.appr")) == election_digest(e1)

    def test_digest_shape(self, e1, e2):
        digest = election_digest(e1)
        assert digest.startswith("sha256:")
        assert len(digest) == len("sha256:") + 64
        assert digest != election_digest(e2)


class TestReports:
    def test_violation_document(self, e1, e1_winners):
        document = report_for_axiom(e1, e1_winners, verify(e1, e1_winners, Axiom.FPJR))
        assert document.verdict == "violated"
        assert document.axiom == "fpjr"
        assert document.certificate == {
            "kind": "cohesion",
            "coalition": [0, 1, 2],
            "witness": [0, 1, 2, 3, 4, 5],
            "level": 4,
        }
        assert recheck_document(document, e1)

    def test_deprivation_document(self, e3, e3_winners):
        document = report_for_axiom(e3, e3_winners, verify(e3, e3_winners, Axiom.PJR_PLUS))
        assert document.certificate["kind"] == "deprivation"
        assert recheck_document(document, e3)

    def test_digest_mismatch_fails_recheck(self, e1, e1_winners, e2):
        document = report_for_axiom(e1, e1_winners, verify(e1, e1_winners, Axiom.FPJR))
        assert not recheck_document(document, e2)

    def test_tampered_certificate_fails_recheck(self, e1, e1_winners):
        document = report_for_axiom(e1, e1_winners, verify(e1, e1_winners, Axiom.FPJR))
        document.certificate["coalition"] = [0, 1]
        assert not recheck_document(document, e1)

    def test_price_document(self, e2):
        committee = Committee.of({2, 3, 4})
        _, system = check_priceable(e2, committee)
        document = report_for_price(e2, committee, system)
        assert document.verdict == "satisfied"
        assert document.price_system["price"] == "4/3"
        assert recheck_document(document, e2)
        document.price_system["price"] = "1/1"
        assert not recheck_document(document, e2)

    def test_unpriceable_document_holds_a_reason(self, e2):
        document = report_for_price(e2, Committee.of({0, 2, 3}), None)
        assert document.verdict == "violated"
        assert document.certificate["kind"] == "reason"
        with pytest.raises(PreconditionError):
            recheck_document(document, e2)

    def test_partition_document(self):
        election = Election.from_ballots([{0}, {0}, {1, 2}, {1}, {2}, {2}], 3, 3)
        committee = Committee.of({0, 1, 2})
        _, partition = check_per(election, committee)
        document = report_for_per(election, committee, partition)
        assert document.partition["assigned"] == [0, 1, 2]
        assert recheck_document(document, election)

    def test_committee_size_is_recorded(self, e3):
        committee = Committee.of({0, 1, 2})
        scaled = e3.with_committee_size(3)
        document = report_for_axiom(scaled, committee, verify(scaled, committee, Axiom.EJR_PLUS))
        assert document.details["committee_size"] == 3
        assert document.certificate == {"kind": "deprivation", "coalition": list(range(6, 12)), "candidate": 3, "level": 1}
        assert recheck_document(document, scaled)
        assert not recheck_document(document, e3)

    def test_rule_document_has_no_evidence(self, e2):
        document = report_for_rule(e2, Committee.of({0, 2, 3}), "monroe", {"monroe_score": 5})
        assert document.verdict == "computed"
        assert document.details == {"monroe_score": 5}
        with pytest.raises(PreconditionError):
            recheck_document(document, e2)

    def test_matrix_document(self):
        document = report_for_matrix(ImplicationMatrix.empty([Axiom.PJR, Axiom.JR]), {"seed": 1})
        assert document.verdict == "consistent"
        assert document.election_digest is None
        assert document.details["settings"] == {"seed": 1}

    def test_json_is_sorted_and_skips_nulls(self, e2):
        document = report_for_rule(e2, Committee.of({0, 2, 3}), "greedy-monroe")
        text = dumps_report(document)
        data = orjson.loads(text)
        assert list(data) == sorted(data)
        assert "axiom" not in data
        assert data["committee"] == [0, 2, 3]

    def test_written_document_loads_back(self, tmp_path, e3, e3_winners):
        document = report_for_axiom(e3, e3_winners, verify(e3, e3_winners, Axiom.EJR_PLUS))
        path = write_report(document, tmp_path / "reports" / "ejr.json")
        loaded = load_report(path)
        assert isinstance(loaded, ReportDocument)
        assert loaded == document
        assert recheck_document(loaded, e3)
