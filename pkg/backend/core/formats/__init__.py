"""Election files and JSON report documents."""
from .election_file import parse_election, read_ascii, read_election, serialize_election, write_election
from .reports import (
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

__all__ = [
    "parse_election",
    "read_ascii",
    "read_election",
    "serialize_election",
    "write_election",
    "ReportDocument",
    "dumps_report",
    "election_digest",
    "format_rational",
    "load_report",
    "parse_rational",
    "recheck_document",
    "report_for_axiom",
    "report_for_matrix",
    "report_for_per",
    "report_for_price",
    "report_for_rule",
    "write_report",
]
