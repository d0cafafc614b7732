"""JSON report documents for rules, verdicts, price systems and lab runs.

A document names the election by digest, never embeds it; certificates,
price systems and partitions are stored so that ``recheck_document`` can
re-validate them from the document and the election file alone.
"""
import hashlib
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import orjson
from pydantic import BaseModel, Field

from axioms.registry import recheck_certificate
from election.models import (
    Axiom,
    AxiomReport,
    CohesionCertificate,
    Committee,
    CoreDeviation,
    DeprivationCertificate,
    Election,
)
from pricing.perfect import PerPartition
from pricing.priceability import PriceSystem
from utils.errors import InputError, PreconditionError
from .election_file import serialize_election

_RATIONAL = re.compile(r"^(-?\d+)/(\d+)$")


class ReportDocument(BaseModel):
    """Schema of every ``--json`` output."""
    election_digest: Optional[str] = Field(default=None, description="sha256 of the canonical election text")
    committee: List[int] = Field(default_factory=list, description="Sorted 0-based winners")
    rule: Optional[str] = None
    axiom: Optional[str] = None
    verdict: str = Field(description="satisfied, violated, computed or broken")
    certificate: Optional[Dict[str, Any]] = None
    price_system: Optional[Dict[str, Any]] = None
    partition: Optional[Dict[str, Any]] = None
    details: Optional[Dict[str, Any]] = None


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of ``format_rational``; rejects anything not in lowest terms."""
    match = _RATIONAL.match(text.strip())
    if not match:
        raise InputError(f"rational '{text}' is not of the form num/den")
    num, den = int(match.group(1)), int(match.group(2))
    if den == 0:
        raise InputError(f"rational '{text}' has a zero denominator")
    value = Fraction(num, den)
    if value.denominator != den:
        raise InputError(f"rational '{text}' is not in lowest terms")
    return value


def election_digest(election: Election) -> str:
    return "sha256:" + hashlib.sha256(serialize_election(election).encode("ascii")).hexdigest()


def price_system_to_dict(system: PriceSystem) -> Dict[str, Any]:
    return {
        "price": format_rational(system.price),
        "payments": [
            {"voter": v, "candidate": c, "amount": format_rational(amount)}
            for (v, c), amount in sorted(system.payments.items())
            if amount
        ],
    }


def price_system_from_dict(data: Dict[str, Any]) -> PriceSystem:
    payments = {
        (int(p["voter"]), int(p["candidate"])): parse_rational(p["amount"])
        for p in data.get("payments", [])
    }
    return PriceSystem(price=parse_rational(data["price"]), payments=payments)


def certificate_from_dict(data: Dict[str, Any]):
    kind = data.get("kind")
    if kind == "cohesion":
        return CohesionCertificate(frozenset(data["coalition"]), frozenset(data["witness"]), int(data["level"]))
    if kind == "core-deviation":
        return CoreDeviation(frozenset(data["coalition"]), frozenset(data["alternative"]))
    if kind == "deprivation":
        return DeprivationCertificate(frozenset(data["coalition"]), int(data["candidate"]), int(data["level"]))
    raise PreconditionError(f"certificate of kind '{kind}' cannot be re-checked")


def _certificate_to_dict(certificate) -> Dict[str, Any]:
    if isinstance(certificate, str):
        return {"kind": "reason", "reason": certificate}
    return certificate.to_dict()


def report_for_axiom(election: Election, committee: Committee, report: AxiomReport) -> ReportDocument:
    document = ReportDocument(
        election_digest=election_digest(election),
        committee=list(committee.sorted_members()),
        axiom=report.axiom.value,
        verdict=report.verdict,
        details={"committee_size": election.committee_size, "examined": report.examined},
    )
    if report.certificate is not None:
        document.certificate = _certificate_to_dict(report.certificate)
    if isinstance(report.witness, PriceSystem):
        document.price_system = price_system_to_dict(report.witness)
    elif isinstance(report.witness, PerPartition):
        document.partition = report.witness.to_dict()
    return document


def report_for_rule(
    election: Election,
    committee: Committee,
    rule: str,
    details: Optional[Dict[str, Any]] = None
) -> ReportDocument:
    return ReportDocument(
        election_digest=election_digest(election),
        committee=list(committee.sorted_members()),
        rule=rule,
        verdict="computed",
        details=details,
    )


def report_for_price(
    election: Election,
    committee: Committee,
    system: Optional[PriceSystem]
) -> ReportDocument:
    return report_for_axiom(election, committee, _pricing_report(Axiom.PRICEABLE, system))


def report_for_per(
    election: Election,
    committee: Committee,
    partition: Optional[PerPartition]
) -> ReportDocument:
    return report_for_axiom(election, committee, _pricing_report(Axiom.PER, partition))


def _pricing_report(axiom: Axiom, witness) -> AxiomReport:
    if witness is not None:
        return AxiomReport(axiom=axiom, satisfied=True, witness=witness)
    return AxiomReport(axiom=axiom, satisfied=False, certificate=f"no {axiom.value} witness exists")


def report_for_matrix(matrix, settings: Dict[str, Any]) -> ReportDocument:
    """Lab run summary; ``verdict`` is ``broken`` when a proven implication failed."""
    details = matrix.to_document()
    details["settings"] = settings
    return ReportDocument(verdict="broken" if matrix.broken_arrows() else "consistent", details=details)


def recheck_document(document: ReportDocument, election: Election) -> bool:
    """Re-validate the evidence a document carries, without any search.

    Checks the digest, then the certificate (violated verdicts) or the price
    system / partition (satisfied priceability or PER). Raises
    PreconditionError when the document holds no checkable evidence.
    """
    if document.election_digest != election_digest(election):
        return False
    committee = Committee.of(document.committee, source="document")

    if document.verdict == "violated" and document.certificate is not None:
        certificate = certificate_from_dict(document.certificate)
        report = AxiomReport(axiom=Axiom(document.axiom), satisfied=False, certificate=certificate)
        return recheck_certificate(election, committee, report)
    if document.verdict == "satisfied" and document.price_system is not None:
        return not price_system_from_dict(document.price_system).violations(election, committee)
    if document.verdict == "satisfied" and document.partition is not None:
        partition = PerPartition(
            parts=tuple(frozenset(p) for p in document.partition["parts"]),
            assigned=tuple(document.partition["assigned"]),
        )
        return not partition.violations(election, committee)
    raise PreconditionError(f"a '{document.verdict}' document without a certificate or witness cannot be re-checked")


def dumps_report(document: ReportDocument) -> str:
    options = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS
    return orjson.dumps(document.model_dump(exclude_none=True), option=options).decode("utf-8")


def write_report(document: ReportDocument, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_report(document) + "\n", encoding="utf-8")
    return path


def load_report(path: Union[str, Path]) -> ReportDocument:
    return ReportDocument.model_validate(orjson.loads(Path(path).read_bytes()))
