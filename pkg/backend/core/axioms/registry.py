"""One entry point for every axiom, and independent re-checks of certificates."""
from typing import Optional, Union

from election.arithmetic import check_weak_cohesion, collective_utility, utility
from election.models import (
    Axiom,
    AxiomReport,
    CohesionCertificate,
    Committee,
    CoreDeviation,
    DeprivationCertificate,
    Election,
)
from pricing.perfect import check_per
from pricing.priceability import check_priceable
from utils.errors import InputError
from utils.logger import get_logger
from .budget import VerifierBudget
from .verifiers import VERIFIERS

logger = get_logger(__name__)


def verify(
    election: Election,
    committee: Committee,
    axiom: Union[Axiom, str],
    budget: Optional[VerifierBudget] = None
) -> AxiomReport:
    """Decide ``axiom`` for ``committee``.

    Priceability and PER carry their positive evidence (price system,
    partition) in ``AxiomReport.witness`` and a textual reason when violated.
    """
    try:
        axiom = Axiom(axiom)
    except ValueError:
        raise InputError(f"unknown axiom '{axiom}' (choose from {', '.join(a.value for a in Axiom)})")
    logger.debug(f"verifying {axiom.value} for committee {list(committee.sorted_members())}")

    if axiom == Axiom.PRICEABLE:
        ok, system = check_priceable(election, committee)
        if ok:
            return AxiomReport(axiom=axiom, satisfied=True, witness=system)
        return AxiomReport(
            axiom=axiom,
            satisfied=False,
            certificate="no price system supports the committee (priceability LP has no positive price)",
        )

    if axiom == Axiom.PER:
        ok, partition = check_per(election, committee)
        if ok:
            return AxiomReport(axiom=axiom, satisfied=True, witness=partition)
        n, k = election.num_voters, election.committee_size
        if n % k:
            reason = f"k={k} does not divide n={n}"
        elif len(committee) != k:
            reason = f"committee has {len(committee)} members, PER needs exactly k={k}"
        else:
            reason = "no equal partition of the voters onto distinct approved winners exists"
        return AxiomReport(axiom=axiom, satisfied=False, certificate=reason)

    return VERIFIERS[axiom](election, committee, budget)


def recheck_certificate(election: Election, committee: Committee, report: AxiomReport) -> bool:
    """Re-validate a violated report from the raw definitions, without search.

    Textual certificates (priceability, PER) cannot be re-checked this way
    and return False.
    """
    if report.satisfied:
        return False
    cert = report.certificate
    axiom = report.axiom
    n, k = election.num_voters, election.committee_size
    winners = committee.members

    if isinstance(cert, CohesionCertificate):
        if not check_weak_cohesion(election, cert):
            return False
        if axiom in (Axiom.EJR, Axiom.PJR, Axiom.JR) and len(cert.witness) != cert.level:
            return False
        if axiom in (Axiom.PJR, Axiom.FPJR, Axiom.JR):
            return collective_utility(election, cert.coalition, winners) < cert.level
        if axiom in (Axiom.EJR, Axiom.FJR):
            return all(utility(election, v, winners) < cert.level for v in cert.coalition)
        return False

    if isinstance(cert, CoreDeviation):
        if axiom != Axiom.CORE or not cert.coalition or not cert.alternative:
            return False
        if len(cert.coalition) * k < len(cert.alternative) * n:
            return False
        return all(
            utility(election, v, cert.alternative) > utility(election, v, winners)
            for v in cert.coalition
        )

    if isinstance(cert, DeprivationCertificate):
        if axiom not in (Axiom.EJR_PLUS, Axiom.PJR_PLUS) or not cert.coalition:
            return False
        election.check_candidate(cert.candidate)
        if cert.candidate in winners or cert.level < 1:
            return False
        if len(cert.coalition) * k < cert.level * n:
            return False
        if any(cert.candidate not in election.approvals[v] for v in cert.coalition):
            return False
        if axiom == Axiom.PJR_PLUS:
            return collective_utility(election, cert.coalition, winners) < cert.level
        return all(utility(election, v, winners) < cert.level for v in cert.coalition)

    return False
