"""Command-line interface for Proportionality Lab.

Runs committee rules, decides proportionality axioms with certificates,
compiles biclique instances into elections and drives the implication lab.
Uses Click for command structure and Rich for terminal output; ``--json``
switches stdout to the report document schema.

Exit codes: 0 computed (and satisfied), 1 violated or a proven implication
broke in the lab, 2 usage or input error, 3 search budget exceeded.
"""
import functools
import sys
from fractions import Fraction
from typing import Optional

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from axioms.budget import VerifierBudget
from axioms.registry import verify
from config import Config
from election.models import Axiom, Committee
from formats.election_file import read_election, serialize_election, write_election
from formats.reports import (
    ReportDocument,
    dumps_report,
    format_rational,
    report_for_axiom,
    report_for_matrix,
    report_for_per,
    report_for_price,
    report_for_rule,
    write_report,
)
from lab.cultures import BallotCulture, CultureModel, TrialShape
from lab.matrix import PROVEN_IMPLICATIONS, run_matrix
from lab.minimize import minimize_counterexample
from pricing.perfect import check_per
from pricing.priceability import check_priceable
from reductions.compilers import REDUCTIONS
from reductions.graphs import biclique_exists, read_graph
from rules.monroe import greedy_monroe, monroe_exact
from rules.pav import pav_score
from rules.registry import RULES, run_rule
from utils.errors import BudgetExceededError, InputError, PreconditionError
from utils.logger import get_logger, setup_logging

console = Console()
err_console = Console(stderr=True)
logger = get_logger(__name__)

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

AXIOM_NAMES = [a.value for a in Axiom]


def handle_errors(command):
    """Map library errors onto exit codes 2 and 3."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (InputError, PreconditionError) as e:
            err_console.print(f"[red]Error: {e}[/red]")
            sys.exit(EXIT_USAGE)
        except BudgetExceededError as e:
            err_console.print(f"[yellow]Budget exceeded: {e}[/yellow]")
            sys.exit(EXIT_BUDGET)
    return wrapper


def parse_committee(value: str) -> Committee:
    """``"0,1,2"`` -> Committee; an empty string is the empty committee."""
    value = value.strip()
    if not value:
        return Committee.of((), source="cli")
    try:
        members = [int(part) for part in value.split(",")]
    except ValueError:
        raise click.BadParameter(f"'{value}' is not a comma-separated list of indices", param_hint="--committee")
    if len(set(members)) != len(members):
        raise click.BadParameter("committee lists a candidate twice", param_hint="--committee")
    return Committee.of(members, source="cli")


def _budget(max_subsets: Optional[int], max_witness: Optional[int]) -> Optional[VerifierBudget]:
    if max_subsets is None and max_witness is None:
        return None
    return VerifierBudget(max_witness_size=max_witness, max_subsets_examined=max_subsets)


def _emit(document: ReportDocument, as_json: bool, output: Optional[str]) -> None:
    if output:
        path = write_report(document, output)
        if not as_json:
            console.print(f"[green]✓ Report written to {path}[/green]")
    if as_json:
        click.echo(dumps_report(document))


def _members(committee: Committee) -> str:
    return "{" + ", ".join(str(c) for c in committee.sorted_members()) + "}"


def _show_certificate(document: ReportDocument) -> None:
    table = Table(title=f"{document.axiom} certificate")
    table.add_column("Field", style="cyan")
    table.add_column("Value", style="magenta")
    for key, value in (document.certificate or {}).items():
        table.add_row(key, str(value))
    console.print(table)


@click.group()
@click.option('--log-level', default=None, help='Logging level (DEBUG, INFO, WARNING, ERROR)')
def cli(log_level):
    """Proportionality Lab - committee rules, axiom verifiers and the implication lab."""
    setup_logging(log_level=log_level)
    Config.create_directories()

    # Validate configuration
    try:
        Config.validate()
    except ValueError as e:
        err_console.print(f"[red]Configuration Error: {e}[/red]")
        err_console.print("[yellow]Please check your .env file[/yellow]")
        raise click.Abort()


@cli.command()
@click.option('--rule', required=True, type=click.Choice(list(RULES)), help='Committee rule')
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True, dir_okay=False), help='Election file (.appr)')
@click.option('--delta', default=None, help='LS-PAV swap threshold as a rational, e.g. 1/4')
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report')
@click.option('--output', default=None, help='Also write the JSON report here')
@handle_errors
def elect(rule, input_path, delta, as_json, output):
    """Run a committee rule on an election."""
    election = read_election(input_path)
    try:
        delta_value = Fraction(delta) if delta else None
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--delta '{delta}' is not a rational number")

    details = {}
    if rule == "monroe":
        committee, assignment = monroe_exact(election)
        details["monroe_score"] = assignment.score
        details["assignment"] = list(assignment.assignment)
    elif rule == "greedy-monroe":
        committee, assignment = greedy_monroe(election)
        details["monroe_score"] = assignment.score
        details["assignment"] = list(assignment.assignment)
    else:
        committee = run_rule(rule, election, delta=delta_value)
    details["pav_score"] = format_rational(pav_score(election, committee))

    document = report_for_rule(election, committee, rule, details)
    if not as_json:
        console.print(f"[bold blue]{rule}[/bold blue] on n={election.num_voters}, m={election.num_candidates}, k={election.committee_size}")
        console.print(f"[green]✓ Committee {_members(committee)}[/green] ({len(committee)} seats)")
        console.print(f"  PAV score: [cyan]{details['pav_score']}[/cyan]")
        if "monroe_score" in details:
            console.print(f"  Monroe score: [cyan]{details['monroe_score']}[/cyan]")
    _emit(document, as_json, output)


@cli.command(name="verify")
@click.option('--axiom', required=True, type=click.Choice(AXIOM_NAMES), help='Axiom to decide')
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True, dir_okay=False), help='Election file (.appr)')
@click.option('--committee', required=True, help='Comma-separated winners, e.g. 0,1,2')
@click.option('--max-subsets', type=int, default=None, help='Search budget (subsets examined)')
@click.option('--max-witness', type=int, default=None, help='Largest witness set to enumerate')
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report')
@click.option('--output', default=None, help='Also write the JSON report here')
@handle_errors
def verify_command(axiom, input_path, committee, max_subsets, max_witness, as_json, output):
    """Decide an axiom for a committee; exit 1 with a certificate when violated."""
    election = read_election(input_path)
    winners = parse_committee(committee)
    report = verify(election, winners, axiom, _budget(max_subsets, max_witness))
    document = report_for_axiom(election, winners, report)

    if not as_json:
        if report.satisfied:
            console.print(f"[green]✓ {axiom} satisfied[/green] by {_members(winners)}")
            if document.price_system:
                console.print(f"  price: [cyan]{document.price_system['price']}[/cyan]")
        else:
            console.print(f"[red]✗ {axiom} violated[/red] by {_members(winners)}")
            _show_certificate(document)
    _emit(document, as_json, output)
    sys.exit(EXIT_OK if report.satisfied else EXIT_VIOLATED)


@cli.command()
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True, dir_okay=False), help='Election file (.appr)')
@click.option('--committee', required=True, help='Comma-separated winners')
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report')
@click.option('--output', default=None, help='Also write the JSON report here')
@handle_errors
def price(input_path, committee, as_json, output):
    """Find a price system supporting the committee (maximal price)."""
    election = read_election(input_path)
    winners = parse_committee(committee)
    ok, system = check_priceable(election, winners)
    document = report_for_price(election, winners, system)

    if not as_json:
        if ok:
            console.print(f"[green]✓ Priceable[/green] at price [cyan]{format_rational(system.price)}[/cyan]")
            table = Table(title="Payments")
            table.add_column("Voter", style="cyan")
            table.add_column("Candidate", style="cyan")
            table.add_column("Amount", style="green")
            for (v, c), amount in sorted(system.payments.items()):
                if amount:
                    table.add_row(str(v), str(c), format_rational(amount))
            console.print(table)
        else:
            console.print(f"[red]✗ {_members(winners)} is not priceable[/red]")
    _emit(document, as_json, output)
    sys.exit(EXIT_OK if ok else EXIT_VIOLATED)


@cli.command()
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True, dir_okay=False), help='Election file (.appr)')
@click.option('--committee', required=True, help='Comma-separated winners')
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report')
@click.option('--output', default=None, help='Also write the JSON report here')
@handle_errors
def per(input_path, committee, as_json, output):
    """Decide perfect representation and print the voter partition."""
    election = read_election(input_path)
    winners = parse_committee(committee)
    ok, partition = check_per(election, winners)
    document = report_for_per(election, winners, partition)

    if not as_json:
        if ok:
            console.print("[green]✓ Perfect representation[/green]")
            table = Table(title="Partition")
            table.add_column("Winner", style="cyan")
            table.add_column("Voters", style="green")
            for part, c in zip(partition.parts, partition.assigned):
                table.add_row(str(c), ", ".join(str(v) for v in sorted(part)))
            console.print(table)
        else:
            console.print(f"[red]✗ {_members(winners)} does not perfectly represent the voters[/red]")
    _emit(document, as_json, output)
    sys.exit(EXIT_OK if ok else EXIT_VIOLATED)


@cli.command()
@click.option('--alg', required=True, type=click.Choice(sorted(REDUCTIONS)), help='pjr (FPJR/PJR hardness) or ejr (FJR/EJR/core hardness)')
@click.option('--ell', required=True, type=int, help='Biclique size (>= 3)')
@click.option('--graph', 'graph_path', required=True, type=click.Path(exists=True, dir_okay=False), help='Bipartite edge list')
@click.option('--output', default=None, help='Write the compiled election here')
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report')
@handle_errors
def reduce(alg, ell, graph_path, output, as_json):
    """Compile a Balanced Biclique instance into an election and committee."""
    graph = read_graph(graph_path)
    compiled = REDUCTIONS[alg](graph, ell)
    election = compiled.election
    if output:
        write_election(election, output)

    details = compiled.to_dict()
    details["election"] = serialize_election(election)
    document = report_for_rule(election, compiled.winner, f"reduce-{alg}", details)
    if as_json:
        click.echo(dumps_report(document))
        return

    if output:
        console.print(f"[green]✓ Election written to {output}[/green]")
    else:
        click.echo(serialize_election(election), nl=False)
    table = Table(title=f"reduce-{alg} (ell={ell})")
    table.add_column("Group", style="cyan")
    table.add_column("Size", style="green")
    for label, members in {**compiled.voter_groups, **compiled.candidate_groups}.items():
        table.add_row(label, str(len(members)))
    console.print(table)
    console.print(f"n={election.num_voters}, m={election.num_candidates}, k={election.committee_size}, W={_members(compiled.winner)}")


@cli.command()
@click.option('--graph', 'graph_path', required=True, type=click.Path(exists=True, dir_okay=False), help='Bipartite edge list')
@click.option('--ell', required=True, type=int, help='Biclique size')
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report')
@handle_errors
def biclique(graph_path, ell, as_json):
    """Search for an ell x ell biclique by brute force."""
    graph = read_graph(graph_path)
    found = biclique_exists(graph, ell)
    details = {"ell": ell, "found": found is not None}
    if found:
        details["left"], details["right"] = list(found[0]), list(found[1])
    if as_json:
        click.echo(dumps_report(ReportDocument(verdict="computed", details=details)))
    elif found:
        console.print(f"[green]✓ Biclique found[/green] L'={list(found[0])}, R'={list(found[1])}")
    else:
        console.print(f"[yellow]No {ell}x{ell} biclique[/yellow]")


@cli.command()
@click.option('--trials', default=100, show_default=True, type=int, help='Random elections to draw')
@click.option('--model', default='impartial', show_default=True, type=click.Choice([m.value for m in CultureModel]), help='Ballot culture')
@click.option('--seed', default=None, type=int, help='Master seed (default LAB_SEED)')
@click.option('--n', 'num_voters', default=8, show_default=True, type=int, help='Voters (upper bound with --vary-sizes)')
@click.option('--m', 'num_candidates', default=8, show_default=True, type=int, help='Candidates')
@click.option('--k', 'committee_size', default=4, show_default=True, type=int, help='Committee size')
@click.option('--p', default=0.5, show_default=True, type=float, help='Approval probability')
@click.option('--parties', default=2, show_default=True, type=int, help='Parties (party-list)')
@click.option('--mixing', default=0.5, show_default=True, type=float, help='Copy strength (urn)')
@click.option('--vary-sizes', is_flag=True, help='Draw n, m, k per trial up to the given sizes')
@click.option('--divisible', is_flag=True, help='Force k to divide n')
@click.option('--rules', default=','.join(RULES), show_default=True, help='Comma-separated rules')
@click.option('--axioms', default=','.join(AXIOM_NAMES), show_default=True, help='Comma-separated axioms')
@click.option('--workers', default=None, type=int, help='Worker processes (default LAB_WORKERS)')
@click.option('--max-subsets', type=int, default=None, help='Verifier budget per axiom')
@click.option('--no-progress', is_flag=True, help='Hide the progress bar')
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report')
@click.option('--output', default=None, help='Also write the JSON report here')
@handle_errors
def lab(trials, model, seed, num_voters, num_candidates, committee_size, p, parties, mixing,
        vary_sizes, divisible, rules, axioms, workers, max_subsets, no_progress, as_json, output):
    """Build the empirical implication matrix; exit 1 if a proven arrow breaks."""
    seed = Config.LAB_SEED if seed is None else seed
    culture = BallotCulture(model=model, seed=seed, p=p, parties=parties, mixing=mixing)
    shape = TrialShape(num_voters, num_candidates, committee_size, vary=vary_sizes, divisible=divisible)
    rule_names = [r.strip() for r in rules.split(",") if r.strip()]
    try:
        axiom_list = [Axiom(a.strip()) for a in axioms.split(",") if a.strip()]
    except ValueError as e:
        raise InputError(str(e))

    matrix = run_matrix(
        trials, culture, rule_names, axiom_list, shape,
        budget=_budget(max_subsets, None),
        workers=workers,
        progress=not no_progress and not as_json,
    )
    settings = {
        "trials": trials, "model": model, "seed": seed, "n": num_voters, "m": num_candidates,
        "k": committee_size, "p": p, "parties": parties, "mixing": mixing,
        "vary_sizes": vary_sizes, "divisible": divisible, "rules": rule_names,
    }
    document = report_for_matrix(matrix, settings)
    broken = matrix.broken_arrows()

    if not as_json:
        table = Table(title=f"Proven implications over {matrix.evaluations} evaluations")
        table.add_column("Arrow", style="cyan")
        table.add_column("A sat, B sat", style="green")
        table.add_column("A sat, B viol", style="red")
        table.add_column("A viol", style="yellow")
        for a, b in PROVEN_IMPLICATIONS:
            if (a, b) in matrix.pairs:
                counts = matrix.pairs[(a, b)]
                table.add_row(f"{a.value} => {b.value}", str(counts.sat_sat), str(counts.sat_viol), str(counts.viol))
        console.print(table)
        console.print(f"Inconclusive: {matrix.inconclusive}  Skipped: {matrix.skipped}")
        if broken:
            console.print(Panel(
                "[bold red]✗ Proven implications broke:[/bold red]\n"
                + "\n".join(f"{a.value} => {b.value}" for a, b in broken),
                style="red"
            ))
        else:
            console.print("[bold green]✓ No proven implication was contradicted[/bold green]")
    _emit(document, as_json, output)
    sys.exit(EXIT_VIOLATED if broken else EXIT_OK)


@cli.command()
@click.option('--axiom', required=True, type=click.Choice(AXIOM_NAMES), help='Violated axiom to preserve')
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True, dir_okay=False), help='Election file (.appr)')
@click.option('--committee', required=True, help='Comma-separated winners')
@click.option('--keep-satisfied', default=None, type=click.Choice(AXIOM_NAMES), help='Axiom that must stay satisfied')
@click.option('--output', default=None, help='Write the minimized election here')
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report')
@handle_errors
def minimize(axiom, input_path, committee, keep_satisfied, output, as_json):
    """Shrink a violating instance by deleting voters and non-winning candidates."""
    election = read_election(input_path)
    winners = parse_committee(committee)
    small, small_committee = minimize_counterexample(
        election, winners, Axiom(axiom),
        keep_satisfied=Axiom(keep_satisfied) if keep_satisfied else None,
    )
    if output:
        write_election(small, output)

    report = verify(small, small_committee, axiom)
    document = report_for_axiom(small, small_committee, report)
    document.details["election"] = serialize_election(small)
    if as_json:
        click.echo(dumps_report(document))
        return

    console.print(
        f"[green]✓ Minimized[/green] n={election.num_voters}→{small.num_voters}, "
        f"m={election.num_candidates}→{small.num_candidates}; committee {_members(small_committee)}"
    )
    if output:
        console.print(f"[green]✓ Election written to {output}[/green]")
    else:
        click.echo(serialize_election(small), nl=False)
    _show_certificate(document)


if __name__ == "__main__":
    cli()
