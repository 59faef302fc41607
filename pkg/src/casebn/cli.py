"""Command-line surface.

Exit codes: 0 success, 1 validation or parse failure, 2 inference error
(zero-probability evidence).
"""

from __future__ import annotations

import json
import pathlib
import sys

import click

from . import bundles, dna, report
from .casemodel import (
    HYPOTHESIS,
    ScenarioError,
    case_config_from_dict,
    build_case_network,
    build_screening_example,
    full_evidence_scenario,
    knowledge_state_compare,
    run_scenario,
)
from .inference import likelihood_of_evidence, posterior
from .netfile import ParseError, parse_network_file, parse_scenario
from .network import Network, ZeroEvidenceError, validate_network

EXIT_INVALID = 1
EXIT_INFERENCE = 2


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_network(ref: str, config: str | None) -> Network:
    """Resolve a --network value: a bundled name or a network file path."""
    if ref in bundles.BUNDLED_NETWORKS:
        if config and ref.startswith("samoan-case"):
            cfg = load_case_config(config)
            if ref == "samoan-case":
                return build_case_network(cfg)
            dn = dna.build_dna_network(
                dna.CASE_ALLELE_FREQUENCIES, dna.CASE_MIXTURE, dna.CASE_CRIME_PROFILE
            )
            return build_case_network(cfg, dna=dn)
        return bundles.load_bundled_network(ref)
    path = pathlib.Path(ref)
    if not path.exists():
        _fail(f"network {ref!r} is neither a bundled name nor a file", EXIT_INVALID)
    try:
        doc = parse_network_file(path.read_text())
        net = doc.to_network()
    except (ParseError, ValueError) as exc:
        _fail(str(exc), EXIT_INVALID)
    violations = validate_network(net)
    if violations:
        _fail("; ".join(violations), EXIT_INVALID)
    return net


def load_case_config(path: str) -> CaseConfig:
    """CaseConfig overrides from a JSON file.

    Recognized keys: hypothesis_prior, samoan_share, knew_prior, dna_link,
    statement_cpt (parent columns keyed "murderer,report,knew").
    """
    raw = json.loads(pathlib.Path(path).read_text())
    return case_config_from_dict(raw)


@click.group()
def main() -> None:
    """Exact Bayesian-network inference for case and DNA evidence."""


@main.command()
@click.argument("path")
def validate(path: str) -> None:
    """Parse and validate a network file."""
    if path in bundles.BUNDLED_NETWORKS:
        text = bundles.data_text(f"{path}.bn")
    else:
        p = pathlib.Path(path)
        if not p.exists():
            _fail(f"no such file {path!r}", EXIT_INVALID)
        text = p.read_text()
    try:
        doc = parse_network_file(text)
        net = doc.to_network()
    except (ParseError, ValueError) as exc:
        _fail(str(exc), EXIT_INVALID)
    violations = validate_network(net)
    payload = report.validation_payload(net.name or path, violations)
    click.echo(report.to_json(payload), nl=False)
    if violations:
        sys.exit(EXIT_INVALID)


@main.command()
@click.option("--network", required=True, help="bundled name or network file path")
@click.option("--scenario", "scenario_ref", default=None,
              help="bundled name or scenario file path (omit for priors only)")
@click.option("--watch", multiple=True, help="extra variables to track")
@click.option("--format", "fmt", type=click.Choice(["table", "structured"]),
              default="table")
@click.option("--config", default=None, help="CaseConfig overrides (JSON file)")
def trace(network, scenario_ref, watch, fmt, config) -> None:
    """Run an evidence scenario and print the posterior trace."""
    net = _load_network(network, config)
    if scenario_ref is None:
        from .casemodel import Scenario
        sc = Scenario("empty", [])
    elif scenario_ref in bundles.BUNDLED_SCENARIOS:
        sc = bundles.load_bundled_scenario(scenario_ref)
    else:
        path = pathlib.Path(scenario_ref)
        if not path.exists():
            _fail(f"scenario {scenario_ref!r} not found", EXIT_INVALID)
        try:
            sc = parse_scenario(path.read_text())
        except ParseError as exc:
            _fail(str(exc), EXIT_INVALID)
    try:
        result = run_scenario(net, sc, tuple(watch))
    except ScenarioError as exc:
        _fail(str(exc), EXIT_INFERENCE)
    except KeyError as exc:
        _fail(str(exc), EXIT_INVALID)
    if fmt == "structured":
        click.echo(report.to_json(report.trace_payload(result)), nl=False)
    else:
        click.echo(report.trace_table(result), nl=False)


@main.command()
@click.option("--freqs", required=True, help="allele frequency CSV")
@click.option("--mixture", required=True, help="population mixture CSV")
@click.option("--profile", required=True, help="crime profile CSV")
@click.option("--format", "fmt", type=click.Choice(["table", "structured"]),
              default="table")
def lr(freqs, mixture, profile, fmt) -> None:
    """Per-marker, product-rule, and exact joint likelihood ratios."""
    try:
        table = dna.load_allele_frequencies(pathlib.Path(freqs).read_text())
        mix = dna.load_mixture(pathlib.Path(mixture).read_text())
        prof = dna.load_profile(pathlib.Path(profile).read_text())
        result = dna.build_lr_report(table, mix, prof)
    except (dna.DnaInputError, OSError) as exc:
        _fail(str(exc), EXIT_INVALID)
    except ZeroEvidenceError as exc:
        _fail(str(exc), EXIT_INFERENCE)
    if fmt == "structured":
        click.echo(report.to_json(report.lr_report_payload(result)), nl=False)
    else:
        click.echo(report.lr_table(result), nl=False)


@main.command()
@click.argument("name", type=click.Choice(
    ["screening", "samoan-sequence-one", "samoan-sequence-two"]))
@click.option("--config", default=None, help="CaseConfig overrides (JSON file)")
def demo(name, config) -> None:
    """Printed walkthroughs of the bundled examples."""
    cfg = load_case_config(config) if config else None
    if name == "screening":
        net = build_screening_example()
        p_e = likelihood_of_evidence(net, {"test": "positive"})
        p_d = posterior(net, {"test": "positive"}, "disease")["present"]
        click.echo("Screening test: prevalence 1%, sensitivity 99%, specificity 95%")
        click.echo(f"P(test positive)            = {p_e:.4f}")
        click.echo(f"P(disease | test positive)  = {p_d:.4f}")
        return
    net = build_case_network(cfg)
    cmp = knowledge_state_compare(net, full_evidence_scenario())
    if name == "samoan-sequence-one":
        click.echo("Sequence One: the defendant reported the Samoan before any DNA report")
        click.echo("(knowledge node instantiated false; all other evidence true)")
        trace_ = cmp.not_knowing
    else:
        click.echo("Sequence Two: the DNA report came first, then the defendant's story")
        click.echo("(knowledge node instantiated true; all other evidence true)")
        trace_ = cmp.knowing
    click.echo(report.trace_table(trace_), nl=False)
    final = trace_.final(HYPOTHESIS)["killer"]
    click.echo(f"final P(defendant was the killer) = {final:.4f}")


@main.command()
@click.option("--port", default=8000, type=int)
@click.option("--host", default="127.0.0.1")
def serve(port, host) -> None:
    """Run the HTTP service for the evidence-exploration UI."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
