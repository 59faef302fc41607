"""Bundled demo assets: the case networks, scenarios, and DNA input tables.

The shipped files under casebn/data/ are generated from these builders by
scripts/make_bundled.py, so they are always in canonical form and re-emit
byte-identically after a parse.
"""

from __future__ import annotations

from importlib import resources

from . import casemodel, dna
from .casemodel import CaseConfig, build_case_network, build_screening_example
from .netfile import NetworkFile, parse_network_file, parse_scenario
from .network import Cpt, Network, Variable
from .templates import TemplateInstance

BUNDLED_NETWORKS = ("samoan-case", "samoan-case-dna", "screening-example")
BUNDLED_SCENARIOS = ("core-evidence", "full-evidence")


def _doc_from_network(net: Network) -> NetworkFile:
    return NetworkFile(
        name=net.name,
        variables=list(net.variables),
        cpts=[net.cpts[v.id] for v in net.variables],
    )


def samoan_case_doc(cfg: CaseConfig | None = None) -> NetworkFile:
    return _doc_from_network(build_case_network(cfg))


def screening_doc() -> NetworkFile:
    return _doc_from_network(build_screening_example())


def samoan_case_dna_doc(cfg: CaseConfig | None = None) -> NetworkFile:
    """Case network plus the six-marker DNA blocks as template instances."""
    mix = dna.CASE_MIXTURE
    profile = dna.CASE_CRIME_PROFILE
    freqs = dna.CASE_ALLELE_FREQUENCIES
    host_dna = Network(
        name="dna-host",
        variables=[
            Variable(dna.SAMOAN_NODE, ("true", "false"), "Unknown profile is of Samoan origin"),
            Variable(dna.SUBPOP_NODE, mix.populations, "Subpopulation of alternative donor"),
        ],
        cpts={
            dna.SAMOAN_NODE: Cpt(dna.SAMOAN_NODE, (), {(): (0.5, 0.5)}),
            dna.SUBPOP_NODE: Cpt(dna.SUBPOP_NODE, (), {(): mix.weights}),
        },
    )
    host = build_case_network(cfg, dna=host_dna)
    doc = _doc_from_network(host)
    doc.name = "samoan-case-dna"
    for marker in profile.markers():
        alleles = profile.alleles(marker)
        tmpl = dna.marker_template(marker, alleles, mix.populations)
        doc.templates.append(tmpl)
        parameters = {
            "samoan": dna._frequency_vector(freqs, marker, "Samoan", alleles)
        }
        for pop in mix.populations:
            parameters[pop] = dna._frequency_vector(freqs, marker, pop, alleles)
        doc.instances.append(
            TemplateInstance(
                template=tmpl.name,
                instance_id=marker,
                bindings={dna.SAMOAN_NODE: dna.SAMOAN_NODE, dna.SUBPOP_NODE: dna.SUBPOP_NODE},
                parameters=parameters,
            )
        )
    return doc


def bundled_docs() -> dict[str, NetworkFile]:
    return {
        "samoan-case": samoan_case_doc(),
        "samoan-case-dna": samoan_case_dna_doc(),
        "screening-example": screening_doc(),
    }


def bundled_scenarios():
    return {
        "core-evidence": casemodel.core_evidence_scenario(),
        "full-evidence": casemodel.full_evidence_scenario(),
    }


# --- Access to the shipped data files ---------------------------------------


def data_text(filename: str) -> str:
    return (resources.files("casebn") / "data" / filename).read_text()


def load_bundled_network_file(name: str) -> NetworkFile:
    if name not in BUNDLED_NETWORKS:
        raise KeyError(f"no bundled network {name!r}; have {BUNDLED_NETWORKS}")
    return parse_network_file(data_text(f"{name}.bn"))


def load_bundled_network(name: str) -> Network:
    return load_bundled_network_file(name).to_network()


def load_bundled_scenario(name: str):
    if name not in BUNDLED_SCENARIOS:
        raise KeyError(f"no bundled scenario {name!r}; have {BUNDLED_SCENARIOS}")
    return parse_scenario(data_text(f"{name}.scenario"))


def load_bundled_dna_inputs():
    freqs = dna.load_allele_frequencies(data_text("allele-frequencies.csv"))
    mix = dna.load_mixture(data_text("mixture.csv"))
    profile = dna.load_profile(data_text("profile.csv"))
    return freqs, mix, profile
