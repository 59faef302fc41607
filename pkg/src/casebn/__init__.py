"""Exact inference for discrete Bayesian networks, with a forensic
evidence layer: sequential case-evidence propagation and DNA likelihood
ratios under a heterogeneous reference population."""

from .casemodel import (
    CaseConfig,
    KnowledgeComparison,
    PosteriorTrace,
    Scenario,
    ScenarioError,
    ScenarioStep,
    TraceStep,
    build_case_network,
    build_screening_example,
    case_config_from_dict,
    full_evidence_scenario,
    knowledge_state_compare,
    core_evidence_scenario,
    run_scenario,
)
from .dna import (
    AlleleFrequencyTable,
    CrimeProfile,
    DnaInputError,
    LrReport,
    MarkerLr,
    PopulationMixture,
    build_dna_network,
    build_lr_report,
    exact_joint_lr,
    per_marker_lr,
    product_rule_lr,
)
from .inference import (
    brute_force_likelihood,
    brute_force_posterior,
    elimination_order,
    likelihood_of_evidence,
    likelihood_ratio,
    posterior,
    prior_marginal,
)
from .netfile import (
    NetworkFile,
    ParseError,
    emit_network_file,
    emit_scenario,
    parse_network_file,
    parse_scenario,
)
from .network import (
    Cpt,
    Distribution,
    Evidence,
    Network,
    StateSpaceError,
    Variable,
    ZeroEvidenceError,
    topological_order,
    validate_network,
)
from .templates import (
    NetworkTemplate,
    SlotRef,
    TemplateCpt,
    TemplateError,
    TemplateInstance,
    instantiate,
    instantiate_all,
)

__version__ = "0.1.0"

__all__ = [
    "AlleleFrequencyTable",
    "CaseConfig",
    "Cpt",
    "CrimeProfile",
    "Distribution",
    "DnaInputError",
    "Evidence",
    "KnowledgeComparison",
    "LrReport",
    "MarkerLr",
    "Network",
    "NetworkFile",
    "NetworkTemplate",
    "ParseError",
    "PopulationMixture",
    "PosteriorTrace",
    "Scenario",
    "ScenarioError",
    "ScenarioStep",
    "SlotRef",
    "StateSpaceError",
    "TemplateCpt",
    "TemplateError",
    "TemplateInstance",
    "TraceStep",
    "Variable",
    "ZeroEvidenceError",
    "brute_force_likelihood",
    "brute_force_posterior",
    "build_case_network",
    "build_dna_network",
    "build_lr_report",
    "build_screening_example",
    "case_config_from_dict",
    "elimination_order",
    "emit_network_file",
    "emit_scenario",
    "exact_joint_lr",
    "full_evidence_scenario",
    "instantiate",
    "instantiate_all",
    "knowledge_state_compare",
    "likelihood_of_evidence",
    "likelihood_ratio",
    "core_evidence_scenario",
    "parse_network_file",
    "parse_scenario",
    "per_marker_lr",
    "posterior",
    "prior_marginal",
    "product_rule_lr",
    "run_scenario",
    "topological_order",
    "validate_network",
]
