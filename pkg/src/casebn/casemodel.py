"""The murder-case network and its evidence scenarios.

The model centres on a two-state hypothesis
node (killer vs witness) with four conditionally independent evidence
children, a three-state Murderer node, a Samoan-origin indicator, a
knowledge-state switch, and the defendant's statement node with its
twelve-column CPT.  The DNA findings enter either as a two-state summary
node (standalone variant) or as the full marker network merged in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import dna as dna_mod
from .inference import posterior
from .network import Cpt, Distribution, Network, Variable, ZeroEvidenceError, validate_network

HYPOTHESIS = "hypothesis"
MURDERER = "murderer"
KNEW = "knew"
STATEMENT = "statement"
DNA_REPORT = "dna_report"

EVIDENCE_ITEMS = ("running", "blood", "no_one_else", "silent")

# P(item = true | killer), P(item = true | witness)
EVIDENCE_CPT = {
    "running": (0.99, 0.8),
    "blood": (0.9, 0.8),
    "no_one_else": (0.9, 0.1),
    "silent": (0.9, 0.3),
}

EVIDENCE_LABELS = {
    "running": "Defendant was running near the scene",
    "blood": "Victim's blood on his clothes",
    "no_one_else": "No one else seen",
    "silent": "Defendant remained silent",
}

# P(statement = true | murderer, report supports Samoan theory, knew),
# twelve columns, used verbatim including the asymmetries.
DEFAULT_STATEMENT_CPT = {
    ("defendant", "true", "true"): 1.0,
    ("defendant", "true", "false"): 0.05,
    ("defendant", "false", "true"): 0.0,
    ("defendant", "false", "false"): 0.05,
    ("other", "true", "true"): 0.5,
    ("other", "true", "false"): 0.0,
    ("other", "false", "true"): 0.0,
    ("other", "false", "false"): 0.0,
    ("samoan", "true", "true"): 1.0,
    ("samoan", "true", "false"): 1.0,
    ("samoan", "false", "true"): 0.99,
    ("samoan", "false", "false"): 1.0,
}

# P(DNA report supports the Samoan theory | murderer).  The 0.997/0.0033
# pair characterizes the report's roughly 302:1 likelihood ratio; it is the
# calibration knob behind the statement/DNA-report trace values.
DEFAULT_DNA_LINK = {
    "defendant": 0.0033,
    "other": 0.0033,
    "samoan": 0.997,
}


def case_config_from_dict(raw: dict) -> "CaseConfig":
    """Build a CaseConfig from JSON-style overrides.

    Recognized keys: hypothesis_prior, samoan_share, knew_prior, dna_link,
    statement_cpt (parent columns keyed "murderer,report,knew").
    """
    cfg = CaseConfig()
    if "hypothesis_prior" in raw:
        cfg.hypothesis_prior = tuple(raw["hypothesis_prior"])
    if "samoan_share" in raw:
        cfg.samoan_share = float(raw["samoan_share"])
    if "knew_prior" in raw:
        cfg.knew_prior = float(raw["knew_prior"])
    if "dna_link" in raw:
        cfg.dna_link.update({k: float(v) for k, v in raw["dna_link"].items()})
    if "statement_cpt" in raw:
        for key, value in raw["statement_cpt"].items():
            cfg.statement_cpt[tuple(key.split(","))] = float(value)
    cfg.validate()
    return cfg


class ScenarioError(ValueError):
    """A scenario step is unresolvable or has zero probability."""

    def __init__(self, message: str, step_index: int | None = None):
        super().__init__(message)
        self.step_index = step_index


@dataclass
class CaseConfig:
    hypothesis_prior: tuple[float, float] = (0.5, 0.5)  # killer, witness
    samoan_share: float = 0.01  # share of Samoans among alternative killers
    knew_prior: float = 0.5  # prior that the defendant knew the DNA report
    statement_cpt: dict[tuple[str, str, str], float] = field(
        default_factory=lambda: dict(DEFAULT_STATEMENT_CPT)
    )
    dna_link: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_DNA_LINK))

    def validate(self) -> None:
        probs = list(self.hypothesis_prior) + [self.samoan_share, self.knew_prior]
        probs += list(self.statement_cpt.values()) + list(self.dna_link.values())
        for p in probs:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"case configuration probability {p} outside [0, 1]")
        if abs(sum(self.hypothesis_prior) - 1.0) > 1e-9:
            raise ValueError("hypothesis prior does not sum to 1")
        if set(self.statement_cpt) != set(DEFAULT_STATEMENT_CPT):
            raise ValueError("statement CPT must cover all twelve parent columns")
        if set(self.dna_link) != {"defendant", "other", "samoan"}:
            raise ValueError("DNA link CPT must cover defendant/other/samoan")


@dataclass
class ScenarioStep:
    variable: str
    state: str
    label: str = ""

    def __post_init__(self):
        if not self.label:
            self.label = f"{self.variable}={self.state}"


@dataclass
class Scenario:
    name: str
    steps: list[ScenarioStep]

    def __post_init__(self):
        seen: set[str] = set()
        for step in self.steps:
            if step.variable in seen:
                raise ScenarioError(
                    f"variable {step.variable!r} instantiated twice in scenario"
                )
            seen.add(step.variable)


@dataclass
class TraceStep:
    index: int  # 0 is the prior state, step k conditions on the first k items
    label: str
    evidence: dict[str, str]
    posteriors: dict[str, Distribution]


@dataclass
class PosteriorTrace:
    scenario: str
    watched: tuple[str, ...]
    steps: list[TraceStep]

    def final(self, var: str) -> Distribution:
        return self.steps[-1].posteriors[var]


@dataclass
class KnowledgeComparison:
    not_knowing: PosteriorTrace
    knowing: PosteriorTrace
    guilt_gap: float  # final P(killer | knew) - P(killer | did not know)


def build_case_network(cfg: CaseConfig | None = None, dna: Network | None = None) -> Network:
    """Assemble the case network, optionally merging the full DNA network.

    Without `dna`, a two-state summary node carrying the report's roughly
    300:1 likelihood characterization stands in as the statement's DNA
    parent.  With `dna`, the merged network's Samoan-origin indicator takes
    that role and becomes a child of the Murderer node.
    """
    cfg = cfg or CaseConfig()
    cfg.validate()
    p_killer, p_witness = cfg.hypothesis_prior

    variables = [
        Variable(HYPOTHESIS, ("killer", "witness"), "Defendant was the killer or a witness"),
    ]
    cpts = {
        HYPOTHESIS: Cpt(HYPOTHESIS, (), {(): (p_killer, p_witness)}),
    }
    for item in EVIDENCE_ITEMS:
        t_killer, t_witness = EVIDENCE_CPT[item]
        variables.append(Variable(item, ("true", "false"), EVIDENCE_LABELS[item]))
        cpts[item] = Cpt(
            item,
            (HYPOTHESIS,),
            {
                ("killer",): (t_killer, 1.0 - t_killer),
                ("witness",): (t_witness, 1.0 - t_witness),
            },
        )
    variables.append(Variable(MURDERER, ("defendant", "other", "samoan"), "Murderer"))
    cpts[MURDERER] = Cpt(
        MURDERER,
        (HYPOTHESIS,),
        {
            ("killer",): (1.0, 0.0, 0.0),
            ("witness",): (0.0, 1.0 - cfg.samoan_share, cfg.samoan_share),
        },
    )
    variables.append(
        Variable(KNEW, ("true", "false"), "Defendant knew about the DNA report")
    )
    cpts[KNEW] = Cpt(KNEW, (), {(): (cfg.knew_prior, 1.0 - cfg.knew_prior)})

    if dna is None:
        report_node = DNA_REPORT
        variables.append(
            Variable(DNA_REPORT, ("true", "false"), "DNA report supports Samoan theory")
        )
        cpts[DNA_REPORT] = Cpt(
            DNA_REPORT,
            (MURDERER,),
            {
                (m,): (cfg.dna_link[m], 1.0 - cfg.dna_link[m])
                for m in ("defendant", "other", "samoan")
            },
        )
    else:
        report_node = dna_mod.SAMOAN_NODE
        if report_node not in dna:
            raise ValueError("DNA network lacks a Samoan-origin indicator")
        if dna.variable(report_node).states != ("true", "false"):
            raise ValueError("incompatible DNA interface: Samoan indicator states")
        existing = {v.id for v in variables}
        for v in dna.variables:
            if v.id in existing:
                raise ValueError(f"DNA network variable {v.id!r} collides with case node")
            variables.append(v)
        cpts.update(dna.cpts)
        cpts[report_node] = Cpt(
            report_node,
            (MURDERER,),
            {
                (m,): (cfg.dna_link[m], 1.0 - cfg.dna_link[m])
                for m in ("defendant", "other", "samoan")
            },
        )

    variables.append(
        Variable(STATEMENT, ("true", "false"), "Defendant says killer was a Samoan")
    )
    cpts[STATEMENT] = Cpt(
        STATEMENT,
        (MURDERER, report_node, KNEW),
        {
            key: (p, 1.0 - p)
            for key, p in cfg.statement_cpt.items()
        },
    )

    net = Network(variables=variables, cpts=cpts, name="samoan-case" + ("-dna" if dna else ""))
    violations = validate_network(net)
    if violations:
        raise ValueError("invalid case configuration: " + "; ".join(violations))
    return net


DEFAULT_WATCHED = (HYPOTHESIS, MURDERER)


def run_scenario(
    net: Network, sc: Scenario, watched: tuple[str, ...] = ()
) -> PosteriorTrace:
    """Posteriors of the watched variables after each cumulative instantiation."""
    defaults = tuple(v for v in DEFAULT_WATCHED if v in net)
    watch = tuple(dict.fromkeys(defaults + tuple(watched)))
    for var in watch:
        if var not in net:
            raise ScenarioError(f"watched variable {var!r} not in network")
    if not watch:
        watch = tuple(net.variable_ids())
    evidence: dict[str, str] = {}
    steps = [TraceStep(0, "prior", {}, _posteriors(net, {}, watch))]
    for k, step in enumerate(sc.steps, start=1):
        if step.variable not in net:
            raise ScenarioError(f"unknown scenario variable {step.variable!r}", k)
        evidence = {**evidence, step.variable: step.state}
        try:
            posteriors = _posteriors(net, evidence, watch)
        except ZeroEvidenceError:
            raise ScenarioError(
                f"scenario step {k} ({step.label}) has zero probability", k
            ) from None
        steps.append(TraceStep(k, step.label, dict(evidence), posteriors))
    return PosteriorTrace(sc.name, watch, steps)


def _posteriors(
    net: Network, evidence: dict[str, str], watch: tuple[str, ...]
) -> dict[str, Distribution]:
    return {var: posterior(net, evidence, var) for var in watch}


def knowledge_state_compare(
    net: Network, base: Scenario, watched: tuple[str, ...] = ()
) -> KnowledgeComparison:
    """Run `base` with the knowledge node pinned false, then true."""
    if any(step.variable == KNEW for step in base.steps):
        raise ScenarioError("base scenario must exclude the knowledge node")
    traces = []
    for state in ("false", "true"):
        sc = Scenario(
            f"{base.name} (knew={state})",
            [ScenarioStep(KNEW, state, f"defendant knew about DNA report: {state}")]
            + list(base.steps),
        )
        traces.append(run_scenario(net, sc, watched))
    not_knowing, knowing = traces
    gap = knowing.final(HYPOTHESIS)["killer"] - not_knowing.final(HYPOTHESIS)["killer"]
    return KnowledgeComparison(not_knowing, knowing, gap)


def build_screening_example() -> Network:
    """Two-node screening test: 1% prevalence, 99% sensitivity, 95% specificity."""
    return Network(
        name="screening-example",
        variables=[
            Variable("disease", ("present", "absent"), "Disease"),
            Variable("test", ("positive", "negative"), "Screening test"),
        ],
        cpts={
            "disease": Cpt("disease", (), {(): (0.01, 0.99)}),
            "test": Cpt(
                "test",
                ("disease",),
                {("present",): (0.99, 0.01), ("absent",): (0.05, 0.95)},
            ),
        },
    )


def core_evidence_scenario() -> Scenario:
    """The four core evidence items in their canonical instantiation order."""
    return Scenario(
        "core-evidence",
        [ScenarioStep(item, "true", EVIDENCE_LABELS[item]) for item in EVIDENCE_ITEMS],
    )


def full_evidence_scenario() -> Scenario:
    """Four evidence items, then the statement, then the DNA report."""
    steps = [ScenarioStep(item, "true", EVIDENCE_LABELS[item]) for item in EVIDENCE_ITEMS]
    steps.append(ScenarioStep(STATEMENT, "true", "Defendant says killer was a Samoan"))
    steps.append(ScenarioStep(DNA_REPORT, "true", "DNA report supports Samoan theory"))
    return Scenario("full-evidence", steps)
