"""Heterogeneous-population DNA likelihood ratios.

Builds one marker block per observed locus: maternal and paternal gene
nodes (states: the profile's alleles plus an aggregated "other" allele)
parented by the Samoan-origin indicator and a shared subpopulation selector
S, plus a deterministic genotype node.  Because S is shared across markers,
uncertainty about the reference population induces dependence between
markers, so the exact joint likelihood ratio differs from the product of
per-marker ratios.

Within each population, maternal and paternal genes pair independently
(Hardy-Weinberg: p^2 for a homozygote, 2pq for a heterozygote); no
coancestry correction is applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .inference import likelihood_ratio
from .network import Cpt, Network, Variable, validate_network
from .templates import NetworkTemplate, SlotRef, TemplateCpt, TemplateInstance, instantiate

SAMOAN_NODE = "samoan_origin"
SUBPOP_NODE = "s"
OTHER_ALLELE = "other"

WEIGHT_SUM_TOL = 1e-9


class DnaInputError(ValueError):
    """Missing allele frequency, empty profile, or invalid mixture."""


@dataclass
class AlleleFrequencyTable:
    """Per (marker, population): allele label -> frequency in (0, 1].

    Listed frequencies per (marker, population) must sum to at most 1; the
    remaining mass is assigned to a synthetic "other" allele so each gene
    node's distribution sums to 1.
    """

    frequencies: dict[str, dict[str, dict[str, float]]] = field(default_factory=dict)
    # marker -> population -> allele -> frequency

    def __post_init__(self):
        for marker, by_pop in self.frequencies.items():
            for pop, freqs in by_pop.items():
                for allele, f in freqs.items():
                    if not 0.0 < f <= 1.0:
                        raise DnaInputError(
                            f"frequency of {marker}:{allele} in {pop} is {f}, "
                            "expected a value in (0, 1]"
                        )
                total = sum(freqs.values())
                if total > 1.0 + WEIGHT_SUM_TOL:
                    raise DnaInputError(
                        f"frequencies for {marker} in {pop} sum to {total} > 1"
                    )

    def frequency(self, marker: str, population: str, allele: str) -> float:
        try:
            return self.frequencies[marker][population][allele]
        except KeyError:
            raise DnaInputError(
                f"no frequency for marker {marker!r}, allele {allele!r}, "
                f"population {population!r}"
            ) from None

    def other_mass(self, marker: str, population: str, alleles: tuple[str, ...]) -> float:
        listed = sum(self.frequency(marker, population, a) for a in alleles)
        return max(0.0, 1.0 - listed)


@dataclass
class CrimeProfile:
    """Per marker, the unordered observed allele pair (equal when homozygous)."""

    genotypes: dict[str, tuple[str, str]] = field(default_factory=dict)

    def markers(self) -> list[str]:
        return list(self.genotypes)

    def alleles(self, marker: str) -> tuple[str, ...]:
        a1, a2 = self.genotypes[marker]
        return (a1,) if a1 == a2 else (a1, a2)

    def restricted(self, markers: list[str]) -> "CrimeProfile":
        return CrimeProfile({m: self.genotypes[m] for m in markers})


@dataclass
class PopulationMixture:
    """Prior weights over the alternative (non-Samoan) reference populations."""

    populations: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        self.populations = tuple(self.populations)
        self.weights = tuple(float(w) for w in self.weights)
        if len(self.populations) != len(self.weights):
            raise DnaInputError("mixture labels and weights differ in length")
        if any(w < 0 for w in self.weights):
            raise DnaInputError("mixture weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > WEIGHT_SUM_TOL:
            raise DnaInputError(f"mixture weights sum to {sum(self.weights)}, not 1")

    def items(self):
        return zip(self.populations, self.weights)


@dataclass(frozen=True)
class MarkerBlock:
    """Node ids of one marker's subnetwork inside the flattened network."""

    marker: str
    maternal: str
    paternal: str
    genotype: str
    gene_states: tuple[str, ...]
    genotype_states: tuple[str, ...]


def _gene_states(alleles: tuple[str, ...]) -> tuple[str, ...]:
    return alleles + (OTHER_ALLELE,)


def _pair_states(gene_states: tuple[str, ...]) -> tuple[str, ...]:
    pairs = []
    for i, a in enumerate(gene_states):
        for b in gene_states[i:]:
            pairs.append(f"{a}/{b}")
    return tuple(pairs)


def genotype_state(profile: CrimeProfile, marker: str) -> str:
    """The genotype node's state label for the observed pair at `marker`."""
    gene_states = _gene_states(profile.alleles(marker))
    a1, a2 = profile.genotypes[marker]
    i, j = sorted((gene_states.index(a1), gene_states.index(a2)))
    return f"{gene_states[i]}/{gene_states[j]}"


def marker_template(
    marker: str, alleles: tuple[str, ...], populations: tuple[str, ...]
) -> NetworkTemplate:
    """One-marker template: gene nodes select frequencies by (Samoan, S)."""
    gene_states = _gene_states(alleles)
    pair_states = _pair_states(gene_states)

    gene_rows: dict[tuple[str, str], SlotRef] = {}
    for pop in populations:
        gene_rows[("true", pop)] = SlotRef("samoan")
        gene_rows[("false", pop)] = SlotRef(pop)

    genotype_rows: dict[tuple[str, str], tuple[float, ...]] = {}
    for a in gene_states:
        for b in gene_states:
            i, j = sorted((gene_states.index(a), gene_states.index(b)))
            pair = f"{gene_states[i]}/{gene_states[j]}"
            row = tuple(1.0 if p == pair else 0.0 for p in pair_states)
            genotype_rows[(a, b)] = row

    return NetworkTemplate(
        name=f"marker-{marker}",
        inputs={
            SAMOAN_NODE: ("true", "false"),
            SUBPOP_NODE: populations,
        },
        internals=[
            Variable("maternal_gene", gene_states, f"{marker} maternal gene"),
            Variable("paternal_gene", gene_states, f"{marker} paternal gene"),
            Variable("genotype", pair_states, f"{marker} genotype"),
        ],
        cpts=[
            TemplateCpt("maternal_gene", (SAMOAN_NODE, SUBPOP_NODE), dict(gene_rows)),
            TemplateCpt("paternal_gene", (SAMOAN_NODE, SUBPOP_NODE), dict(gene_rows)),
            TemplateCpt("genotype", ("maternal_gene", "paternal_gene"), genotype_rows),
        ],
        slots=("samoan",) + populations,
    )


def _frequency_vector(
    freqs: AlleleFrequencyTable, marker: str, population: str, alleles: tuple[str, ...]
) -> tuple[float, ...]:
    listed = tuple(freqs.frequency(marker, population, a) for a in alleles)
    return listed + (freqs.other_mass(marker, population, alleles),)


def build_dna_network(
    freqs: AlleleFrequencyTable,
    mix: PopulationMixture,
    profile: CrimeProfile,
    samoan_population: str = "Samoan",
) -> Network:
    """Flatten all marker blocks around one Samoan indicator and one shared S.

    Evaluated standalone, the Samoan-origin indicator carries a 0.5/0.5
    prior, so its posterior odds after instantiating the genotype evidence
    equal the likelihood ratio directly.
    """
    if not profile.genotypes:
        raise DnaInputError("empty crime profile")
    # A one-state selector is not a valid discrete variable; split a lone
    # population into two identical, equally weighted states instead.
    source_of = {pop: pop for pop in mix.populations}
    selector_states = mix.populations
    selector_weights = mix.weights
    if len(selector_states) == 1:
        only = selector_states[0]
        selector_states = (only, f"{only}.alt")
        selector_weights = (0.5, 0.5)
        source_of[f"{only}.alt"] = only
    host = Network(
        name="dna-report",
        variables=[
            Variable(SAMOAN_NODE, ("true", "false"), "Unknown profile is of Samoan origin"),
            Variable(SUBPOP_NODE, selector_states, "Subpopulation of alternative donor"),
        ],
        cpts={
            SAMOAN_NODE: Cpt(SAMOAN_NODE, (), {(): (0.5, 0.5)}),
            SUBPOP_NODE: Cpt(SUBPOP_NODE, (), {(): selector_weights}),
        },
    )
    net = host
    for marker in profile.markers():
        alleles = profile.alleles(marker)
        tmpl = marker_template(marker, alleles, selector_states)
        parameters = {"samoan": _frequency_vector(freqs, marker, samoan_population, alleles)}
        for state in selector_states:
            parameters[state] = _frequency_vector(freqs, marker, source_of[state], alleles)
        inst = TemplateInstance(
            template=tmpl.name,
            instance_id=marker,
            bindings={SAMOAN_NODE: SAMOAN_NODE, SUBPOP_NODE: SUBPOP_NODE},
            parameters=parameters,
        )
        net = instantiate(net, inst, tmpl)
    violations = validate_network(net)
    if violations:  # defensive: inputs validated above should preclude this
        raise DnaInputError("built DNA network is invalid: " + "; ".join(violations))
    return net


def marker_blocks(profile: CrimeProfile) -> list[MarkerBlock]:
    blocks = []
    for marker in profile.markers():
        gene_states = _gene_states(profile.alleles(marker))
        blocks.append(
            MarkerBlock(
                marker=marker,
                maternal=f"{marker}.maternal_gene",
                paternal=f"{marker}.paternal_gene",
                genotype=f"{marker}.genotype",
                gene_states=gene_states,
                genotype_states=_pair_states(gene_states),
            )
        )
    return blocks


def genotype_evidence(profile: CrimeProfile) -> dict[str, str]:
    """Hard evidence instantiating every marker's genotype node."""
    return {
        f"{marker}.genotype": genotype_state(profile, marker)
        for marker in profile.markers()
    }


def _hardy_weinberg(
    freqs: AlleleFrequencyTable, marker: str, population: str, pair: tuple[str, str]
) -> float:
    a1, a2 = pair
    p = freqs.frequency(marker, population, a1)
    if a1 == a2:
        return p * p
    q = freqs.frequency(marker, population, a2)
    return 2.0 * p * q


def per_marker_lr(
    freqs: AlleleFrequencyTable,
    mix: PopulationMixture,
    profile: CrimeProfile,
    marker: str,
    samoan_population: str = "Samoan",
) -> tuple[float, float, float]:
    """(pHp, pHd, lr) for one marker.

    pHp is the genotype probability under Samoan frequencies, pHd the
    mixture over S of the per-population probability; the returned
    (pHp, pHd) pair is normalized to sum to 1, the ratio is unaffected.
    """
    if marker not in profile.genotypes:
        raise DnaInputError(f"marker {marker!r} not in profile")
    pair = profile.genotypes[marker]
    p_hp = _hardy_weinberg(freqs, marker, samoan_population, pair)
    p_hd = sum(
        w * _hardy_weinberg(freqs, marker, pop, pair) for pop, w in mix.items()
    )
    if p_hd <= 0.0:
        raise DnaInputError(f"marker {marker!r}: zero probability under the defence mixture")
    total = p_hp + p_hd
    return p_hp / total, p_hd / total, p_hp / p_hd


def product_rule_lr(
    freqs: AlleleFrequencyTable,
    mix: PopulationMixture,
    profile: CrimeProfile,
    samoan_population: str = "Samoan",
) -> float:
    """Product over markers of per-marker ratios.

    This assumes the markers are independent, which does not hold when the
    reference population is heterogeneous; kept as the conventional figure
    the exact joint ratio is compared against.
    """
    lr = 1.0
    for marker in profile.markers():
        lr *= per_marker_lr(freqs, mix, profile, marker, samoan_population)[2]
    return lr


def exact_joint_lr(
    freqs: AlleleFrequencyTable,
    mix: PopulationMixture,
    profile: CrimeProfile,
    samoan_population: str = "Samoan",
) -> float:
    """Joint likelihood ratio from the full shared-S network.

    Equals posterior-odds over prior-odds of the Samoan indicator at its
    standalone 0.5 prior.
    """
    net = build_dna_network(freqs, mix, profile, samoan_population)
    evidence = genotype_evidence(profile)
    return likelihood_ratio(net, evidence, SAMOAN_NODE, "true", "false")


@dataclass
class MarkerLr:
    marker: str
    p_hp: float
    p_hd: float
    lr: float


@dataclass
class LrReport:
    markers: list[MarkerLr]
    product_rule: float
    exact: float
    mixture: PopulationMixture
    profile: CrimeProfile


def build_lr_report(
    freqs: AlleleFrequencyTable,
    mix: PopulationMixture,
    profile: CrimeProfile,
    samoan_population: str = "Samoan",
) -> LrReport:
    markers = []
    for marker in profile.markers():
        p_hp, p_hd, lr = per_marker_lr(freqs, mix, profile, marker, samoan_population)
        markers.append(MarkerLr(marker, p_hp, p_hd, lr))
    return LrReport(
        markers=markers,
        product_rule=product_rule_lr(freqs, mix, profile, samoan_population),
        exact=exact_joint_lr(freqs, mix, profile, samoan_population),
        mixture=mix,
        profile=profile,
    )


# --- Tabular input files ----------------------------------------------------
#
# Fixed column schemas consumed by the command line and the HTTP service:
#   allele frequencies: marker,allele,population,frequency
#   crime profile:      marker,allele1,allele2
#   population mixture: population,weight


def load_allele_frequencies(text: str) -> AlleleFrequencyTable:
    table: dict[str, dict[str, dict[str, float]]] = {}
    for row in _read_csv(text, ("marker", "allele", "population", "frequency")):
        table.setdefault(row["marker"], {}).setdefault(row["population"], {})[
            row["allele"]
        ] = float(row["frequency"])
    return AlleleFrequencyTable(table)


def load_profile(text: str) -> CrimeProfile:
    genotypes = {
        row["marker"]: (row["allele1"], row["allele2"])
        for row in _read_csv(text, ("marker", "allele1", "allele2"))
    }
    return CrimeProfile(genotypes)


def load_mixture(text: str) -> PopulationMixture:
    rows = list(_read_csv(text, ("population", "weight")))
    return PopulationMixture(
        tuple(r["population"] for r in rows),
        tuple(float(r["weight"]) for r in rows),
    )


def _read_csv(text: str, columns: tuple[str, ...]):
    import csv
    import io

    reader = csv.DictReader(io.StringIO(text))
    got = tuple(reader.fieldnames or ())
    if got != columns:
        raise DnaInputError(f"expected columns {columns}, got {got}")
    yield from reader


def emit_allele_frequencies(freqs: AlleleFrequencyTable) -> str:
    lines = ["marker,allele,population,frequency"]
    for marker, by_pop in freqs.frequencies.items():
        for pop, alleles in by_pop.items():
            for allele, f in alleles.items():
                lines.append(f"{marker},{allele},{pop},{f!r}")
    return "\n".join(lines) + "\n"


def emit_profile(profile: CrimeProfile) -> str:
    lines = ["marker,allele1,allele2"]
    for marker, (a1, a2) in profile.genotypes.items():
        lines.append(f"{marker},{a1},{a2}")
    return "\n".join(lines) + "\n"


def emit_mixture(mix: PopulationMixture) -> str:
    lines = ["population,weight"]
    for pop, w in mix.items():
        lines.append(f"{pop},{w!r}")
    return "\n".join(lines) + "\n"


# --- Bundled marker data for the murder-case analysis -----------------------

CASE_POPULATIONS = ("Hispanic", "Caucasian", "AfroAmerican")

CASE_ALLELE_FREQUENCIES = AlleleFrequencyTable(
    {
        "D2": {
            "Samoan": {"18": 0.12, "22": 0.25},
            "Hispanic": {"18": 0.08, "22": 0.057},
            "Caucasian": {"18": 0.073, "22": 0.034},
            "AfroAmerican": {"18": 0.04, "22": 0.14},
        },
        "CSF": {
            "Samoan": {"11": 0.39, "14": 0.01},
            "Hispanic": {"11": 0.28, "14": 0.006},
            "Caucasian": {"11": 0.31, "14": 0.01},
            "AfroAmerican": {"11": 0.25, "14": 0.009},
        },
        "D7": {
            "Samoan": {"12": 0.22},
            "Hispanic": {"12": 0.15},
            "Caucasian": {"12": 0.16},
            "AfroAmerican": {"12": 0.088},
        },
        "D21": {
            "Samoan": {"28": 0.26, "34.2": 0.016},
            "Hispanic": {"28": 0.10, "34.2": 0.005},
            "Caucasian": {"28": 0.16, "34.2": 0.004},
            "AfroAmerican": {"28": 0.25, "34.2": 0.003},
        },
        "D8": {
            "Samoan": {"10": 0.21},
            "Hispanic": {"10": 0.093},
            "Caucasian": {"10": 0.1},
            "AfroAmerican": {"10": 0.03},
        },
        "D16": {
            "Samoan": {"14": 0.12},
            "Hispanic": {"14": 0.13},
            "Caucasian": {"14": 0.026},
            "AfroAmerican": {"14": 0.025},
        },
    }
)

CASE_CRIME_PROFILE = CrimeProfile(
    {
        "D2": ("18", "22"),
        "CSF": ("11", "14"),
        "D7": ("12", "12"),
        "D21": ("28", "34.2"),
        "D8": ("10", "10"),
        "D16": ("14", "14"),
    }
)

# Long Beach census shares (Hispanic 35.77%, White NH 33.13%, Black NH
# 14.48%) renormalized over the three alternative populations.
_CENSUS_SHARES = (0.3577, 0.3313, 0.1448)
_CENSUS_TOTAL = sum(_CENSUS_SHARES)

CASE_MIXTURE = PopulationMixture(
    CASE_POPULATIONS, tuple(s / _CENSUS_TOTAL for s in _CENSUS_SHARES)
)
