#!/usr/bin/env python3
"""Run the bundled case analyses end to end and print every headline number.

Covers: the four-item sequential trace, the statement/report sequence under
both knowledge states, the screening example, and the DNA likelihood-ratio
report with its heterogeneity comparison.
"""

from casebn import dna
from casebn.casemodel import (
    HYPOTHESIS,
    build_case_network,
    build_screening_example,
    full_evidence_scenario,
    knowledge_state_compare,
    core_evidence_scenario,
    run_scenario,
)
from casebn.inference import likelihood_of_evidence, posterior
from casebn.report import lr_table, trace_table


def main() -> None:
    net = build_case_network()

    print("=== Sequential evidence trace ===")
    print(trace_table(run_scenario(net, core_evidence_scenario())))

    print("=== Knowledge-state comparison (all evidence in) ===")
    cmp = knowledge_state_compare(net, full_evidence_scenario())
    for label, trace in (("did not know", cmp.not_knowing), ("knew", cmp.knowing)):
        final = trace.final(HYPOTHESIS)["killer"]
        print(f"P(killer | all evidence, defendant {label} the report) = {final:.5f}")
    print(f"guilt gap: {cmp.guilt_gap:+.5f}\n")

    print("=== Screening example ===")
    screen = build_screening_example()
    p_e = likelihood_of_evidence(screen, {"test": "positive"})
    p_d = posterior(screen, {"test": "positive"}, "disease")["present"]
    print(f"P(test positive) = {p_e:.4f}")
    print(f"P(disease | test positive) = {p_d:.4f}\n")

    print("=== DNA likelihood ratios (bundled inputs) ===")
    report = dna.build_lr_report(
        dna.CASE_ALLELE_FREQUENCIES, dna.CASE_MIXTURE, dna.CASE_CRIME_PROFILE
    )
    print(lr_table(report), end="")
    print(f"exact / product = {report.exact / report.product_rule:.4f}")
    for pop in report.mixture.populations:
        single = dna.PopulationMixture((pop,), (1.0,))
        exact = dna.exact_joint_lr(
            dna.CASE_ALLELE_FREQUENCIES, single, dna.CASE_CRIME_PROFILE
        )
        product = dna.product_rule_lr(
            dna.CASE_ALLELE_FREQUENCIES, single, dna.CASE_CRIME_PROFILE
        )
        print(f"single population {pop}: |exact - product| = {abs(exact - product):.2e}")


if __name__ == "__main__":
    main()
