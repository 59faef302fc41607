#!/usr/bin/env python3
"""Regenerate the canonical data files shipped under src/casebn/data/."""

import pathlib

from casebn import bundles, dna
from casebn.netfile import emit_network_file, emit_scenario

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "casebn" / "data"


def main() -> None:
    DATA.mkdir(exist_ok=True)
    for name, doc in bundles.bundled_docs().items():
        (DATA / f"{name}.bn").write_text(emit_network_file(doc))
        print(f"wrote {name}.bn")
    for name, scenario in bundles.bundled_scenarios().items():
        (DATA / f"{name}.scenario").write_text(emit_scenario(scenario))
        print(f"wrote {name}.scenario")
    (DATA / "allele-frequencies.csv").write_text(
        dna.emit_allele_frequencies(dna.CASE_ALLELE_FREQUENCIES)
    )
    (DATA / "mixture.csv").write_text(dna.emit_mixture(dna.CASE_MIXTURE))
    (DATA / "profile.csv").write_text(dna.emit_profile(dna.CASE_CRIME_PROFILE))
    print("wrote DNA input tables")


if __name__ == "__main__":
    main()
