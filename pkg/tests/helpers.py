"""Shared test utilities: random-network generation and tiny fixtures."""

from __future__ import annotations

import itertools
import random

from casebn.network import Cpt, Network, Variable

# Keep the full joint enumerable so the brute-force oracle stays fast even
# across hundreds of generated networks.
MAX_JOINT = 10**6


def random_network(
    rng: random.Random,
    max_vars: int = 12,
    max_states: int = 4,
    max_parents: int = 3,
) -> Network:
    """A random valid DAG with strictly positive CPT rows.

    Rows are bounded away from zero so any hard evidence has positive
    probability; generated networks never trigger ZeroEvidenceError.
    """
    n = rng.randint(2, max_vars)
    sizes: list[int] = []
    joint = 1
    for _ in range(n):
        k = rng.randint(2, max_states)
        if joint * k > MAX_JOINT:
            k = 2
        joint *= k
        sizes.append(k)

    variables = [
        Variable(f"v{i}", tuple(f"s{j}" for j in range(k)))
        for i, k in enumerate(sizes)
    ]
    states_of = {v.id: v.states for v in variables}
    cpts: dict[str, Cpt] = {}
    for i, v in enumerate(variables):
        pool = [u.id for u in variables[:i]]
        rng.shuffle(pool)
        parents = tuple(sorted(pool[: rng.randint(0, min(max_parents, len(pool)))]))
        rows = {}
        for combo in itertools.product(*(states_of[p] for p in parents)):
            raw = [0.05 + rng.random() for _ in v.states]
            total = sum(raw)
            rows[combo] = tuple(x / total for x in raw)
        cpts[v.id] = Cpt(v.id, parents, rows)
    return Network(variables=variables, cpts=cpts, name="random")


def random_evidence(rng: random.Random, net: Network, max_items: int = 4) -> dict:
    ids = net.variable_ids()
    rng.shuffle(ids)
    count = rng.randint(0, min(max_items, len(ids) - 1))
    return {
        var: rng.choice(net.variable(var).states) for var in ids[:count]
    }


def chain_network() -> Network:
    """a -> b -> c, all binary, hand-checkable by direct arithmetic."""
    return Network(
        name="chain",
        variables=[
            Variable("a", ("t", "f")),
            Variable("b", ("t", "f")),
            Variable("c", ("t", "f")),
        ],
        cpts={
            "a": Cpt("a", (), {(): (0.3, 0.7)}),
            "b": Cpt("b", ("a",), {("t",): (0.9, 0.1), ("f",): (0.2, 0.8)}),
            "c": Cpt("c", ("b",), {("t",): (0.6, 0.4), ("f",): (0.1, 0.9)}),
        },
    )
