"""Exact inference by variable elimination, plus a brute-force oracle.

Probabilities are kept in linear space with double precision.  Each factor
produced by a marginalization is renormalized and the normalizing constants
are accumulated, which controls underflow at the scales handled here and
yields the evidence likelihood for free; log-space arithmetic is not needed.
"""

from __future__ import annotations

import itertools

import numpy as np

from .network import (
    Cpt,
    Distribution,
    Evidence,
    Network,
    StateSpaceError,
    ZeroEvidenceError,
)

BRUTE_FORCE_LIMIT = 10**7


class _Factor:
    """A nonnegative table over a tuple of variable ids."""

    __slots__ = ("vars", "table")

    def __init__(self, variables: tuple[str, ...], table: np.ndarray):
        self.vars = variables
        self.table = table

    @classmethod
    def from_cpt(cls, net: Network, cpt: Cpt) -> "_Factor":
        """Build the factor for one CPT, exactly renormalizing each row."""
        axes = cpt.parents + (cpt.child,)
        shape = tuple(len(net.variable(v).states) for v in axes)
        table = np.empty(shape)
        parent_states = [net.variable(p).states for p in cpt.parents]
        for combo in itertools.product(*(range(len(s)) for s in parent_states)):
            labels = tuple(states[i] for states, i in zip(parent_states, combo))
            row = np.asarray(cpt.rows[labels], dtype=float)
            table[combo] = row / row.sum()
        return cls(axes, table)

    def restrict(self, var: str, index: int) -> "_Factor":
        axis = self.vars.index(var)
        table = np.take(self.table, index, axis=axis)
        remaining = self.vars[:axis] + self.vars[axis + 1 :]
        return _Factor(remaining, table)

    def multiply(self, other: "_Factor") -> "_Factor":
        merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
        a = _broadcast(self, merged)
        b = _broadcast(other, merged)
        return _Factor(merged, a * b)

    def marginalize(self, var: str) -> "_Factor":
        axis = self.vars.index(var)
        table = self.table.sum(axis=axis)
        remaining = self.vars[:axis] + self.vars[axis + 1 :]
        return _Factor(remaining, table)


def _broadcast(factor: _Factor, target: tuple[str, ...]) -> np.ndarray:
    src = list(factor.vars)
    perm = [src.index(v) for v in target if v in src]
    table = factor.table.transpose(perm) if perm else factor.table
    expand = tuple(i for i, v in enumerate(target) if v not in src)
    return np.expand_dims(table, expand) if expand else table


def elimination_order(net: Network, query: str, evidence: Evidence) -> list[str]:
    """Deterministic min-fill ordering, ties broken lexically by variable id.

    Query and evidence variables are never eliminated.  Any valid order
    yields identical posteriors; ordering affects cost only.
    """
    keep = {query} | set(evidence)
    # Interaction graph: variables co-occurring in some factor share an edge.
    # Evidence variables drop out of factor scopes once instantiated.
    neighbours: dict[str, set[str]] = {
        v.id: set() for v in net.variables if v.id not in evidence
    }
    for cpt in net.cpts.values():
        scope = [v for v in (cpt.child,) + cpt.parents if v not in evidence]
        for a, b in itertools.combinations(scope, 2):
            neighbours[a].add(b)
            neighbours[b].add(a)

    order: list[str] = []
    pending = {v for v in neighbours if v not in keep}
    while pending:
        best = min(pending, key=lambda v: (_fill_count(neighbours, v), v))
        order.append(best)
        around = neighbours[best]
        for a, b in itertools.combinations(sorted(around), 2):
            neighbours[a].add(b)
            neighbours[b].add(a)
        for other in around:
            neighbours[other].discard(best)
        del neighbours[best]
        pending.discard(best)
    return order


def _fill_count(neighbours: dict[str, set[str]], var: str) -> int:
    around = sorted(neighbours[var])
    return sum(
        1 for a, b in itertools.combinations(around, 2) if b not in neighbours[a]
    )


def _run_elimination(
    net: Network,
    evidence: Evidence,
    query: str | None,
    order: list[str] | None = None,
) -> tuple[np.ndarray | None, float]:
    """Eliminate everything but `query`; return (query table or None, P(ev))."""
    net.check_evidence(evidence)
    factors = [_Factor.from_cpt(net, cpt) for cpt in net.cpts.values()]
    for var, state in evidence.items():
        index = net.variable(var).state_index(state)
        factors = [
            f.restrict(var, index) if var in f.vars else f for f in factors
        ]
    if order is None:
        order = elimination_order(net, query, evidence) if query else [
            v for v in net.variable_ids() if v not in evidence
        ]

    scale = 1.0
    for var in order:
        related = [f for f in factors if var in f.vars]
        if not related:
            continue
        product = related[0]
        for f in related[1:]:
            product = product.multiply(f)
        summed = product.marginalize(var)
        total = float(summed.table.sum())
        if total > 0.0:
            summed = _Factor(summed.vars, summed.table / total)
        scale *= total
        factors = [f for f in factors if var not in f.vars]
        factors.append(summed)

    result = _Factor((), np.array(1.0))
    for f in factors:
        result = result.multiply(f)
    if query is not None:
        for extra in [v for v in result.vars if v != query]:
            result = result.marginalize(extra)
    likelihood = scale * float(result.table.sum())
    if query is None:
        return None, likelihood
    return result.table if result.vars == (query,) else result.table.T, likelihood


def posterior(net: Network, evidence: Evidence, var: str) -> Distribution:
    """Exact conditional distribution of `var` given hard evidence."""
    variable = net.variable(var)
    if var in evidence:
        # degenerate, but only if the evidence as a whole is consistent
        if likelihood_of_evidence(net, evidence) <= 0.0:
            raise ZeroEvidenceError(
                f"evidence {evidence} has probability zero; contradictory instantiation"
            )
        probs = [1.0 if s == evidence[var] else 0.0 for s in variable.states]
        return Distribution(var, dict(zip(variable.states, probs)))
    table, likelihood = _run_elimination(net, evidence, var)
    if likelihood <= 0.0:
        raise ZeroEvidenceError(
            f"evidence {evidence} has probability zero; contradictory instantiation"
        )
    probs = np.asarray(table, dtype=float)
    probs = probs / probs.sum()
    return Distribution(var, dict(zip(variable.states, probs.tolist())))


def prior_marginal(net: Network, var: str) -> Distribution:
    """Marginal of `var` with no evidence."""
    return posterior(net, {}, var)


def likelihood_of_evidence(net: Network, evidence: Evidence) -> float:
    """P(evidence): total probability over all consistent joint configurations."""
    if not evidence:
        return 1.0
    _, likelihood = _run_elimination(net, evidence, None)
    return float(likelihood)


def likelihood_ratio(
    net: Network, evidence: Evidence, hyp: str, s1: str, s2: str
) -> float:
    """P(evidence | hyp=s1) / P(evidence | hyp=s2).

    Computed by instantiating `hyp` to each state, so the result does not
    depend on the prior placed on `hyp`.
    """
    net.variable(hyp).state_index(s1)
    net.variable(hyp).state_index(s2)
    if hyp in evidence:
        raise ValueError(f"hypothesis variable {hyp!r} already instantiated")
    p1 = likelihood_of_evidence(net, {**evidence, hyp: s1})
    p2 = likelihood_of_evidence(net, {**evidence, hyp: s2})
    m1 = likelihood_of_evidence(net, {hyp: s1})
    m2 = likelihood_of_evidence(net, {hyp: s2})
    if p2 <= 0.0 or m2 <= 0.0:
        raise ZeroEvidenceError(
            f"evidence impossible under {hyp}={s2}; likelihood ratio undefined"
        )
    if m1 <= 0.0:
        raise ZeroEvidenceError(f"{hyp}={s1} has probability zero")
    return (p1 / m1) / (p2 / m2)


# --- Brute-force oracle -----------------------------------------------------
#
# The oracle builds the full joint table by broadcasting every CPT into a
# tensor over all variables, then reduces it directly.  It shares no code
# with the elimination engine above and is the reference implementation for
# every derived value in the test suite.


def _full_joint(net: Network) -> tuple[list[str], np.ndarray]:
    if net.joint_size() > BRUTE_FORCE_LIMIT:
        raise StateSpaceError(
            f"joint state space {net.joint_size()} exceeds {BRUTE_FORCE_LIMIT}"
        )
    axes = net.variable_ids()
    index = {v: i for i, v in enumerate(axes)}
    shape = tuple(len(v.states) for v in net.variables)
    joint = np.ones(shape)
    for cpt in net.cpts.values():
        cpt_axes = cpt.parents + (cpt.child,)
        cpt_shape = tuple(len(net.variable(v).states) for v in cpt_axes)
        table = np.empty(cpt_shape)
        parent_states = [net.variable(p).states for p in cpt.parents]
        for combo in itertools.product(*parent_states):
            idx = tuple(
                states.index(s) for states, s in zip(parent_states, combo)
            )
            row = np.asarray(cpt.rows[combo], dtype=float)
            table[idx] = row / row.sum()
        # Align the CPT tensor with the joint's axis order.
        expanded_shape = [1] * len(axes)
        for v, size in zip(cpt_axes, cpt_shape):
            expanded_shape[index[v]] = size
        perm = sorted(range(len(cpt_axes)), key=lambda i: index[cpt_axes[i]])
        joint = joint * table.transpose(perm).reshape(expanded_shape)
    return axes, joint


def _apply_evidence(
    net: Network, axes: list[str], joint: np.ndarray, evidence: Evidence
) -> np.ndarray:
    net.check_evidence(evidence)
    for var, state in evidence.items():
        axis = axes.index(var)
        keep = net.variable(var).state_index(state)
        mask = np.zeros(joint.shape[axis])
        mask[keep] = 1.0
        shape = [1] * joint.ndim
        shape[axis] = joint.shape[axis]
        joint = joint * mask.reshape(shape)
    return joint


def brute_force_posterior(net: Network, evidence: Evidence, var: str) -> Distribution:
    """Posterior of `var` by full enumeration of the joint distribution."""
    axes, joint = _full_joint(net)
    joint = _apply_evidence(net, axes, joint, evidence)
    target = axes.index(var)
    reduced = joint.sum(axis=tuple(i for i in range(joint.ndim) if i != target))
    total = reduced.sum()
    if total <= 0.0:
        raise ZeroEvidenceError(f"evidence {evidence} has probability zero")
    states = net.variable(var).states
    return Distribution(var, dict(zip(states, (reduced / total).tolist())))


def brute_force_likelihood(net: Network, evidence: Evidence) -> float:
    """P(evidence) by full enumeration of the joint distribution."""
    axes, joint = _full_joint(net)
    joint = _apply_evidence(net, axes, joint, evidence)
    return float(joint.sum())
