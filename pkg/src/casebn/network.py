"""Discrete Bayesian network representation and validation.

A network is a DAG of discrete variables, each carrying one conditional
probability table (CPT).  Networks are treated as immutable once built and
validated; all inference routines are pure functions of (network, evidence).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

ROW_SUM_TOL = 1e-9

# Hard evidence only: variable id -> observed state label.
Evidence = dict[str, str]


class ZeroEvidenceError(ValueError):
    """Raised when the instantiated evidence has probability zero."""


class StateSpaceError(ValueError):
    """Raised when a joint state space is too large to enumerate."""


@dataclass(frozen=True)
class Variable:
    id: str
    states: tuple[str, ...]
    label: str = ""

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.id)
        object.__setattr__(self, "states", tuple(self.states))

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise KeyError(f"variable {self.id!r} has no state {state!r}") from None


@dataclass(frozen=True)
class Cpt:
    """Conditional distribution of `child` given `parents`.

    `rows` maps each full parent-state combination (a tuple ordered like
    `parents`; the empty tuple for root variables) to a probability vector
    over the child's states.
    """

    child: str
    parents: tuple[str, ...]
    rows: dict[tuple[str, ...], tuple[float, ...]]

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(
            self,
            "rows",
            {tuple(k): tuple(float(p) for p in v) for k, v in self.rows.items()},
        )


@dataclass
class Distribution:
    """Probability per state of one variable; sums to one."""

    variable: str
    probabilities: dict[str, float]

    def __getitem__(self, state: str) -> float:
        return self.probabilities[state]

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(self.probabilities.values())


@dataclass
class Network:
    variables: list[Variable] = field(default_factory=list)
    cpts: dict[str, Cpt] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self._by_id = {v.id: v for v in self.variables}

    def variable(self, var_id: str) -> Variable:
        try:
            return self._by_id[var_id]
        except KeyError:
            raise KeyError(f"unknown variable {var_id!r}") from None

    def __contains__(self, var_id: str) -> bool:
        return var_id in self._by_id

    def variable_ids(self) -> list[str]:
        return [v.id for v in self.variables]

    def cpt(self, var_id: str) -> Cpt:
        return self.cpts[var_id]

    def parents(self, var_id: str) -> tuple[str, ...]:
        return self.cpts[var_id].parents

    def joint_size(self) -> int:
        n = 1
        for v in self.variables:
            n *= len(v.states)
        return n

    def check_evidence(self, evidence: Evidence) -> None:
        """Raise KeyError on unknown variables or states."""
        for var_id, state in evidence.items():
            self.variable(var_id).state_index(state)


def validate_network(net: Network) -> list[str]:
    """Check every structural invariant; return the list of violations.

    An empty list means the network is valid.  Violations are data, not
    exceptions: each entry names the offending variable or CPT.
    """
    violations: list[str] = []

    seen_ids: set[str] = set()
    for v in net.variables:
        if v.id in seen_ids:
            violations.append(f"variable {v.id!r}: duplicate id")
        seen_ids.add(v.id)
        if len(v.states) < 2:
            violations.append(f"variable {v.id!r}: fewer than 2 states")
        if len(set(v.states)) != len(v.states):
            violations.append(f"variable {v.id!r}: duplicate state labels")

    for v in net.variables:
        if v.id not in net.cpts:
            violations.append(f"variable {v.id!r}: missing CPT")
    for child in net.cpts:
        if child not in seen_ids:
            violations.append(f"cpt {child!r}: child is not a declared variable")

    for child, cpt in net.cpts.items():
        if child not in seen_ids:
            continue
        bad_parent = False
        for p in cpt.parents:
            if p not in seen_ids:
                violations.append(f"cpt {child!r}: unknown parent {p!r}")
                bad_parent = True
        if bad_parent:
            continue
        parent_states = [net.variable(p).states for p in cpt.parents]
        expected = set(itertools.product(*parent_states))
        got = set(cpt.rows)
        for combo in sorted(expected - got):
            violations.append(f"cpt {child!r}: missing row for parent states {combo}")
        for combo in sorted(got - expected):
            violations.append(f"cpt {child!r}: unexpected row {combo}")
        n_states = len(net.variable(child).states)
        for combo, probs in cpt.rows.items():
            if len(probs) != n_states:
                violations.append(
                    f"cpt {child!r}: row {combo} has {len(probs)} entries, "
                    f"expected {n_states}"
                )
                continue
            if any(p < 0 for p in probs):
                violations.append(f"cpt {child!r}: row {combo} has a negative entry")
            elif abs(sum(probs) - 1.0) > ROW_SUM_TOL:
                violations.append(
                    f"cpt {child!r}: row sum != 1 for parent states {combo} "
                    f"(sum={sum(probs)!r})"
                )

    cycle = _find_cycle(net)
    if cycle:
        violations.append("cycle detected: " + " -> ".join(cycle))

    return violations


def _find_cycle(net: Network) -> list[str] | None:
    """Return one directed cycle through parent edges, if any."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v.id: WHITE for v in net.variables}
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = GREY
        stack.append(node)
        for parent in net.cpts.get(node, Cpt(node, (), {})).parents:
            if parent not in color:
                continue
            if color[parent] == GREY:
                i = stack.index(parent)
                return stack[i:] + [parent]
            if color[parent] == WHITE:
                found = visit(parent)
                if found:
                    return found
        color[node] = BLACK
        stack.pop()
        return None

    for v in net.variables:
        if color[v.id] == WHITE:
            found = visit(v.id)
            if found:
                return found
    return None


def topological_order(net: Network) -> list[str]:
    """Variables ordered so parents precede children.  Requires a valid DAG."""
    order: list[str] = []
    done: set[str] = set()

    def visit(var_id: str) -> None:
        if var_id in done:
            return
        for p in net.cpts[var_id].parents:
            visit(p)
        done.add(var_id)
        order.append(var_id)

    for v in net.variables:
        visit(v.id)
    return order
