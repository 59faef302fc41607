import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casebn.inference import (
    _run_elimination,
    brute_force_likelihood,
    brute_force_posterior,
    elimination_order,
    likelihood_of_evidence,
    likelihood_ratio,
    posterior,
    prior_marginal,
)
from casebn.network import (
    Cpt,
    Network,
    StateSpaceError,
    Variable,
    ZeroEvidenceError,
)

from helpers import chain_network, random_evidence, random_network


# --- Hand arithmetic on tiny networks ---------------------------------------


def test_chain_prior_marginals():
    net = chain_network()
    # P(b=t) = 0.3*0.9 + 0.7*0.2
    assert prior_marginal(net, "b")["t"] == pytest.approx(0.41, abs=1e-12)
    # P(c=t) = P(b=t)*0.6 + P(b=f)*0.1
    assert prior_marginal(net, "c")["t"] == pytest.approx(
        0.41 * 0.6 + 0.59 * 0.1, abs=1e-12
    )


def test_chain_diagnostic_posterior():
    net = chain_network()
    # Bayes by hand: P(a=t | b=t) = 0.27 / 0.41
    assert posterior(net, {"b": "t"}, "a")["t"] == pytest.approx(
        0.27 / 0.41, abs=1e-12
    )


def test_chain_evidence_likelihood():
    net = chain_network()
    assert likelihood_of_evidence(net, {"b": "t"}) == pytest.approx(0.41, abs=1e-12)
    # joint config probability
    assert likelihood_of_evidence(net, {"a": "t", "b": "t", "c": "t"}) == pytest.approx(
        0.3 * 0.9 * 0.6, abs=1e-12
    )


def test_empty_evidence_likelihood_is_one():
    assert likelihood_of_evidence(chain_network(), {}) == 1.0


def test_posterior_of_evidence_variable_is_degenerate():
    net = chain_network()
    d = posterior(net, {"b": "t"}, "b")
    assert d["t"] == 1.0 and d["f"] == 0.0


def test_zero_probability_evidence_raises():
    net = Network(
        variables=[Variable("a", ("t", "f")), Variable("b", ("t", "f"))],
        cpts={
            "a": Cpt("a", (), {(): (1.0, 0.0)}),
            "b": Cpt("b", ("a",), {("t",): (1.0, 0.0), ("f",): (0.5, 0.5)}),
        },
    )
    with pytest.raises(ZeroEvidenceError):
        posterior(net, {"b": "f"}, "a")


def test_unknown_evidence_state_raises_keyerror():
    with pytest.raises(KeyError):
        posterior(chain_network(), {"b": "zzz"}, "a")


# --- Likelihood ratio --------------------------------------------------------


def test_likelihood_ratio_by_hand():
    net = chain_network()
    # LR for b=t comparing a=t vs a=f is 0.9 / 0.2
    assert likelihood_ratio(net, {"b": "t"}, "a", "t", "f") == pytest.approx(
        4.5, abs=1e-12
    )


def test_likelihood_ratio_rejects_instantiated_hypothesis():
    with pytest.raises(ValueError):
        likelihood_ratio(chain_network(), {"a": "t"}, "a", "t", "f")


def test_likelihood_ratio_is_prior_invariant():
    def with_prior(p):
        net = chain_network()
        net.cpts["a"] = Cpt("a", (), {(): (p, 1.0 - p)})
        return net

    reference = likelihood_ratio(with_prior(0.3), {"c": "t"}, "a", "t", "f")
    for p in (0.05, 0.5, 0.9):
        lr = likelihood_ratio(with_prior(p), {"c": "t"}, "a", "t", "f")
        assert lr == pytest.approx(reference, rel=1e-12)


def test_likelihood_ratio_zero_denominator():
    net = Network(
        variables=[Variable("a", ("t", "f")), Variable("b", ("t", "f"))],
        cpts={
            "a": Cpt("a", (), {(): (0.5, 0.5)}),
            "b": Cpt("b", ("a",), {("t",): (0.5, 0.5), ("f",): (0.0, 1.0)}),
        },
    )
    with pytest.raises(ZeroEvidenceError):
        likelihood_ratio(net, {"b": "t"}, "a", "t", "f")


# --- Elimination order -------------------------------------------------------


def test_elimination_order_excludes_query_and_evidence():
    net = chain_network()
    order = elimination_order(net, "a", {"c": "t"})
    assert "a" not in order and "c" not in order
    assert set(order) == {"b"}


def test_elimination_order_is_deterministic():
    rng = random.Random(7)
    net = random_network(rng)
    ev = random_evidence(rng, net)
    query = next(v for v in net.variable_ids() if v not in ev)
    assert elimination_order(net, query, ev) == elimination_order(net, query, ev)


def test_explicit_order_permutations_agree():
    rng = random.Random(11)
    net = random_network(rng, max_vars=8)
    ev = random_evidence(rng, net)
    query = next(v for v in net.variable_ids() if v not in ev)
    base = [v for v in net.variable_ids() if v != query and v not in ev]
    reference, _ = _run_elimination(net, ev, query, list(base))
    for _ in range(10):
        rng.shuffle(base)
        table, _ = _run_elimination(net, ev, query, list(base))
        np.testing.assert_allclose(table, reference, atol=1e-12)


# --- Oracle agreement (fast spot checks; the volume run is in acceptance) ----


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9))
def test_posterior_matches_brute_force(seed):
    rng = random.Random(seed)
    net = random_network(rng, max_vars=7)
    ev = random_evidence(rng, net)
    for var in net.variable_ids():
        if var in ev:
            continue
        fast = posterior(net, ev, var)
        slow = brute_force_posterior(net, ev, var)
        for state in net.variable(var).states:
            assert fast[state] == pytest.approx(slow[state], abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9))
def test_likelihood_matches_brute_force(seed):
    rng = random.Random(seed)
    net = random_network(rng, max_vars=7)
    ev = random_evidence(rng, net)
    assert likelihood_of_evidence(net, ev) == pytest.approx(
        brute_force_likelihood(net, ev), abs=1e-9
    )


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9))
def test_posteriors_are_distributions(seed):
    rng = random.Random(seed)
    net = random_network(rng, max_vars=8)
    ev = random_evidence(rng, net)
    for var in net.variable_ids():
        if var in ev:
            continue
        d = posterior(net, ev, var)
        probs = list(d.probabilities.values())
        assert all(p >= 0.0 for p in probs)
        assert sum(probs) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**9))
def test_chain_rule_decomposition(seed):
    """P(e1, e2) = P(e1) * P(e2 | e1), exercised via posteriors."""
    rng = random.Random(seed)
    net = random_network(rng, max_vars=7)
    ev = random_evidence(rng, net, max_items=3)
    if len(ev) < 2:
        return
    items = list(ev.items())
    rng.shuffle(items)
    joint = likelihood_of_evidence(net, dict(items))
    running = 1.0
    seen: dict = {}
    for var, state in items:
        running *= posterior(net, seen, var)[state]
        seen[var] = state
    assert joint == pytest.approx(running, rel=1e-9)


def test_brute_force_limit():
    big = Network(
        variables=[Variable(f"x{i}", tuple("abcd")) for i in range(13)],
        cpts={
            f"x{i}": Cpt(f"x{i}", (), {(): (0.25, 0.25, 0.25, 0.25)})
            for i in range(13)
        },
    )
    with pytest.raises(StateSpaceError):
        brute_force_posterior(big, {}, "x0")
    # the elimination engine has no such limit
    assert posterior(big, {}, "x0")["a"] == pytest.approx(0.25, abs=1e-12)
