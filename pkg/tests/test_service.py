import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from casebn import bundles, dna
from casebn.cli import main
from casebn.service import SessionStore, create_app


@pytest.fixture
def client():
    return TestClient(create_app())


def open_session(client, network="samoan-case", **extra):
    response = client.post("/sessions", json={"network": network, **extra})
    assert response.status_code == 201
    return response.json()["session"]


def test_list_networks(client):
    response = client.get("/networks")
    assert response.status_code == 200
    assert response.json() == {"networks": list(bundles.BUNDLED_NETWORKS)}


def test_create_session_returns_variables(client):
    response = client.post("/sessions", json={"network": "screening-example"})
    body = response.json()
    assert response.status_code == 201
    assert body["network"] == "screening-example"
    assert {v["id"] for v in body["variables"]} == {"disease", "test"}


def test_create_session_unknown_network(client):
    assert client.post("/sessions", json={"network": "ghost"}).status_code == 404


def test_create_session_from_uploaded_file(client):
    text = bundles.data_text("screening-example.bn")
    sid = open_session(client, network=None, network_file=text)
    marginals = client.get(f"/sessions/{sid}/marginals?watch=disease").json()
    assert marginals["marginals"]["disease"]["present"] == pytest.approx(0.01)


def test_create_session_rejects_invalid_upload(client):
    bad = "[network]\nname = x\n[variable a]\nstates = t f\n[cpt a]\nparents =\nrow = 0.6 0.6\n"
    response = client.post("/sessions", json={"network_file": bad})
    assert response.status_code == 400
    assert any("row sum" in v for v in response.json()["violations"])


def test_create_session_rejects_unparseable_upload(client):
    response = client.post("/sessions", json={"network_file": "garbage\n"})
    assert response.status_code == 400


def test_create_session_with_config_override(client):
    sid = open_session(client, config={"hypothesis_prior": [0.2, 0.8]})
    body = client.get(f"/sessions/{sid}/marginals?watch=hypothesis").json()
    assert body["marginals"]["hypothesis"]["killer"] == pytest.approx(0.2, abs=1e-12)


def test_unknown_session_is_404(client):
    assert client.get("/sessions/nope/marginals").status_code == 404
    assert client.put(
        "/sessions/nope/evidence", json={"variable": "blood", "state": "true"}
    ).status_code == 404
    assert client.delete("/sessions/nope/evidence/blood").status_code == 404
    assert client.post("/sessions/nope/what-if", json={}).status_code == 404


def test_evidence_lifecycle(client):
    sid = open_session(client)
    put = client.put(
        f"/sessions/{sid}/evidence",
        json={"variable": "running", "state": "true", "watch": ["hypothesis"]},
    )
    assert put.status_code == 200
    assert put.json()["marginals"]["hypothesis"]["killer"] == pytest.approx(
        0.553072625698324, abs=1e-12
    )
    assert put.json()["evidence"] == {"running": "true"}

    delete = client.delete(f"/sessions/{sid}/evidence/running?watch=hypothesis")
    assert delete.status_code == 200
    assert delete.json()["evidence"] == {}
    assert delete.json()["marginals"]["hypothesis"]["killer"] == pytest.approx(0.5)


def test_evidence_rejects_unknown_state(client):
    sid = open_session(client)
    response = client.put(
        f"/sessions/{sid}/evidence", json={"variable": "running", "state": "maybe"}
    )
    assert response.status_code == 400


def test_contradictory_evidence_is_409_and_not_recorded(client):
    sid = open_session(client)
    ok = client.put(
        f"/sessions/{sid}/evidence",
        json={"variable": "hypothesis", "state": "killer", "watch": ["murderer"]},
    )
    assert ok.status_code == 200
    conflict = client.put(
        f"/sessions/{sid}/evidence",
        json={"variable": "murderer", "state": "samoan", "watch": ["murderer"]},
    )
    assert conflict.status_code == 409
    state = client.get(f"/sessions/{sid}/marginals?watch=murderer").json()
    assert state["evidence"] == {"hypothesis": "killer"}


def test_what_if_does_not_mutate_the_session(client):
    sid = open_session(client)
    hypothetical = client.post(
        f"/sessions/{sid}/what-if",
        json={"evidence": {"blood": "true"}, "watch": ["hypothesis"]},
    )
    assert hypothetical.status_code == 200
    assert hypothetical.json()["evidence"] == {"blood": "true"}
    current = client.get(f"/sessions/{sid}/marginals?watch=hypothesis").json()
    assert current["evidence"] == {}
    assert current["marginals"]["hypothesis"]["killer"] == pytest.approx(0.5)


def test_what_if_layers_on_existing_evidence(client):
    sid = open_session(client)
    client.put(f"/sessions/{sid}/evidence", json={"variable": "running", "state": "true"})
    response = client.post(
        f"/sessions/{sid}/what-if",
        json={"evidence": {"blood": "true"}, "watch": ["hypothesis"]},
    )
    assert response.json()["marginals"]["hypothesis"]["killer"] == pytest.approx(
        0.581972566949706, abs=1e-12
    )


def test_marginals_default_to_all_variables(client):
    sid = open_session(client, network="screening-example")
    body = client.get(f"/sessions/{sid}/marginals").json()
    assert set(body["marginals"]) == {"disease", "test"}


def test_lr_report_with_default_inputs(client):
    response = client.post("/lr-report", json={})
    body = response.json()
    assert response.status_code == 200
    assert body["exact_lr"] == pytest.approx(2601.698, abs=0.01)
    assert body["product_rule_lr"] == pytest.approx(2150.500, abs=0.01)


def test_lr_report_with_uploaded_inputs(client):
    response = client.post(
        "/lr-report",
        json={
            "freqs": dna.emit_allele_frequencies(dna.CASE_ALLELE_FREQUENCIES),
            "mixture": dna.emit_mixture(dna.CASE_MIXTURE),
            "profile": dna.emit_profile(dna.CASE_CRIME_PROFILE),
        },
    )
    assert response.status_code == 200
    assert response.json()["exact_lr"] == pytest.approx(2601.698, abs=0.01)


def test_lr_report_rejects_bad_csv(client):
    response = client.post(
        "/lr-report",
        json={"freqs": "x,y\n1,2\n", "mixture": "a,b\n", "profile": "m\n"},
    )
    assert response.status_code == 400


def test_lr_report_bytes_match_cli(client, tmp_path):
    """The two surfaces must agree byte-for-byte on structured output."""
    freqs = tmp_path / "freqs.csv"
    mixture = tmp_path / "mixture.csv"
    profile = tmp_path / "profile.csv"
    freqs.write_text(dna.emit_allele_frequencies(dna.CASE_ALLELE_FREQUENCIES))
    mixture.write_text(dna.emit_mixture(dna.CASE_MIXTURE))
    profile.write_text(dna.emit_profile(dna.CASE_CRIME_PROFILE))
    cli_result = CliRunner().invoke(
        main,
        ["lr", "--freqs", str(freqs), "--mixture", str(mixture),
         "--profile", str(profile), "--format", "structured"],
    )
    assert cli_result.exit_code == 0
    http_result = client.post("/lr-report", json={})
    assert http_result.text == cli_result.output


def test_session_expiry():
    store = SessionStore(idle_seconds=-1.0)
    client = TestClient(create_app(store))
    sid = open_session(client, network="screening-example")
    # with a negative idle window the next sweep drops the session
    assert client.get(f"/sessions/{sid}/marginals").status_code == 404


def test_responses_are_canonical_json(client):
    sid = open_session(client, network="screening-example")
    raw = client.get(f"/sessions/{sid}/marginals").text
    payload = json.loads(raw)
    assert raw == json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
