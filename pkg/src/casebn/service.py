"""HTTP facade for the evidence-exploration UI.

Sessions hold a loaded network plus the current hard evidence and live in
memory with idle expiry; they are exploratory, not persisted.  Every
response body is the same canonical JSON the command line emits, so the
two surfaces are byte-for-byte comparable.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response

from . import bundles, dna, report
from .casemodel import build_case_network, case_config_from_dict
from .inference import posterior
from .netfile import ParseError, parse_network_file
from .network import Distribution, Network, ZeroEvidenceError, validate_network

SESSION_IDLE_SECONDS = 3600.0


@dataclass
class Session:
    id: str
    network: Network
    network_name: str
    evidence: dict[str, str] = field(default_factory=dict)
    created: float = field(default_factory=time.time)
    last_used: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, idle_seconds: float = SESSION_IDLE_SECONDS):
        self._sessions: dict[str, Session] = {}
        self._guard = threading.Lock()
        self._idle = idle_seconds

    def create(self, network: Network, name: str) -> Session:
        session = Session(id=uuid.uuid4().hex, network=network, network_name=name)
        with self._guard:
            self._sweep()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._guard:
            self._sweep()
            session = self._sessions.get(session_id)
            if session:
                session.last_used = time.time()
            return session

    def _sweep(self) -> None:
        now = time.time()
        expired = [
            sid for sid, s in self._sessions.items()
            if now - s.last_used > self._idle
        ]
        for sid in expired:
            del self._sessions[sid]


def _json(payload: dict, status: int = 200) -> Response:
    return Response(
        content=report.to_json(payload), status_code=status,
        media_type="application/json",
    )


def _marginals(
    net: Network, evidence: dict[str, str], watch: list[str]
) -> dict[str, Distribution]:
    targets = watch or net.variable_ids()
    return {var: posterior(net, evidence, var) for var in targets}


def _parse_watch(request: Request, body: dict | None = None) -> list[str]:
    raw = request.query_params.get("watch", "")
    watch = [w for w in raw.split(",") if w]
    if body and body.get("watch"):
        watch += [w for w in body["watch"] if w]
    return watch


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="casebn")
    sessions = store or SessionStore()

    @app.get("/networks")
    def list_networks() -> Response:
        return _json({"networks": list(bundles.BUNDLED_NETWORKS)})

    @app.post("/sessions")
    async def create_session(request: Request) -> Response:
        body = await request.json()
        name = body.get("network")
        config = body.get("config")
        if body.get("network_file"):
            try:
                doc = parse_network_file(body["network_file"])
                net = doc.to_network()
            except (ParseError, ValueError) as exc:
                return _json(report.error_payload(str(exc)), 400)
            name = net.name or "uploaded"
        elif name in bundles.BUNDLED_NETWORKS:
            if config and name == "samoan-case":
                net = build_case_network(case_config_from_dict(config))
            else:
                net = bundles.load_bundled_network(name)
        else:
            return _json(
                report.error_payload(f"unknown network {name!r}"), 404
            )
        violations = validate_network(net)
        if violations:
            return _json(
                report.error_payload("invalid network", violations), 400
            )
        session = sessions.create(net, name)
        return _json(
            {
                "session": session.id,
                "network": name,
                "variables": [
                    {"id": v.id, "label": v.label, "states": list(v.states)}
                    for v in net.variables
                ],
            },
            201,
        )

    def _with_session(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            return None, _json(report.error_payload("unknown session"), 404)
        return session, None

    @app.get("/sessions/{session_id}/marginals")
    def marginals(session_id: str, request: Request) -> Response:
        session, err = _with_session(session_id)
        if err:
            return err
        watch = _parse_watch(request)
        with session.lock:
            try:
                result = _marginals(session.network, session.evidence, watch)
            except KeyError as exc:
                return _json(report.error_payload(str(exc)), 400)
            return _json(report.marginals_payload(session.id, session.evidence, result))

    @app.put("/sessions/{session_id}/evidence")
    async def set_evidence(session_id: str, request: Request) -> Response:
        session, err = _with_session(session_id)
        if err:
            return err
        body = await request.json()
        variable, state = body.get("variable"), body.get("state")
        watch = _parse_watch(request, body)
        with session.lock:
            candidate = {**session.evidence, variable: state}
            try:
                result = _marginals(session.network, candidate, watch)
            except KeyError as exc:
                return _json(report.error_payload(str(exc)), 400)
            except ZeroEvidenceError as exc:
                # evidence left unchanged
                return _json(report.error_payload(str(exc)), 409)
            session.evidence = candidate
            return _json(report.marginals_payload(session.id, session.evidence, result))

    @app.delete("/sessions/{session_id}/evidence/{variable}")
    def clear_evidence(session_id: str, variable: str, request: Request) -> Response:
        session, err = _with_session(session_id)
        if err:
            return err
        watch = _parse_watch(request)
        with session.lock:
            session.evidence.pop(variable, None)
            result = _marginals(session.network, session.evidence, watch)
            return _json(report.marginals_payload(session.id, session.evidence, result))

    @app.post("/sessions/{session_id}/what-if")
    async def what_if(session_id: str, request: Request) -> Response:
        session, err = _with_session(session_id)
        if err:
            return err
        body = await request.json()
        deltas = body.get("evidence", {})
        watch = _parse_watch(request, body)
        with session.lock:
            hypothetical = {**session.evidence, **deltas}
            try:
                result = _marginals(session.network, hypothetical, watch)
            except KeyError as exc:
                return _json(report.error_payload(str(exc)), 400)
            except ZeroEvidenceError as exc:
                return _json(report.error_payload(str(exc)), 409)
            return _json(report.marginals_payload(session.id, hypothetical, result))

    @app.post("/lr-report")
    async def lr_report(request: Request) -> Response:
        body = await request.json()
        try:
            if body.get("freqs") or body.get("mixture") or body.get("profile"):
                freqs = dna.load_allele_frequencies(body["freqs"])
                mix = dna.load_mixture(body["mixture"])
                profile = dna.load_profile(body["profile"])
            else:
                freqs, mix, profile = bundles.load_bundled_dna_inputs()
            result = dna.build_lr_report(freqs, mix, profile)
        except (dna.DnaInputError, KeyError) as exc:
            return _json(report.error_payload(str(exc)), 400)
        except ZeroEvidenceError as exc:
            return _json(report.error_payload(str(exc)), 409)
        return _json(report.lr_report_payload(result))

    return app
