"""Textual network file format.

A file is a sequence of sections.  Canonical emission is deterministic, so
files produced by `emit_network_file` re-emit byte-identically after a
parse; hand-written files are normalized by one parse/emit pass without
changing the network they describe.

    [network]
    name = screening-example

    [variable disease]
    label = Disease
    states = present absent

    [cpt test]
    parents = disease
    row present = 0.99 0.01
    row absent = 0.05 0.95

Template blocks declare reusable structure; `@slot` rows defer to numeric
vectors bound per instance:

    [template marker]
    inputs = samoan_origin:true,false s:Hispanic,Caucasian,AfroAmerican
    slots = samoan Hispanic Caucasian AfroAmerican

    [template-cpt marker maternal_gene]
    parents = samoan_origin s
    row true Hispanic = @samoan

    [instance D2]
    template = marker
    bind samoan_origin = samoan_origin
    slot samoan = 0.12 0.25 0.63

State labels and variable ids are whitespace- and comma-free tokens.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .network import Cpt, Network, Variable
from .templates import (
    NetworkTemplate,
    SlotRef,
    TemplateCpt,
    TemplateInstance,
    instantiate_all,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


@dataclass
class NetworkFile:
    """Parsed document: declaration order is preserved for emission."""

    name: str = ""
    variables: list[Variable] = field(default_factory=list)
    cpts: list[Cpt] = field(default_factory=list)
    templates: list[NetworkTemplate] = field(default_factory=list)
    instances: list[TemplateInstance] = field(default_factory=list)

    def to_network(self) -> Network:
        net = Network(
            variables=list(self.variables),
            cpts={c.child: c for c in self.cpts},
            name=self.name,
        )
        if self.instances:
            net = instantiate_all(net, self.instances, {t.name: t for t in self.templates})
        return net


def _fmt(x: float) -> str:
    return repr(float(x))


def _tokens(value: str) -> list[str]:
    return value.split()


# --- Parsing ----------------------------------------------------------------


def parse_network_file(text: str) -> NetworkFile:
    doc = NetworkFile()
    section: list[str] | None = None
    body: dict = {}
    start_line = 0

    def close_section() -> None:
        if section is not None:
            _finish_section(doc, section, body, start_line)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError("unterminated section header", lineno)
            close_section()
            section = line[1:-1].split()
            body = {"_entries": []}
            start_line = lineno
            if not section:
                raise ParseError("empty section header", lineno)
            continue
        if section is None:
            raise ParseError("content before any section header", lineno)
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        body["_entries"].append((key.strip(), value.strip(), lineno))
    close_section()
    return doc


def _entries(body: dict) -> list[tuple[str, str, int]]:
    return body["_entries"]


def _single(body: dict, key: str, section: str, line: int) -> str:
    values = [v for k, v, _ in _entries(body) if k == key]
    if not values:
        raise ParseError(f"section [{section}] is missing {key!r}", line)
    if len(values) > 1:
        raise ParseError(f"section [{section}] repeats {key!r}", line)
    return values[0]


def _optional(body: dict, key: str, default: str = "") -> str:
    values = [v for k, v, _ in _entries(body) if k == key]
    return values[0] if values else default


def _parse_rows(body: dict, section: str) -> dict[tuple[str, ...], tuple[float, ...] | SlotRef]:
    rows: dict[tuple[str, ...], tuple[float, ...] | SlotRef] = {}
    for key, value, lineno in _entries(body):
        if key == "row" or key.startswith("row "):
            combo = tuple(key.split()[1:])
            if combo in rows:
                raise ParseError(f"duplicate row {combo} in [{section}]", lineno)
            if value.startswith("@"):
                rows[combo] = SlotRef(value[1:])
            else:
                try:
                    rows[combo] = tuple(float(t) for t in _tokens(value))
                except ValueError:
                    raise ParseError(f"bad probability row {value!r}", lineno) from None
    return rows


def _literal_rows(rows, section: str, line: int) -> dict[tuple[str, ...], tuple[float, ...]]:
    for combo, row in rows.items():
        if isinstance(row, SlotRef):
            raise ParseError(
                f"slot reference outside a template in [{section}]", line
            )
    return rows


def _finish_section(doc: NetworkFile, header: list[str], body: dict, line: int) -> None:
    kind = header[0]
    sec = " ".join(header)
    if kind == "network":
        doc.name = _optional(body, "name")
    elif kind == "variable":
        if len(header) != 2:
            raise ParseError(f"[variable] needs exactly one id, got {header[1:]}", line)
        doc.variables.append(
            Variable(
                header[1],
                tuple(_tokens(_single(body, "states", sec, line))),
                _optional(body, "label", header[1]),
            )
        )
    elif kind == "cpt":
        if len(header) != 2:
            raise ParseError(f"[cpt] needs exactly one child id", line)
        parents = tuple(_tokens(_optional(body, "parents")))
        rows = _literal_rows(_parse_rows(body, sec), sec, line)
        doc.cpts.append(Cpt(header[1], parents, rows))
    elif kind == "template":
        if len(header) != 2:
            raise ParseError("[template] needs exactly one name", line)
        inputs: dict[str, tuple[str, ...]] = {}
        for item in _tokens(_optional(body, "inputs")):
            if ":" not in item:
                raise ParseError(f"bad template input {item!r}, expected name:states", line)
            name, _, states = item.partition(":")
            inputs[name] = tuple(states.split(","))
        doc.templates.append(
            NetworkTemplate(
                name=header[1],
                inputs=inputs,
                slots=tuple(_tokens(_optional(body, "slots"))),
            )
        )
    elif kind == "template-variable":
        tmpl = _find_template(doc, header, line)
        tmpl.internals.append(
            Variable(
                header[2],
                tuple(_tokens(_single(body, "states", sec, line))),
                _optional(body, "label", header[2]),
            )
        )
    elif kind == "template-cpt":
        tmpl = _find_template(doc, header, line)
        parents = tuple(_tokens(_optional(body, "parents")))
        tmpl.cpts.append(TemplateCpt(header[2], parents, _parse_rows(body, sec)))
    elif kind == "instance":
        if len(header) != 2:
            raise ParseError("[instance] needs exactly one id", line)
        bindings: dict[str, str] = {}
        parameters: dict[str, tuple[float, ...]] = {}
        for key, value, lineno in _entries(body):
            if key.startswith("bind "):
                bindings[key.split()[1]] = value
            elif key.startswith("slot "):
                try:
                    parameters[key.split()[1]] = tuple(float(t) for t in _tokens(value))
                except ValueError:
                    raise ParseError(f"bad slot vector {value!r}", lineno) from None
        doc.instances.append(
            TemplateInstance(
                template=_single(body, "template", sec, line),
                instance_id=header[1],
                bindings=bindings,
                parameters=parameters,
            )
        )
    else:
        raise ParseError(f"unknown section kind {kind!r}", line)


def _find_template(doc: NetworkFile, header: list[str], line: int) -> NetworkTemplate:
    if len(header) != 3:
        raise ParseError(f"[{header[0]}] needs a template name and an id", line)
    for tmpl in doc.templates:
        if tmpl.name == header[1]:
            return tmpl
    raise ParseError(f"unknown template {header[1]!r}", line)


# --- Emission ---------------------------------------------------------------


def emit_network_file(doc: NetworkFile) -> str:
    out: list[str] = ["[network]", f"name = {doc.name}"]

    states_of = {v.id: v.states for v in doc.variables}
    for v in doc.variables:
        out += ["", f"[variable {v.id}]", f"label = {v.label}",
                "states = " + " ".join(v.states)]
    for cpt in doc.cpts:
        out += ["", f"[cpt {cpt.child}]", "parents = " + " ".join(cpt.parents)]
        out += _emit_rows(cpt.rows, [states_of[p] for p in cpt.parents])
    for tmpl in doc.templates:
        out += ["", f"[template {tmpl.name}]"]
        out.append(
            "inputs = "
            + " ".join(f"{n}:{','.join(s)}" for n, s in tmpl.inputs.items())
        )
        out.append("slots = " + " ".join(tmpl.slots))
        local = dict(tmpl.inputs)
        local.update({v.id: v.states for v in tmpl.internals})
        for v in tmpl.internals:
            out += ["", f"[template-variable {tmpl.name} {v.id}]",
                    f"label = {v.label}", "states = " + " ".join(v.states)]
        for cpt in tmpl.cpts:
            out += ["", f"[template-cpt {tmpl.name} {cpt.child}]",
                    "parents = " + " ".join(cpt.parents)]
            out += _emit_rows(cpt.rows, [local[p] for p in cpt.parents])
    for inst in doc.instances:
        out += ["", f"[instance {inst.instance_id}]", f"template = {inst.template}"]
        for name, target in inst.bindings.items():
            out.append(f"bind {name} = {target}")
        for slot, vector in inst.parameters.items():
            out.append(f"slot {slot} = " + " ".join(_fmt(x) for x in vector))
    return "\n".join(out) + "\n"


def _emit_rows(rows, parent_states: list[tuple[str, ...]]) -> list[str]:
    lines = []
    for combo in itertools.product(*parent_states):
        key = "row" + ("" if not combo else " " + " ".join(combo))
        row = rows[combo]
        if isinstance(row, SlotRef):
            lines.append(f"{key} = @{row.slot}")
        else:
            lines.append(f"{key} = " + " ".join(_fmt(x) for x in row))
    return lines


# --- Scenario files ---------------------------------------------------------


def parse_scenario(text: str):
    from .casemodel import Scenario, ScenarioStep

    name = ""
    steps: list[ScenarioStep] = []
    in_section = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "[scenario]":
            in_section = True
            continue
        if not in_section:
            raise ParseError("scenario file must start with [scenario]", lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "name":
            name = value
        elif key.startswith("step "):
            variable = key.split()[1]
            state, _, label = value.partition("|")
            steps.append(ScenarioStep(variable, state.strip(), label.strip()))
        else:
            raise ParseError(f"unexpected scenario line {line!r}", lineno)
    return Scenario(name, steps)


def emit_scenario(scenario) -> str:
    out = ["[scenario]", f"name = {scenario.name}"]
    for step in scenario.steps:
        out.append(f"step {step.variable} = {step.state} | {step.label}")
    return "\n".join(out) + "\n"
