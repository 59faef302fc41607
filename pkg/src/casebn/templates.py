"""Template networks with interface variables.

A template packages a reusable block of variables and CPTs.  Internal CPTs
may name interface inputs as parents, and rows may defer to named parameter
slots (numeric vectors bound at instantiation).  Instantiation flattens the
block into a plain Network, so the inference engine needs no changes:
repeated structure is purely organizational here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .network import Cpt, Network, Variable


class TemplateError(ValueError):
    """Unbound slot, state-space mismatch, or id collision."""


# Sentinel row value: the row is the parameter slot with this name.
@dataclass(frozen=True)
class SlotRef:
    slot: str


@dataclass(frozen=True)
class TemplateCpt:
    """Like Cpt, but rows may be SlotRef placeholders."""

    child: str
    parents: tuple[str, ...]
    rows: dict[tuple[str, ...], tuple[float, ...] | SlotRef]


@dataclass
class NetworkTemplate:
    name: str
    # Interface inputs the host must supply: input name -> expected states.
    inputs: dict[str, tuple[str, ...]] = field(default_factory=dict)
    internals: list[Variable] = field(default_factory=list)
    cpts: list[TemplateCpt] = field(default_factory=list)
    slots: tuple[str, ...] = ()

    def referenced_slots(self) -> set[str]:
        refs = set()
        for cpt in self.cpts:
            for row in cpt.rows.values():
                if isinstance(row, SlotRef):
                    refs.add(row.slot)
        return refs


@dataclass
class TemplateInstance:
    template: str
    instance_id: str
    # interface-input name -> host variable id
    bindings: dict[str, str] = field(default_factory=dict)
    # slot name -> probability vector
    parameters: dict[str, tuple[float, ...]] = field(default_factory=dict)


def instantiate(
    host: Network, inst: TemplateInstance, tmpl: NetworkTemplate
) -> Network:
    """Return a new flat network: host plus the namespaced template block.

    Internal variable ids are prefixed "instanceId.variableId"; interface
    parents are rewired to the bound host variables.
    """
    if inst.template != tmpl.name:
        raise TemplateError(
            f"instance {inst.instance_id!r} names template {inst.template!r}, "
            f"got {tmpl.name!r}"
        )
    for name, states in tmpl.inputs.items():
        if name not in inst.bindings:
            raise TemplateError(f"interface input {name!r} not bound")
        host_id = inst.bindings[name]
        if host_id not in host:
            raise TemplateError(f"bound host variable {host_id!r} does not exist")
        host_states = host.variable(host_id).states
        if host_states != tuple(states):
            raise TemplateError(
                f"state-space mismatch for input {name!r}: template expects "
                f"{tuple(states)}, host variable {host_id!r} has {host_states}"
            )
    missing = tmpl.referenced_slots() - set(inst.parameters)
    if missing:
        raise TemplateError(f"unbound parameter slots: {sorted(missing)}")

    def qualify(var_id: str) -> str:
        if var_id in tmpl.inputs:
            return inst.bindings[var_id]
        return f"{inst.instance_id}.{var_id}"

    variables = list(host.variables)
    cpts = dict(host.cpts)
    for v in tmpl.internals:
        new_id = qualify(v.id)
        if new_id in host:
            raise TemplateError(f"id collision: {new_id!r} already in host")
        variables.append(Variable(new_id, v.states, v.label))
    for tcpt in tmpl.cpts:
        rows: dict[tuple[str, ...], tuple[float, ...]] = {}
        for combo, row in tcpt.rows.items():
            if isinstance(row, SlotRef):
                row = tuple(inst.parameters[row.slot])
            rows[combo] = tuple(row)
        cpts[qualify(tcpt.child)] = Cpt(
            child=qualify(tcpt.child),
            parents=tuple(qualify(p) for p in tcpt.parents),
            rows=rows,
        )
    return Network(variables=variables, cpts=cpts, name=host.name)


def instantiate_all(
    host: Network,
    instances: list[TemplateInstance],
    templates: dict[str, NetworkTemplate],
) -> Network:
    """Apply a sequence of instances; order does not affect any posterior."""
    net = host
    for inst in instances:
        if inst.template not in templates:
            raise TemplateError(f"unknown template {inst.template!r}")
        net = instantiate(net, inst, templates[inst.template])
    return net
