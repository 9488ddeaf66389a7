"""Instance files: JSON description of (Q, W) with a group action.

::

    {
      "group": [3, 3],
      "conductor": 3,                       # optional
      "quiver": {"vertices": ["i1", ...],
                 "arrows": [{"id": "x1", "source": "i1", "target": "i1"}, ...]},
      "action": [                           # one entry per cyclic factor
        {"vertices": {"i1": "i2", ...},     # omitted vertices are fixed
         "arrows": {"x1": [["1", "x2"]], ...}}   # omitted arrows are fixed
      ],
      "potential": [["1", ["y3", "y2", "y1"]], ...],
      "choices": {"I_tilde": [...], "kappa": {"j3": [0, 1]},
                  "R": [{"from": "i1", "to": "j1", "reps": ["i1"]}]},
      "truncation": 16
    }

Cycles in ``potential`` are listed in composition order a_n ... a_1: the
rightmost arrow is traversed first.  Scalars are strings such as
``"1/2*z + 3"`` where ``z`` is a primitive root of unity of order
``conductor``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from importlib import resources
from math import gcd

from .action import RawAction, MonomialAction, normalize, rewrite_potential
from .group import AbelianGroup
from .quiver import Potential, Quiver
from .scalar import parse_scalar


class InstanceError(ValueError):
    pass


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass
class Instance:
    group: AbelianGroup
    quiver: Quiver
    action_data: list
    potential_items: list
    choices_seed: dict = field(default_factory=dict)
    truncation: int = 16
    raw_json: dict = field(default_factory=dict)

    def raw_action(self):
        return RawAction(self.group, self.quiver, self.action_data)

    def monomial(self):
        """(MonomialAction, base_change, Potential) after normalization."""
        raw = self.raw_action()
        if raw.is_monomial():
            act = MonomialAction.from_raw(raw)
            try:
                # stabilizers must already act diagonally
                from .action import chi_of
                for a in self.quiver.arrows:
                    chi_of(act, a)
                L = self.group.conductor
                W = self.potential()
                return act, {a: {a: parse_scalar("1", L)} for a in self.quiver.arrows}, W
            except ValueError:
                pass
        act, base_change = normalize(raw)
        W = rewrite_potential(self.potential_items, self.quiver, act.quiver, base_change)
        return act, base_change, W

    def potential(self):
        return Potential.from_cycles(self.quiver, self.potential_items)


def _scalar(text, L, where):
    try:
        return parse_scalar(str(text), L)
    except ValueError as exc:
        raise InstanceError(f"{where}: {exc}") from None


def parse_instance(data):
    if isinstance(data, str):
        data = json.loads(data)
    try:
        factors = [int(n) for n in data["group"]]
        exponent = reduce(_lcm, factors, 1)
        L = int(data.get("conductor") or exponent)
        L = _lcm(L, exponent)
        G = AbelianGroup(factors, conductor=L)
        qd = data["quiver"]
        vertices = list(qd["vertices"])
        arrows = [(a["id"], a["source"], a["target"]) for a in qd["arrows"]]
        Q = Quiver(vertices, arrows)
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"invalid group or quiver: {exc}") from None
    action = data.get("action") or [{} for _ in factors]
    if len(action) != len(factors):
        raise InstanceError("action needs one entry per cyclic factor")
    gen_data = []
    for k, entry in enumerate(action):
        vmap = dict(entry.get("vertices", {}))
        amap = {}
        for a, img in entry.get("arrows", {}).items():
            if a not in Q.arrows:
                raise InstanceError(f"action[{k}]: unknown arrow {a!r}")
            amap[a] = {}
            for coeff, b in img:
                c = _scalar(coeff, L, f"action[{k}].arrows[{a}]")
                amap[a][b] = amap[a].get(b, 0) + c
        gen_data.append((vmap, amap))
    items = []
    for n, (coeff, cycle) in enumerate(data.get("potential", [])):
        c = _scalar(coeff, L, f"potential[{n}]")
        for a in cycle:
            if a not in Q.arrows:
                raise InstanceError(f"potential[{n}]: unknown arrow {a!r}")
        try:
            p = Q.path(cycle)
        except ValueError as exc:
            raise InstanceError(f"potential[{n}]: {exc}") from None
        if p.source != p.target:
            raise InstanceError(f"potential[{n}]: not a cycle")
        items.append((c, tuple(cycle)))
    seed = {}
    ch = data.get("choices") or {}
    if "I_tilde" in ch:
        seed["I_tilde"] = list(ch["I_tilde"])
    if "kappa" in ch:
        seed["kappa"] = {v: tuple(g) for v, g in ch["kappa"].items()}
    if "R" in ch:
        seed["R"] = {(r["from"], r["to"]): list(r["reps"]) for r in ch["R"]}
    return Instance(G, Q, gen_data, items, seed, int(data.get("truncation", 16)), data)


def load_instance(path):
    with open(path, encoding="utf-8") as fh:
        return parse_instance(json.load(fh))


def bundled(name):
    """Load one of the bundled instances: ``paper_z3xz3``, ``kronecker_z2``, ``trivial``."""
    text = resources.files("qpskew.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return parse_instance(json.loads(text))
