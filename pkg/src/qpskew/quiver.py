"""Quivers, paths, path-algebra elements and potentials.

Paths compose like functions: in ``Path.arrows = (a_n, ..., a_1)`` the arrow
``a_1`` is traversed first, and ``p * q`` is defined when ``source(p) ==
target(q)``.  Arrow and vertex ids can be any hashable; rotations of cycles
are compared through the arrow positions in the owning quiver.
"""
from __future__ import annotations

from typing import NamedTuple

from .scalar import Scalar

DEFAULT_MAX_CYCLE = 32


class QuiverMismatch(ValueError):
    pass


class NotCyclic(ValueError):
    pass


class Quiver:
    """Finite directed graph with optional arrow degrees (default 0)."""

    def __init__(self, vertices, arrows, degrees=None):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex ids must be unique")
        vset = set(self.vertices)
        self.arrows = {}
        for a, s, t in arrows:
            if a in self.arrows:
                raise ValueError(f"duplicate arrow id {a!r}")
            if s not in vset or t not in vset:
                raise ValueError(f"arrow {a!r} has an unknown endpoint")
            self.arrows[a] = (s, t)
        self.degrees = dict(degrees or {})
        self.arrow_index = {a: k for k, a in enumerate(self.arrows)}
        self.vertex_index = {v: k for k, v in enumerate(self.vertices)}

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    def source(self, a):
        return self.arrows[a][0]

    def target(self, a):
        return self.arrows[a][1]

    def degree(self, a):
        return self.degrees.get(a, 0)

    def arrow(self, a):
        s, t = self.arrows[a]
        return Path(t, (a,), s)

    def stationary(self, v):
        return Path(v, (), v)

    def path(self, arrows):
        """Path from arrow ids listed in composition order a_n, ..., a_1."""
        arrows = tuple(arrows)
        if not arrows:
            raise ValueError("use stationary() for length-zero paths")
        for left, right in zip(arrows, arrows[1:]):
            if self.source(left) != self.target(right):
                raise ValueError(f"{left!r} and {right!r} do not compose")
        return Path(self.target(arrows[0]), arrows, self.source(arrows[-1]))

    def arrows_between(self, s, t):
        return [a for a, (x, y) in self.arrows.items() if x == s and y == t]

    def path_degree(self, p):
        return sum(self.degrees.get(a, 0) for a in p.arrows)

    def paths_of_length(self, n, source=None, target=None):
        """All paths with ``n`` arrows, optionally with fixed endpoints."""
        if n == 0:
            return [self.stationary(v) for v in self.vertices
                    if (source is None or v == source) and (target is None or v == target)]
        out_by_source = {}
        for a, (s, t) in self.arrows.items():
            out_by_source.setdefault(s, []).append(a)
        starts = [source] if source is not None else self.vertices
        walks = [((), v, v) for v in starts]
        for _ in range(n):
            walks = [((a,) + arr, s, self.target(a))
                     for arr, s, t in walks for a in out_by_source.get(t, [])]
        return [Path(t, arr, s) for arr, s, t in walks if target is None or t == target]

    def cycles_up_to(self, max_len):
        """Cycles (nonstationary) of length <= max_len, one per rotation class."""
        out = []
        for n in range(1, max_len + 1):
            for p in self.paths_of_length(n):
                if p.source == p.target and min_rotation(self, p.arrows) == p.arrows:
                    out.append(p)
        return out


class Path(NamedTuple):
    target: object
    arrows: tuple
    source: object

    def __len__(self):
        return len(self.arrows)

    @property
    def is_stationary(self):
        return not self.arrows

    @property
    def is_cycle(self):
        return self.source == self.target


def compose(p, q):
    """``p * q`` (q first), or None when the endpoints do not match."""
    if p.source != q.target:
        return None
    return Path(p.target, p.arrows + q.arrows, q.source)


def min_rotation(quiver, arrows):
    idx = quiver.arrow_index
    n = len(arrows)
    best = arrows
    best_key = [idx[a] for a in arrows]
    for k in range(1, n):
        rot = arrows[k:] + arrows[:k]
        key = [idx[a] for a in rot]
        if key < best_key:
            best, best_key = rot, key
    return best


class PathElement:
    """Finite linear combination of paths in one quiver."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver, terms=None):
        self.quiver = quiver
        self.terms = {p: c for p, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, quiver, path, coeff=1):
        return cls(quiver, {path: Scalar.coerce(coeff)})

    def _check(self, other):
        if other.quiver is not self.quiver:
            raise QuiverMismatch("elements live in different quivers")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out[p] + c if p in out else c
        return PathElement(self.quiver, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if not c:
            return PathElement(self.quiver)
        return PathElement(self.quiver, {p: x * c for p, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PathElement):
            return self.scale(other)
        self._check(other)
        by_target = {}
        for q, d in other.terms.items():
            by_target.setdefault(q.target, []).append((q, d))
        out = {}
        for p, c in self.terms.items():
            for q, d in by_target.get(p.source, ()):
                r = Path(p.target, p.arrows + q.arrows, q.source)
                out[r] = out[r] + c * d if r in out else c * d
        return PathElement(self.quiver, out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, PathElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def sorted_terms(self):
        key = path_sort_key(self.quiver)
        return sorted(self.terms.items(), key=lambda pc: key(pc[0]))

    def __repr__(self):
        return f"PathElement({format_element(self)})"


def path_sort_key(quiver):
    ai, vi = quiver.arrow_index, quiver.vertex_index
    return lambda p: (len(p.arrows), [ai[a] for a in p.arrows], vi[p.target], vi[p.source])


def format_path(quiver, p):
    if p.is_stationary:
        return f"e[{p.target}]"
    return "*".join(str(a) for a in p.arrows)


def format_element(x):
    if not x.terms:
        return "0"
    return " + ".join(f"({c})*{format_path(x.quiver, p)}" for p, c in x.sorted_terms())


class Potential:
    """Linear combination of cycles modulo rotation, stored on minimal rotations."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver, terms=None):
        self.quiver = quiver
        self.terms = {c: x for c, x in (terms or {}).items() if x}

    @classmethod
    def from_cycles(cls, quiver, items, max_len=DEFAULT_MAX_CYCLE):
        """Potential from ``(coefficient, arrows a_n..a_1)`` pairs."""
        elem = PathElement(quiver)
        for coeff, arrows in items:
            if len(arrows) > max_len:
                raise ValueError(f"cycle longer than {max_len}")
            elem = elem + PathElement.of(quiver, quiver.path(arrows), coeff)
        return canonical_potential(elem)

    def __add__(self, other):
        out = dict(self.terms)
        for c, x in other.terms.items():
            out[c] = out[c] + x if c in out else x
        return Potential(self.quiver, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return Potential(self.quiver, {c: x * s for c, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Potential):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __bool__(self):
        return bool(self.terms)

    def lift(self):
        """The obvious lift to cyclic paths (one minimal rotation per class)."""
        return PathElement(self.quiver, dict(self.terms))

    def sorted_terms(self):
        key = path_sort_key(self.quiver)
        return sorted(self.terms.items(), key=lambda pc: key(pc[0]))

    def max_length(self):
        return max((len(c) for c in self.terms), default=0)

    def __repr__(self):
        inner = " + ".join(f"({x})*{format_path(self.quiver, c)}" for c, x in self.sorted_terms())
        return f"Potential({inner or '0'})"


def rotations(p):
    n = len(p.arrows)
    out = []
    for i in range(n):
        # a_i ... a_1 a_n ... a_{i+1}, with arrows stored as (a_n, ..., a_1)
        k = n - i
        arr = p.arrows[k:] + p.arrows[:k]
        out.append(arr)
    return out


def _rotate_path(quiver, arrows):
    return Path(quiver.target(arrows[0]), arrows, quiver.source(arrows[-1]))


def shuffle(W):
    """s(W): sum over all rotations of every cycle."""
    q = W.quiver
    out = {}
    for c, x in W.terms.items():
        if not c.is_cycle:
            raise NotCyclic(f"{format_path(q, c)} is not a cycle")
        if c.is_stationary:
            continue
        for arr in rotations(c):
            r = _rotate_path(q, arr)
            out[r] = out[r] + x if r in out else x
    return PathElement(q, out)


def delta(a, x):
    """Strip a leading arrow ``a`` from each term; drop the others."""
    q = x.quiver
    out = {}
    for p, c in x.terms.items():
        if p.arrows and p.arrows[0] == a:
            rest = p.arrows[1:]
            r = Path(q.source(a), rest, p.source)
            out[r] = out[r] + c if r in out else c
    return PathElement(q, out)


def partial(a, W):
    """Cyclic derivative: delta_a(s(W))."""
    return delta(a, shuffle(W))


def cyc(x):
    """Keep exactly the cyclic terms (including stationary paths)."""
    return PathElement(x.quiver, {p: c for p, c in x.terms.items() if p.source == p.target})


def canonical_potential(x):
    q = x.quiver
    out = {}
    for p, c in x.terms.items():
        if not p.is_cycle:
            raise NotCyclic(f"{format_path(q, p)} is not a cycle")
        if p.is_stationary:
            r = p
        else:
            r = _rotate_path(q, min_rotation(q, p.arrows))
        out[r] = out[r] + c if r in out else c
    return Potential(q, out)
