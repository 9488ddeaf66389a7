"""Finite abelian groups Z/n_1 x ... x Z/n_k, subgroups, characters and
group-algebra idempotents.

Group elements are plain tuples of residues.  Character values are stored as
exponents of ``zeta_N`` where ``N`` is the exponent of the ambient group, and
evaluated into the group's coefficient field ``Q(zeta_L)`` (``L`` a multiple
of ``N``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import gcd, prod

from .scalar import one, root_of_unity


class NotASubgroup(ValueError):
    pass


def _lcm(a, b):
    return a * b // gcd(a, b)


class AbelianGroup:
    def __init__(self, factors, conductor=None):
        factors = tuple(int(n) for n in factors)
        if any(n < 1 for n in factors):
            raise ValueError("cyclic factors must be positive")
        self.factors = factors
        self.exponent = reduce(_lcm, factors, 1)
        if conductor is None:
            conductor = self.exponent
        if conductor % self.exponent:
            raise ValueError("conductor must be a multiple of the group exponent")
        self.conductor = conductor
        self._table = {}

    def __repr__(self):
        return "AbelianGroup(" + " x ".join(f"Z/{n}" for n in self.factors) + ")"

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def identity(self):
        return (0,) * len(self.factors)

    def __len__(self):
        return prod(self.factors)

    @cached_property
    def elements(self):
        return [tuple(r) for r in itertools.product(*(range(n) for n in self.factors))]

    def element(self, residues):
        residues = tuple(residues)
        if len(residues) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} residues, got {residues}")
        return tuple(r % n for r, n in zip(residues, self.factors))

    def mul(self, g, h):
        key = (g, h)
        hit = self._table.get(key)
        if hit is None:
            hit = self._table[key] = tuple((a + b) % n for a, b, n in zip(g, h, self.factors))
        return hit

    def inv(self, g):
        return tuple(-a % n for a, n in zip(g, self.factors))

    def power(self, g, k):
        return tuple((a * k) % n for a, n in zip(g, self.factors))

    def order(self, g):
        return reduce(_lcm, (n // gcd(a, n) for a, n in zip(g, self.factors)), 1)

    def generators(self):
        """The standard generators e_1, ..., e_k of the cyclic factors."""
        k = len(self.factors)
        return [tuple((1 if i == j else 0) % n for j, n in enumerate(self.factors)) for i in range(k)]

    @cached_property
    def whole(self):
        return subgroup_generated(self, self.generators())

    @cached_property
    def trivial(self):
        return subgroup_generated(self, [])

    @cached_property
    def dual(self):
        """All characters of the whole group."""
        return characters_of(self.whole)

    def root(self, k):
        """zeta_N^k in the group's coefficient field, N = exponent."""
        return root_of_unity(self.conductor, k * (self.conductor // self.exponent))


class Subgroup:
    def __init__(self, parent, elements, generators):
        self.parent = parent
        self.elements = tuple(sorted(elements))
        self.element_set = frozenset(self.elements)
        self.generators = tuple(generators)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.element_set == other.element_set

    def __hash__(self):
        return hash(self.element_set)

    def __le__(self, other):
        return self.element_set <= other.element_set

    def __repr__(self):
        return f"Subgroup(gens={list(self.generators)}, order={len(self)})"

    def intersect(self, other):
        common = self.element_set & other.element_set
        return subgroup_generated(self.parent, sorted(common))

    @cached_property
    def characters(self):
        return characters_of(self)


def _span(parent, gens):
    elems = {parent.identity}
    frontier = [parent.identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = parent.mul(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return elems


def subgroup_generated(parent, gens):
    """Smallest subgroup containing ``gens``, with a small generating list.

    Generators are picked greedily by decreasing element order, ties broken
    lexicographically, so the generating list is deterministic.
    """
    gens = [parent.element(g) for g in gens]
    elems = _span(parent, gens)
    chosen = []
    current = {parent.identity}
    for g in sorted(elems, key=lambda x: (-parent.order(x), x)):
        if g not in current:
            chosen.append(g)
            current = _span(parent, chosen)
            if len(current) == len(elems):
                break
    return Subgroup(parent, elems, chosen)


@dataclass(frozen=True)
class Character:
    """Homomorphism from a subgroup to roots of unity.

    ``exps`` lists exponents (mod the ambient exponent N) on the subgroup's
    sorted elements; ``key`` gives the ordering tuple on the generators.
    """

    domain: Subgroup = field(compare=False, repr=False)
    exps: tuple
    key: tuple = field(compare=False)
    label: str = field(default="", compare=False)

    @cached_property
    def table(self):
        return dict(zip(self.domain.elements, self.exps))

    def exponent_at(self, g):
        try:
            return self.table[g]
        except KeyError:
            raise NotASubgroup(f"{g} is not in the character's domain") from None

    def __call__(self, g):
        return self.domain.parent.root(self.exponent_at(g))

    def __mul__(self, other):
        return _make_character(self.domain, [(a + b) for a, b in zip(self.exps, other.exps)])

    def conj(self):
        return _make_character(self.domain, [-a for a in self.exps])

    def is_trivial(self):
        return not any(self.exps)

    def __lt__(self, other):
        return (len(self.domain), self.key) < (len(other.domain), other.key)

    def __hash__(self):
        return hash((self.domain.element_set, self.exps))

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.domain == other.domain
            and self.exps == other.exps
        )

    def __str__(self):
        return self.label or "chi" + str(self.key)


def _make_character(H, exps):
    N = H.parent.exponent
    exps = tuple(e % N for e in exps)
    table = dict(zip(H.elements, exps))
    key = []
    for g in H.generators:
        o = H.parent.order(g)
        key.append(table[g] // (N // o))
    key = tuple(key)
    label = "tr" if not any(exps) else "chi(" + ",".join(map(str, key)) + ")"
    return Character(H, exps, key, label)


def characters_of(H):
    """All |H| characters of ``H``, sorted by their exponent tuple on the generators."""
    G = H.parent
    N = G.exponent
    chars = {}
    # every character of H is the restriction of a character of G
    for c in itertools.product(*(range(n) for n in G.factors)):
        exps = []
        for h in H.elements:
            exps.append(sum(ci * hi * (N // n) for ci, hi, n in zip(c, h, G.factors)))
        ch = _make_character(H, exps)
        chars.setdefault(ch.key, ch)
    out = [chars[k] for k in sorted(chars)]
    assert len(out) == len(H)
    return out


def trivial_character(H):
    return _make_character(H, [0] * len(H))


def restrict_character(rho, K):
    if not K <= rho.domain:
        raise NotASubgroup("restriction target is not contained in the domain")
    return _make_character(K, [rho.exponent_at(g) for g in K.elements])


def character_from_values(H, value_of):
    """Character of ``H`` whose value at g is the root of unity ``value_of(g)``."""
    G = H.parent
    N = G.exponent
    exps = []
    for g in H.elements:
        v = value_of(g)
        for e in range(N):
            if G.root(e) == v:
                exps.append(e)
                break
        else:
            raise ValueError(f"{v} is not an {N}-th root of unity")
    ch = _make_character(H, exps)
    for a in H.elements:
        for b in H.elements:
            if ch.exponent_at(G.mul(a, b)) != (ch.exponent_at(a) + ch.exponent_at(b)) % N:
                raise ValueError("values do not define a homomorphism")
    return ch


class GroupAlgebraElement:
    """Element sum c_g g of the group algebra kG (no zero terms stored)."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {g: c for g, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, group, g):
        return cls(group, {g: one(group.conductor)})

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return GroupAlgebraElement(self.group, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return GroupAlgebraElement(self.group, {g: x * c for g, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return self.scale(other)
        out = {}
        G = self.group
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                k = G.mul(g, h)
                out[k] = out.get(k, 0) + a * b
        return GroupAlgebraElement(G, out)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        inner = " + ".join(f"({c})*{g}" for g, c in sorted(self.terms.items()))
        return f"GroupAlgebraElement({inner or '0'})"


@lru_cache(maxsize=4096)
def idempotent(rho):
    """e_rho = (1/|H|) sum_{h in H} rho(h) h."""
    H = rho.domain
    inv = Fraction(1, len(H))
    return GroupAlgebraElement(H.parent, {h: rho(h) * inv for h in H.elements})


def identity_element(G):
    return GroupAlgebraElement.basis(G, G.identity)
