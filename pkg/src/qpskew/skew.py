"""The skew group algebra (kQ)G as a brute-force oracle.

Elements are finite sums of ``p (x) g`` with ``p`` a path and ``g`` a group
element; products follow ``(p (x) g)(q (x) h) = p g(q) (x) gh``.  Paths longer
than the algebra's ``max_len`` are dropped and the result is flagged.
"""
from __future__ import annotations

from .group import GroupAlgebraElement, idempotent
from .linalg import Echelon, is_independent, rank
from .quiver import Path, PathElement, format_path
from .scalar import one

DEFAULT_MAX_LEN = 16


class ContextMismatch(ValueError):
    pass


class NotARepresentative(ValueError):
    pass


class SkewElement:
    __slots__ = ("algebra", "terms", "truncated")

    def __init__(self, algebra, terms=None, truncated=False):
        self.algebra = algebra
        self.terms = {k: c for k, c in (terms or {}).items() if c}
        self.truncated = truncated

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise ContextMismatch("elements belong to different skew group algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return SkewElement(self.algebra, out, self.truncated or other.truncated)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if not c:
            return SkewElement(self.algebra, truncated=self.truncated)
        return SkewElement(self.algebra, {k: x * c for k, x in self.terms.items()}, self.truncated)

    def __mul__(self, other):
        if isinstance(other, SkewElement):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __bool__(self):
        return bool(self.terms)

    def degree_parts(self):
        """Split by (path length, path degree)."""
        q = self.algebra.quiver
        parts = {}
        for (p, g), c in self.terms.items():
            parts.setdefault((len(p), q.path_degree(p)), {})[(p, g)] = c
        return {k: SkewElement(self.algebra, v) for k, v in parts.items()}

    def __repr__(self):
        q = self.algebra.quiver
        if not self.terms:
            return "SkewElement(0)"
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), repr(kv[0])))
        body = " + ".join(f"({c})*{format_path(q, p)}#{g}" for (p, g), c in items)
        return f"SkewElement({body})"


class SkewAlgebra:
    """(kQ)G for a monomial action, with optional choice data for iota and e-bar."""

    def __init__(self, act, choices=None, max_len=DEFAULT_MAX_LEN):
        self.act = act
        self.group = act.group
        self.quiver = act.quiver
        self.choices = choices
        self.max_len = max_len

    # construction
    def zero(self):
        return SkewElement(self)

    def element(self, x, g=None):
        """``x (x) g`` for a Path or PathElement ``x``."""
        g = self.group.identity if g is None else g
        if isinstance(x, Path):
            return SkewElement(self, {(x, g): one(self.group.conductor)})
        return SkewElement(self, {(p, g): c for p, c in x.terms.items()})

    def unit(self):
        return self.group_element(GroupAlgebraElement.basis(self.group, self.group.identity))

    def group_element(self, a):
        """``1 (x) a`` for a group-algebra element ``a``."""
        terms = {}
        for v in self.quiver.vertices:
            p = Path(v, (), v)
            for g, c in a.terms.items():
                terms[(p, g)] = c
        return SkewElement(self, terms)

    def g(self, g):
        return self.group_element(GroupAlgebraElement.basis(self.group, g))

    # multiplication
    def mul(self, x, y):
        x._check(y)
        act, G = self.act, self.group
        by_target = {}
        for (q, h), d in y.terms.items():
            by_target.setdefault(q.target, []).append((q, h, d))
        out = {}
        truncated = x.truncated or y.truncated
        unit = act.unit
        for (p, g), c in x.terms.items():
            # need g(target(q)) == source(p)
            src = act.vertex(G.inv(g), p.source)
            for q, h, d in by_target.get(src, ()):
                if len(p.arrows) + len(q.arrows) > self.max_len:
                    truncated = True
                    continue
                s, gq = act.path(g, q)
                key = (Path(p.target, p.arrows + gq.arrows, gq.source), G.mul(g, h))
                val = c * d if s is unit else c * d * s
                if key in out:
                    out[key] = out[key] + val
                else:
                    out[key] = val
        return SkewElement(self, out, truncated)

    def left_group(self, a, x):
        """(1 (x) a) * x, without materializing 1 (x) a."""
        act, G = self.act, self.group
        out = {}
        for (p, h), d in x.terms.items():
            for g, c in a.terms.items():
                s, gp = act.path(g, p)
                key = (gp, G.mul(g, h))
                val = c * d * s
                out[key] = out[key] + val if key in out else val
        return SkewElement(self, out, x.truncated)

    def right_group(self, x, a):
        """x * (1 (x) a)."""
        G = self.group
        out = {}
        for (p, h), d in x.terms.items():
            for g, c in a.terms.items():
                key = (p, G.mul(h, g))
                val = c * d
                out[key] = out[key] + val if key in out else val
        return SkewElement(self, out, x.truncated)

    def apply_group(self, g, x):
        """The action of g on the skew algebra: conjugation by 1 (x) g."""
        G = self.group
        a = GroupAlgebraElement.basis(G, g)
        b = GroupAlgebraElement.basis(G, G.inv(g))
        return self.right_group(self.left_group(a, x), b)

    # choice-dependent pieces
    def _need_choices(self):
        if self.choices is None:
            raise ValueError("this operation needs choice data")
        return self.choices

    def iota(self, x):
        """iota(p) = (1 (x) kappa_t(p)) (p (x) 1) (1 (x) kappa_s(p)^-1), extended linearly."""
        ch = self._need_choices()
        G = self.group
        out = SkewElement(self)
        if isinstance(x, Path):
            x = PathElement.of(self.quiver, x)
        for p, c in x.terms.items():
            kt = GroupAlgebraElement.basis(G, ch.kappa[p.target])
            ks = GroupAlgebraElement.basis(G, G.inv(ch.kappa[p.source]))
            term = self.right_group(self.left_group(kt, self.element(p)), ks)
            out = out + term.scale(c)
        return out

    def vertex_idempotent(self, i0, rho):
        """e_{i0 rho} = i0 (x) e_rho."""
        ch = self._need_choices()
        if i0 not in ch.I_tilde:
            raise NotARepresentative(f"{i0!r} is not an orbit representative")
        e = idempotent(rho)
        p = Path(i0, (), i0)
        return SkewElement(self, {(p, g): c for g, c in e.terms.items()})

    def idempotent_at(self, i0, rho):
        return self.vertex_idempotent(i0, rho)

    def ebar(self):
        ch = self._need_choices()
        out = SkewElement(self)
        for i0 in ch.I_tilde:
            for rho in self.act.stabilizer(i0).characters:
                out = out + self.vertex_idempotent(i0, rho)
        return out

    def project_left(self, j0, sigma, x):
        """e_{j0 sigma} * x, without a general product."""
        y = self.left_group(idempotent(sigma), x)
        return SkewElement(self, {k: c for k, c in y.terms.items() if k[0].target == j0},
                           x.truncated)

    def project_right(self, x, i0, rho):
        """x * e_{i0 rho}, without a general product."""
        act = self.act
        kept = SkewElement(self, {(p, g): c for (p, g), c in x.terms.items()
                                  if p.source == act.vertex(g, i0)}, x.truncated)
        return self.right_group(kept, idempotent(rho))

    def sandwich(self, sigma, x, rho):
        """(1 (x) e_sigma) x (1 (x) e_rho)."""
        return self.right_group(self.left_group(idempotent(sigma), x), idempotent(rho))

    def corner_basis(self, i0, rho, j0, sigma):
        """{(1 (x) e_sigma) iota(a) (1 (x) e_rho) : a in D(i0,j0), chi_a = rho|.sigma|^-1}."""
        ch = self._need_choices()
        out = []
        for a in ch.D[(i0, j0)]:
            if chi_matches(ch.chi[a], rho, sigma):
                out.append(self.sandwich(sigma, self.iota(self.quiver.arrow(a)), rho))
        return out

    def dual_corner_basis(self, i0, rho, j0, sigma):
        """Same corner, spanned by arrows b: i0 -> j with j in R_{j0 i0}."""
        ch = self._need_choices()
        act = self.act
        out = []
        reps = ch.R[(j0, i0)]
        for b, (s, t) in self.quiver.arrows.items():
            if s != i0 or t not in reps:
                continue
            if chi_matches(chi_of_cached(act, b), rho, sigma):
                out.append(self.sandwich(sigma, self.iota(self.quiver.arrow(b)), rho))
        return out

    def corner_span(self, i0, rho, j0, sigma, arrows=None):
        """Brute-force spanning set of e_{j0 sigma} (M G) e_{i0 rho}."""
        self.vertex_idempotent(i0, rho)
        self.vertex_idempotent(j0, sigma)
        arrows = self.quiver.arrows if arrows is None else arrows
        G = self.group
        # (a (x) gh) e_rho = rho(h)^-1 (a (x) g) e_rho for h in G_i0, so one g
        # per coset of G_i0 suffices
        stab = self.act.stabilizer(i0)
        reps, seen = [], set()
        for g in G.elements:
            if g not in seen:
                reps.append(g)
                seen.update(G.mul(g, h) for h in stab.elements)
        out = []
        for a in arrows:
            if self.quiver.target(a) != j0:
                continue
            for g in reps:
                # x e_{i0 rho} = 0 unless g(i0) is the source of a
                if self.act.vertex(g, i0) != self.quiver.source(a):
                    continue
                x = self.element(self.quiver.arrow(a), g)
                v = self.project_left(j0, sigma, self.project_right(x, i0, rho))
                if v:
                    out.append(v)
        return out

    def corner_dimension(self, i0, rho, j0, sigma, arrows=None):
        return rank(v.terms for v in self.corner_span(i0, rho, j0, sigma, arrows))


_chi_cache = {}


def chi_of_cached(act, a):
    from .action import chi_of

    key = (id(act), a)
    if key not in _chi_cache:
        _chi_cache[key] = (act, chi_of(act, a))
    return _chi_cache[key][1]


def chi_matches(chi, rho, sigma):
    """chi == rho|_K * sigma|_K^-1 on K = domain of chi."""
    K = chi.domain
    N = K.parent.exponent
    return all(
        (rho.exponent_at(k) - sigma.exponent_at(k) - chi.exponent_at(k)) % N == 0
        for k in K.elements
    )


def skew_mul(x, y):
    return x.algebra.mul(x, y)


def iota(algebra, x):
    return algebra.iota(x)


def check_corner(algebra, i0, rho, j0, sigma):
    """(basis, dual basis, oracle dimension, independent?, same span?)."""
    basis = algebra.corner_basis(i0, rho, j0, sigma)
    dual = algebra.dual_corner_basis(i0, rho, j0, sigma)
    dim = algebra.corner_dimension(i0, rho, j0, sigma)
    indep = is_independent(v.terms for v in basis) and is_independent(v.terms for v in dual)
    e = Echelon()
    for v in algebra.corner_span(i0, rho, j0, sigma):
        e.add(v.terms)
    inside = all(e.contains(v.terms) for v in basis + dual)
    return basis, dual, dim, indep, inside

