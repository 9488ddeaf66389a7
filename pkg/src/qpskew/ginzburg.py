"""Ginzburg dg algebras, the extended group action, and the dg map Phi.

The graded quiver of Q has the arrows of Q in degree 0, a reversed arrow
``Dual(a)`` in degree -1 for each arrow, and a loop ``Loop(v)`` in degree -2
at each vertex.  The differential is d(a) = 0, d(a*) = partial_a W and
d(t_v) = v (sum_a [a, a*]) v, extended by d(xy) = d(x)y + (-1)^|x| x d(y).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .action import MonomialAction
from .construct import Transport
from .linalg import Echelon, is_independent
from .quiver import Path, PathElement, Potential, Quiver, partial
from .scalar import one
from .skew import SkewAlgebra, SkewElement


class VerificationFailed(AssertionError):
    def __init__(self, check, generator, lhs, rhs):
        super().__init__(f"check ({check}) failed at {generator}: {lhs} != {rhs}")
        self.check = check
        self.generator = generator
        self.lhs = lhs
        self.rhs = rhs


@dataclass(frozen=True)
class Dual:
    arrow: object

    def __str__(self):
        return f"{self.arrow}*"


@dataclass(frozen=True)
class Loop:
    vertex: object

    def __str__(self):
        return f"t[{self.vertex}]"


def graded_quiver(Q):
    arrows = [(a, s, t) for a, (s, t) in Q.arrows.items()]
    arrows += [(Dual(a), t, s) for a, (s, t) in Q.arrows.items()]
    arrows += [(Loop(v), v, v) for v in Q.vertices]
    degrees = {Dual(a): -1 for a in Q.arrows}
    degrees.update({Loop(v): -2 for v in Q.vertices})
    gq = Quiver(Q.vertices, arrows, degrees)
    gq.base = Q
    return gq


def _rehome(x, quiver):
    """The same linear combination of paths, viewed in ``quiver``."""
    return PathElement(quiver, dict(x.terms))


class GinzburgAlgebra:
    """Gamma_{Q,W}: graded quiver plus the differential on generators."""

    def __init__(self, Q, W):
        self.base = Q
        self.W = W
        self.quiver = graded_quiver(Q)
        qb = self.quiver
        self.d_gen = {}
        for a in Q.arrows:
            self.d_gen[a] = PathElement(qb)
            self.d_gen[Dual(a)] = _rehome(partial(a, W), qb)
        for v in Q.vertices:
            terms = {}
            for a, (s, t) in Q.arrows.items():
                if t == v:
                    p = Path(t, (a, Dual(a)), t)
                    terms[p] = terms.get(p, 0) + 1
                if s == v:
                    p = Path(s, (Dual(a), a), s)
                    terms[p] = terms.get(p, 0) - 1
            self.d_gen[Loop(v)] = PathElement(qb, {p: one() * c for p, c in terms.items()})
        self._d_path = {}

    def generator(self, a):
        return PathElement.of(self.quiver, self.quiver.arrow(a))

    def d_path(self, p):
        hit = self._d_path.get(p)
        if hit is not None:
            return hit
        qb = self.quiver
        out = PathElement(qb)
        arrows = p.arrows
        # arrows are written left to right; the sign counts degrees to the left
        sign_deg = 0
        for k, a in enumerate(arrows):
            da = self.d_gen[a]
            if da:
                left, right = arrows[:k], arrows[k + 1:]
                terms = {Path(p.target, left + q.arrows + right, p.source): c
                         for q, c in da.terms.items()}
                part = PathElement(qb, terms)
                out = out + (part if sign_deg % 2 == 0 else part.scale(-1))
            sign_deg += qb.degree(a)
        self._d_path[p] = out
        return out

    def d(self, x):
        out = PathElement(self.quiver)
        for p, c in x.terms.items():
            out = out + self.d_path(p).scale(c)
        return out


def extend_action(act, rule="inverse"):
    """Monomial action on the graded quiver.

    g(t_v) = t_{g(v)}.  For g(a) = lam b the dual arrow goes to
    ``lam^-1 b*`` (``rule="inverse"``, the contragredient rule, which commutes
    with d) or to ``lam b*`` (``rule="same"``).
    """
    qb = graded_quiver(act.quiver)
    G = act.group
    vmaps, amaps = {}, {}
    for g in G.elements:
        vmaps[g] = dict(act.vmaps[g])
        am = {}
        for a, (c, b) in act.amaps[g].items():
            am[a] = (c, b)
            am[Dual(a)] = (c.inverse() if rule == "inverse" else c, Dual(b))
        for v in act.quiver.vertices:
            am[Loop(v)] = (one(G.conductor), Loop(act.vmaps[g][v]))
        amaps[g] = am
    return MonomialAction(G, qb, vmaps, amaps, check=False)


def skew_differential(gamma, x):
    """d(p (x) g) = d(p) (x) g on the skew group dg algebra."""
    A = x.algebra
    out = {}
    for (p, g), c in x.terms.items():
        for q, d in gamma.d_path(p).terms.items():
            key = (q, g)
            val = c * d
            out[key] = out[key] + val if key in out else val
    return SkewElement(A, out, x.truncated)


def skew_degree(x):
    degs = {x.algebra.quiver.path_degree(p) for p, _ in x.terms}
    if len(degs) > 1:
        raise ValueError("element is not homogeneous")
    return degs.pop() if degs else 0


class Phi:
    """Generator assignment of Phi: Gamma_{Q_G,W_G} -> e Gamma_{Q,W}G e."""

    def __init__(self, transport, W, W_G, max_len=None):
        self.transport = transport
        self.act = transport.act
        self.choices = transport.choices
        self.qg = transport.qg
        self.group = transport.group
        if max_len is None:
            max_len = max(W.max_length(), W_G.max_length(), 2) + 2
        self.gamma = GinzburgAlgebra(self.act.quiver, W)
        self.gamma_G = GinzburgAlgebra(self.qg, W_G)
        self.ext = extend_action(self.act)
        self.algebra = SkewAlgebra(self.ext, self.choices, max_len=max_len)
        self.images = {}
        self._build()

    def _build(self):
        A, G, qg = self.algebra, self.group, self.qg
        order = len(G)
        stab = qg.stab
        for v in qg.vertices:
            self.images[v] = A.vertex_idempotent(v.rep, v.rho)
        for arr, (s, t) in qg.arrows.items():
            a = arr.base
            base_arrow = A.quiver.arrow(a)
            self.images[arr] = A.sandwich(arr.sigma, A.iota(base_arrow), arr.rho)
            common = len(stab[s.rep].intersect(stab[t.rep]))
            factor = Fraction(order, common)
            star = A.quiver.arrow(Dual(a))
            self.images[Dual(arr)] = A.sandwich(arr.rho, A.iota(star), arr.sigma).scale(factor)
        for v in qg.vertices:
            factor = Fraction(order, len(stab[v.rep]))
            loop = A.quiver.arrow(Loop(v.rep))
            self.images[Loop(v)] = A.sandwich(v.rho, A.iota(loop), v.rho).scale(factor)

    def generator_image(self, x):
        return self.images[x]

    def path(self, p):
        if p.is_stationary:
            return self.images[p.target]
        out = self.images[p.arrows[0]]
        for a in p.arrows[1:]:
            out = out * self.images[a]
        return out

    def __call__(self, x):
        out = self.algebra.zero()
        for p, c in x.terms.items():
            out = out + self.path(p).scale(c)
        return out


def build_Phi(act, choices, W, W_G, transport=None):
    transport = transport or Transport(act, choices)
    return Phi(transport, W, W_G)


@dataclass
class Report:
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def record(self, name, ok, detail=None):
        entry = self.checks.setdefault(name, {"passed": True, "count": 0})
        entry["count"] += 1
        if not ok:
            entry["passed"] = False
            self.failures.append((name, detail))

    def raise_if_failed(self):
        if self.failures:
            name, detail = self.failures[0]
            raise VerificationFailed(name, *(detail or (None, None, None)))


def verify_dg_iso(phi, strict=False):
    """Check Phi on generators: (a) degree -1 differential, (b) degree -2
    differential, (c) degree -1 basis, (d) degree -2 span."""
    rep = Report()
    A, qg = phi.algebra, phi.qg
    gam, gamG = phi.gamma, phi.gamma_G
    # (a) d Phi(a*) = Phi d(a*)
    for arr in qg.arrows:
        star = Dual(arr)
        lhs = skew_differential(gam, phi.images[star])
        rhs = phi(gamG.d_gen[star])
        ok = lhs == rhs and not lhs.truncated and not rhs.truncated
        rep.record("a", ok, (str(star), repr(lhs), repr(rhs)))
    # (b) d Phi(t) = Phi d(t)
    for v in qg.vertices:
        loop = Loop(v)
        lhs = skew_differential(gam, phi.images[loop])
        rhs = phi(gamG.d_gen[loop])
        ok = lhs == rhs and not lhs.truncated and not rhs.truncated
        rep.record("b", ok, (str(loop), repr(lhs), repr(rhs)))
    # (c) Phi(a*) form a basis of e (M* G) e
    duals = [Dual(a) for a in phi.act.quiver.arrows]
    images = [phi.images[Dual(arr)] for arr in qg.arrows]
    indep = is_independent(x.terms for x in images)
    dim = 0
    span = Echelon()
    for v in qg.vertices:
        for w in qg.vertices:
            vecs = _corner_vectors(A, w, v, duals)
            e = Echelon()
            for x in vecs:
                e.add(x.terms)
                span.add(x.terms)
            dim += len(e)
    inside = all(span.contains(x.terms) for x in images)
    rep.record("c", indep and inside and dim == len(images),
               ("degree -1", f"rank {len(images)} independent={indep} inside={inside}", f"dim {dim}"))
    # (d) Phi(t) span e (T G) e
    loops = [Loop(v) for v in phi.act.quiver.vertices]
    t_images = [phi.images[Loop(v)] for v in qg.vertices]
    indep = is_independent(x.terms for x in t_images)
    span = Echelon()
    for v in qg.vertices:
        for w in qg.vertices:
            for x in _corner_vectors(A, w, v, loops):
                span.add(x.terms)
    inside = all(span.contains(x.terms) for x in t_images)
    rep.record("d", indep and inside and len(span) == len(t_images),
               ("degree -2", f"rank {len(t_images)} independent={indep} inside={inside}",
                f"dim {len(span)}"))
    if strict:
        rep.raise_if_failed()
    return rep


def _corner_vectors(A, w, v, arrows):
    return A.corner_span(v.rep, v.rho, w.rep, w.rho, arrows)


def perturb(W_G, factor=2):
    """Negative control: multiply the coefficient of the first cycle by ``factor``."""
    terms = W_G.sorted_terms()
    if not terms:
        raise ValueError("cannot perturb the zero potential")
    out = dict(W_G.terms)
    c, x = terms[0]
    out[c] = x * factor
    return Potential(W_G.quiver, out)
