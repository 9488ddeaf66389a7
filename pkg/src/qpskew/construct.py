"""The quiver Q_G, the isomorphism phi: kQ_G -> e(kQ)Ge, and the potential W_G.

Vertices of Q_G are pairs (representative, character of its stabilizer).
Each arrow ``QGArrow(a, rho, sigma)`` comes from a distinguished arrow ``a``
and runs from ``(s, rho)`` to ``(t, sigma)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .action import NotInvariant, check_invariance, make_choices
from .linalg import Echelon
from .quiver import Path, PathElement, Potential, Quiver, canonical_potential, cyc
from .scalar import one
from .skew import SkewAlgebra, chi_matches


class NotInImage(ValueError):
    pass


class NotInOrbitOfDistinguished(ValueError):
    pass


@dataclass(frozen=True)
class QGVertex:
    rep: object
    rho: object

    def __str__(self):
        return f"({self.rep},{self.rho})"


@dataclass(frozen=True)
class QGArrow:
    base: object
    rho: object
    sigma: object

    def __str__(self):
        return f"{self.base}~[{self.rho},{self.sigma}]"


class QGQuiver(Quiver):
    def __init__(self, act, choices):
        G = act.group
        self.act = act
        self.choices = choices
        self.stab = {i0: act.stabilizer(i0) for i0 in choices.I_tilde}
        vertices = [QGVertex(i0, rho) for i0 in choices.I_tilde for rho in self.stab[i0].characters]
        arrows = []
        for i0 in choices.I_tilde:
            for j0 in choices.I_tilde:
                for a in choices.D[(i0, j0)]:
                    chi = choices.chi[a]
                    for rho in self.stab[i0].characters:
                        for sigma in self.stab[j0].characters:
                            if chi_matches(chi, rho, sigma):
                                arrows.append((QGArrow(a, rho, sigma),
                                               QGVertex(i0, rho), QGVertex(j0, sigma)))
        super().__init__(vertices, arrows)
        self.group = G
        self.origin = {}
        for arr, _, _ in arrows:
            self.origin.setdefault(arr.base, []).append(arr)

    def lookup(self, a, rho, sigma):
        arr = QGArrow(a, rho, sigma)
        return arr if arr in self.arrows else None


def build_QG(act, choices=None):
    if choices is None:
        choices = make_choices(act)
    return QGQuiver(act, choices)


class Transport:
    """phi, its inverse, and the closed formulas for phi^-1 iota.

    Holds the skew group algebra oracle for ``act`` together with Q_G.
    """

    def __init__(self, act, choices=None, max_len=16, qg=None):
        self.act = act
        self.group = act.group
        self.choices = choices if choices is not None else make_choices(act)
        self.qg = qg if qg is not None else QGQuiver(act, self.choices)
        self.algebra = SkewAlgebra(act, self.choices, max_len=max_len)
        self._phi_arrow = {}
        self._phi_path = {}
        self._corner = {}
        self._base = {}
        self._dist = set(self.choices.distinguished)

    # --- phi ----------------------------------------------------------
    def phi_vertex(self, v):
        return self.algebra.vertex_idempotent(v.rep, v.rho)

    def phi_arrow(self, arr):
        hit = self._phi_arrow.get(arr)
        if hit is None:
            A = self.algebra
            hit = A.sandwich(arr.sigma, A.iota(A.quiver.arrow(arr.base)), arr.rho)
            self._phi_arrow[arr] = hit
        return hit

    def phi_path(self, p):
        hit = self._phi_path.get(p)
        if hit is not None:
            return hit
        if p.is_stationary:
            out = self.phi_vertex(p.target)
        elif len(p.arrows) == 1:
            out = self.phi_arrow(p.arrows[0])
        else:
            a = p.arrows[0]
            rest = Path(self.qg.source(a), p.arrows[1:], p.source)
            out = self.phi_arrow(a) * self.phi_path(rest)
        self._phi_path[p] = out
        return out

    def phi(self, x):
        if isinstance(x, Path):
            return self.phi_path(x)
        out = self.algebra.zero()
        for p, c in x.terms.items():
            out = out + self.phi_path(p).scale(c)
        return out

    def _base_of(self, b):
        hit = self._base.get(b)
        if hit is None:
            hit = self._base[b] = self.choose_g(b)[2]
        return hit

    def _qg_paths(self, seq):
        """Paths of Q_G lying over the distinguished arrows ``seq``."""
        if not seq:
            return [self.qg.stationary(v) for v in self.qg.vertices]
        by_base = self.qg.origin
        walks = [((arr,), self.qg.source(arr), self.qg.target(arr)) for arr in by_base.get(seq[-1], ())]
        for a in reversed(seq[:-1]):
            walks = [((arr,) + arrs, s, self.qg.target(arr))
                     for arrs, s, t in walks for arr in by_base.get(a, ()) if self.qg.source(arr) == t]
        return [Path(t, arrs, s) for arrs, s, t in walks]

    def _seq_echelon(self, seq):
        hit = self._corner.get(seq)
        if hit is None:
            paths = self._qg_paths(seq)
            e = Echelon(track=True)
            for p in paths:
                if not e.add(self.phi_path(p).terms):
                    raise NotInImage("phi images of paths are dependent")
            hit = self._corner[seq] = (paths, e)
        return hit

    def phi_inv(self, x):
        """Unique preimage in kQ_G of an element of e(kQ)Ge, by row reduction.

        phi of a path of Q_G only involves paths of Q whose arrows lie in the
        orbits of its distinguished arrows, so the elimination is split by
        that sequence of orbits.
        """
        out = {}
        groups = {}
        for (p, g), c in x.terms.items():
            try:
                seq = tuple(self._base_of(b) for b in p.arrows)
            except NotInOrbitOfDistinguished:
                raise NotInImage("element is not in e(kQ)Ge") from None
            groups.setdefault(seq, {})[(p, g)] = c
        for seq, terms in groups.items():
            paths, e = self._seq_echelon(seq)
            coords = e.coordinates(terms)
            if coords is None:
                raise NotInImage("element is not in e(kQ)Ge")
            for p, c in zip(paths, coords):
                if c:
                    out[p] = c
        return PathElement(self.qg, out)

    # --- closed formulas ------------------------------------------------
    def choose_g(self, b):
        """Least g with g(b) a distinguished arrow, preferring scalar 1.

        Returns ``(g, scalar, a)`` with ``g(b) = scalar * a``.
        """
        fallback = None
        for g in self.group.elements:
            c, a = self.act.arrow(g, b)
            if a in self._dist:
                if c == 1:
                    return g, c, a
                if fallback is None:
                    fallback = (g, c, a)
        if fallback is None:
            raise NotInOrbitOfDistinguished(f"no group element sends {b!r} to a distinguished arrow")
        return fallback

    def _resolve_g(self, b, g):
        if g is None:
            return self.choose_g(b)
        g = self.group.element(g)
        c, a = self.act.arrow(g, b)
        if a not in self._dist:
            raise NotInOrbitOfDistinguished(f"{g} sends {b!r} to {a!r}, which is not distinguished")
        return g, c, a

    def transport_arrow(self, b, g=None):
        """phi^-1 iota(b) via the character formula."""
        G, Q, ch = self.group, self.act.quiver, self.choices
        g, lam, a = self._resolve_g(b, g)
        kap = ch.kappa
        x = G.mul(g, G.inv(kap[Q.target(b)]))
        y = G.mul(G.mul(G.inv(g), G.inv(kap[Q.source(a)])), kap[Q.source(b)])
        out = {}
        for arr in self.qg.origin.get(a, ()):
            coeff = lam * arr.sigma(x) * arr.rho(y)
            out[self.qg.arrow(arr)] = coeff
        return PathElement(self.qg, out)

    def _arrow_data(self, arrows, gs):
        """For b_1..b_n (traversal order): (b, g, scalar, a)."""
        seq = list(reversed(arrows))
        if gs is None:
            gs = [None] * len(seq)
        else:
            gs = list(reversed(list(gs)))
        out = []
        for b, g in zip(seq, gs):
            g, lam, a = self._resolve_g(b, g)
            out.append((b, g, lam, a))
        return out

    def transport_path(self, p, gs=None):
        """phi^-1 iota of a nonzero path (first closed formula).

        ``gs`` lists the group elements in the same order as ``p.arrows``.
        """
        G, Q, kap = self.group, self.act.quiver, self.choices.kappa
        if p.is_stationary:
            return self.transport_vertex(p.target)
        data = self._arrow_data(p.arrows, gs)
        n = len(data)
        stab = self.qg.stab
        rep = self.choices.rep_of
        lam_total = one(G.conductor)
        for _, _, lam, _ in data:
            lam_total = lam_total * lam
        # element evaluated by sigma_i for i = 1..n+1
        elems = []
        b1, g1, _, a1 = data[0]
        elems.append(G.mul(G.mul(G.inv(g1), G.inv(kap[Q.source(a1)])), kap[Q.source(b1)]))
        for i in range(1, n):
            _, gi, _, ai = data[i]
            _, gprev, _, _ = data[i - 1]
            elems.append(G.mul(G.mul(G.inv(gi), gprev), G.inv(kap[Q.source(ai)])))
        bn, gn, _, _ = data[-1]
        elems.append(G.mul(gn, G.inv(kap[Q.target(bn)])))
        domains = [stab[rep[Q.source(b)]] for b, _, _, _ in data] + [stab[rep[Q.target(bn)]]]
        out = {}

        def walk(i, chars, coeff):
            if i == n + 1:
                arrs = []
                for k in range(n):
                    arr = self.qg.lookup(data[k][3], chars[k], chars[k + 1])
                    arrs.append(arr)
                path = self.qg.path(tuple(reversed(arrs)))
                out[path] = out.get(path, 0) + coeff
                return
            for s in domains[i].characters:
                if i > 0 and self.qg.lookup(data[i - 1][3], chars[i - 1], s) is None:
                    continue
                walk(i + 1, chars + [s], coeff * s(elems[i]))

        walk(0, [], lam_total)
        return PathElement(self.qg, out)

    def transport_vertex(self, v):
        """phi^-1 iota of a stationary path: sum of the vertices over its representative."""
        r = self.choices.rep_of[v]
        out = {}
        for rho in self.qg.stab[r].characters:
            out[self.qg.stationary(QGVertex(r, rho))] = one(self.group.conductor)
        return PathElement(self.qg, out)

    def transport_cycle(self, c, gs=None):
        """cyc(phi^-1 iota(c)) for a cycle, by the closed formula, as a Potential."""
        G, Q, kap = self.group, self.act.quiver, self.choices.kappa
        if not c.is_cycle or c.is_stationary:
            raise ValueError("transport_cycle needs a nonstationary cycle")
        data = self._arrow_data(c.arrows, gs)
        n = len(data)
        stab = self.qg.stab
        rep = self.choices.rep_of
        lam_total = one(G.conductor)
        for _, _, lam, _ in data:
            lam_total = lam_total * lam
        elems = []
        for i in range(n):
            _, gi, _, ai = data[i]
            gprev = data[i - 1][1]          # g_0 = g_n
            elems.append(G.mul(G.mul(G.inv(gi), gprev), G.inv(kap[Q.source(ai)])))
        domains = [stab[rep[Q.source(b)]] for b, _, _, _ in data]
        out = {}

        def walk(i, chars, coeff):
            if i == n:
                last = self.qg.lookup(data[n - 1][3], chars[n - 1], chars[0])
                if last is None:
                    return
                arrs = [self.qg.lookup(data[k][3], chars[k], chars[k + 1]) for k in range(n - 1)]
                arrs.append(last)
                path = self.qg.path(tuple(reversed(arrs)))
                out[path] = out.get(path, 0) + coeff
                return
            for s in domains[i].characters:
                if i > 0 and self.qg.lookup(data[i - 1][3], chars[i - 1], s) is None:
                    continue
                walk(i + 1, chars + [s], coeff * s(elems[i]))

        walk(0, [], lam_total)
        return canonical_potential(PathElement(self.qg, out))

    # --- oracles --------------------------------------------------------
    def oracle_arrow(self, b):
        return self.phi_inv(self.algebra.iota(self.act.quiver.arrow(b)))

    def oracle_path(self, p):
        return self.phi_inv(self.algebra.iota(p))

    def oracle_cycle(self, c):
        return canonical_potential(cyc(self.oracle_path(c)))

    # --- W_G --------------------------------------------------------------
    def compute_WG(self, W, rotate=0):
        """W_G from the cycle formula applied to a lift of W.

        ``rotate`` picks a different rotation of every lifted cycle.
        """
        ok, witness = check_invariance(self.act, W)
        if not ok:
            raise NotInvariant(*witness)
        Q = self.act.quiver
        out = Potential(self.qg)
        for c, lam in W.sorted_terms():
            if c.is_stationary:
                continue
            k = rotate % len(c.arrows)
            arr = c.arrows[k:] + c.arrows[:k]
            cyc_path = Q.path(arr)
            out = out + self.transport_cycle(cyc_path).scale(lam)
        return out


def compute_WG(W, act, choices=None, rotate=0):
    return Transport(act, choices).compute_WG(W, rotate=rotate)
