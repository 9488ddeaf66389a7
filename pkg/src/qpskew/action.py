"""Group actions on path algebras.

A :class:`RawAction` lets each group generator permute the vertices and act
linearly on the arrow span.  :func:`normalize` rewrites it in a basis where
every group element sends arrows to scalar multiples of arrows and every
vertex-pair stabilizer acts diagonally; :class:`MonomialAction` is that
normal form.  :func:`make_choices` fixes orbit representatives, the elements
``kappa_i`` and the distinguished arrows.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .group import (
    character_from_values,
    characters_of,
    subgroup_generated,
)
from .linalg import solve_in_basis, column_basis
from .quiver import Path, PathElement, Quiver, canonical_potential, format_path
from .scalar import Scalar, one


class InvalidAction(ValueError):
    pass


class InvalidChoice(ValueError):
    pass


class NotMonomialOnStabilizer(ValueError):
    pass


class NotInvariant(ValueError):
    def __init__(self, generator, cycle):
        super().__init__(f"potential is not fixed by generator {generator} (cycle {cycle})")
        self.generator = generator
        self.cycle = cycle


# --- raw (linear) actions -------------------------------------------------

def _compose_linear(f, g):
    """f after g, both dicts arrow -> {arrow: Scalar}."""
    out = {}
    for a, img in g.items():
        acc = {}
        for b, c in img.items():
            for d, e in f[b].items():
                acc[d] = acc.get(d, 0) + c * e
        out[a] = {d: x for d, x in acc.items() if x}
    return out


def _linear_equal(f, g):
    for a in f:
        keys = set(f[a]) | set(g[a])
        if any(f[a].get(k, 0) != g[a].get(k, 0) for k in keys):
            return False
    return True


class RawAction:
    """Per-generator vertex permutations and linear arrow images."""

    def __init__(self, group, quiver, generator_data):
        if len(generator_data) != len(group.factors):
            raise InvalidAction("need one entry per cyclic factor of the group")
        self.group = group
        self.quiver = quiver
        self.vperm = []
        self.lin = []
        L = group.conductor
        for k, (vmap, amap) in enumerate(generator_data):
            vp = {v: vmap.get(v, v) for v in quiver.vertices}
            if sorted(vp.values(), key=quiver.vertex_index.get) != quiver.vertices:
                raise InvalidAction(f"generator {k}: vertex map is not a permutation")
            lin = {}
            for a in quiver.arrows:
                img = amap.get(a, {a: one(L)})
                img = {b: Scalar.coerce(c) for b, c in img.items() if Scalar.coerce(c)}
                s, t = quiver.arrows[a]
                for b in img:
                    if b not in quiver.arrows:
                        raise InvalidAction(f"generator {k}: unknown arrow {b!r}")
                    if quiver.arrows[b] != (vp[s], vp[t]):
                        raise InvalidAction(
                            f"generator {k}: image of {a!r} leaves the span of arrows "
                            f"{vp[s]}->{vp[t]}")
                lin[a] = img
            self.vperm.append(vp)
            self.lin.append(lin)
        self._elements = self._build_elements()

    def _build_elements(self):
        G, Q = self.group, self.quiver
        ident_v = {v: v for v in Q.vertices}
        ident_l = {a: {a: one(G.conductor)} for a in Q.arrows}
        # generator orders and commutation
        for k, n in enumerate(G.factors):
            vp, lin = ident_v, ident_l
            for _ in range(n):
                vp = {v: self.vperm[k][vp[v]] for v in vp}
                lin = _compose_linear(self.lin[k], lin)
            if vp != ident_v or not _linear_equal(lin, ident_l):
                raise InvalidAction(f"generator {k} does not have order dividing {n}")
        for k in range(len(G.factors)):
            for m in range(k):
                ab = _compose_linear(self.lin[k], self.lin[m])
                ba = _compose_linear(self.lin[m], self.lin[k])
                vab = {v: self.vperm[k][self.vperm[m][v]] for v in Q.vertices}
                vba = {v: self.vperm[m][self.vperm[k][v]] for v in Q.vertices}
                if vab != vba or not _linear_equal(ab, ba):
                    raise InvalidAction(f"generators {m} and {k} do not commute")
        out = {}
        for g in G.elements:
            vp, lin = ident_v, ident_l
            for k, r in enumerate(g):
                for _ in range(r):
                    vp = {v: self.vperm[k][vp[v]] for v in vp}
                    lin = _compose_linear(self.lin[k], lin)
            out[g] = (vp, lin)
        return out

    def vertex_map(self, g):
        return self._elements[g][0]

    def linear_map(self, g):
        return self._elements[g][1]

    def is_monomial(self):
        return all(len(img) == 1 for _, lin in self._elements.values() for img in lin.values())


# --- monomial actions -----------------------------------------------------

class MonomialAction:
    """Every group element maps each arrow to (scalar, arrow)."""

    def __init__(self, group, quiver, vmaps, amaps, check=True):
        self.group = group
        self.quiver = quiver
        self.vmaps = vmaps
        self.amaps = amaps
        self._path_cache = {}
        self.unit = one(group.conductor)
        if check:
            self._validate()

    @classmethod
    def from_raw(cls, raw):
        if not raw.is_monomial():
            raise InvalidAction("action is not monomial; normalize it first")
        vmaps, amaps = {}, {}
        for g in raw.group.elements:
            vp, lin = raw._elements[g]
            vmaps[g] = vp
            amaps[g] = {a: next((c, b) for b, c in img.items()) for a, img in lin.items()}
        return cls(raw.group, raw.quiver, vmaps, amaps)

    def _validate(self):
        G, Q = self.group, self.quiver
        for g in G.elements:
            for a, (c, b) in self.amaps[g].items():
                if not c:
                    raise InvalidAction("zero scalar in monomial action")
                s, t = Q.arrows[a]
                if Q.arrows[b] != (self.vmaps[g][s], self.vmaps[g][t]):
                    raise InvalidAction(f"image of {a!r} under {g} has wrong endpoints")
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                for v in Q.vertices:
                    if self.vmaps[g][self.vmaps[h][v]] != self.vmaps[gh][v]:
                        raise InvalidAction("vertex action is not a homomorphism")
                for a in Q.arrows:
                    c1, b1 = self.amaps[h][a]
                    c2, b2 = self.amaps[g][b1]
                    c3, b3 = self.amaps[gh][a]
                    if b2 != b3 or c1 * c2 != c3:
                        raise InvalidAction(f"arrow action is not a homomorphism at {a!r}")

    def vertex(self, g, v):
        return self.vmaps[g][v]

    def arrow(self, g, a):
        return self.amaps[g][a]

    def path(self, g, p):
        """g(p) as (scalar, path)."""
        key = (g, p)
        hit = self._path_cache.get(key)
        if hit is not None:
            return hit
        vm = self.vmaps[g]
        if not p.arrows:
            res = (self.unit, Path(vm[p.target], (), vm[p.source]))
        else:
            am = self.amaps[g]
            c = one(self.group.conductor)
            arr = []
            for a in p.arrows:
                x, b = am[a]
                c = c * x
                arr.append(b)
            if c == 1:
                c = self.unit
            res = (c, Path(vm[p.target], tuple(arr), vm[p.source]))
        self._path_cache[key] = res
        return res

    def element(self, g, x):
        out = {}
        for p, c in x.terms.items():
            s, q = self.path(g, p)
            out[q] = out[q] + c * s if q in out else c * s
        return PathElement(x.quiver, out)

    def potential(self, g, W):
        return canonical_potential(self.element(g, W.lift()))

    def orbit(self, v):
        return sorted({self.vmaps[g][v] for g in self.group.elements},
                      key=self.quiver.vertex_index.get)

    def stabilizer(self, *vertices):
        G = self.group
        elems = [g for g in G.elements if all(self.vmaps[g][v] == v for v in vertices)]
        return subgroup_generated(G, elems)

    def arrow_stabilizer(self, a):
        s, t = self.quiver.arrows[a]
        return self.stabilizer(s, t)


def orbit(act, v):
    return act.orbit(v)


def stabilizer(act, v):
    S = act.stabilizer(v)
    for w in act.orbit(v):
        assert act.stabilizer(w) == S, "stabilizers differ along an orbit"
    return S


def chi_of(act, a):
    """The character of G_{s(a)t(a)} by which the stabilizer scales ``a``."""
    S = act.arrow_stabilizer(a)
    values = {}
    for g in S.elements:
        c, b = act.arrow(g, a)
        if b != a:
            raise NotMonomialOnStabilizer(f"{g} moves {a!r} to {b!r}")
        values[g] = c
    return character_from_values(S, values.__getitem__)


# --- normalization (generalized permutation basis) -----------------------

def _new_arrow_name(base, k, taken):
    name = f"{base}.{k}"
    while name in taken:
        name += "'"
    return name


def normalize(raw):
    """Rewrite ``raw`` in a basis where it acts by generalized permutations.

    Returns ``(MonomialAction, base_change)`` where ``base_change`` maps each
    arrow of the new quiver to its coordinates in the old arrows.  Orbits of
    vertex pairs on which the action is already monomial with a diagonal
    stabilizer keep their arrows unchanged.
    """
    G, Q = raw.group, raw.quiver
    L = G.conductor
    vstab = {}

    def pair_stab(i, j):
        key = (i, j)
        if key not in vstab:
            vstab[key] = [g for g in G.elements
                          if raw.vertex_map(g)[i] == i and raw.vertex_map(g)[j] == j]
        return vstab[key]

    seen = set()
    new_arrows = []          # (name, source, target, coords)
    taken = set(Q.arrows)
    for (s, t) in dict.fromkeys(Q.arrows.values()):
        if (s, t) in seen:
            continue
        orbit_pairs = {}
        for g in G.elements:
            vm = raw.vertex_map(g)
            orbit_pairs.setdefault((vm[s], vm[t]), g)
        seen.update(orbit_pairs)
        S = pair_stab(s, t)
        span = Q.arrows_between(s, t)
        good = all(
            len(raw.linear_map(g)[a]) == 1 for g in G.elements for a in Q.arrows
            if Q.arrows[a] in orbit_pairs
        ) and all(next(iter(raw.linear_map(g)[a])) == a for g in S for a in span)
        if good:
            for (i, j) in orbit_pairs:
                for a in Q.arrows_between(i, j):
                    new_arrows.append((a, i, j, {a: one(L)}))
            continue
        # split M_{st} into eigenlines of S by projecting with isotypic idempotents
        Ssub = subgroup_generated(G, S)
        eig = []
        for chi in characters_of(Ssub):
            vecs = []
            for a in span:
                v = {}
                for h in Ssub.elements:
                    w = chi(h).inverse() * (Scalar.coerce(1) / len(Ssub))
                    for b, c in raw.linear_map(h)[a].items():
                        v[b] = v.get(b, 0) + c * w
                vecs.append({b: c for b, c in v.items() if c})
            for v in column_basis(vecs, span):
                eig.append(v)
        if len(eig) != len(span):
            raise InvalidAction("eigen-decomposition of the stabilizer failed")
        # transport by coset representatives of G/S
        base = span[0]
        counter = 0
        for (i, j), g in orbit_pairs.items():
            lin = raw.linear_map(g)
            for v in eig:
                img = {}
                for b, c in v.items():
                    for d, e in lin[b].items():
                        img[d] = img.get(d, 0) + c * e
                img = {d: x for d, x in img.items() if x}
                name = _new_arrow_name(base, counter, taken)
                taken.add(name)
                counter += 1
                new_arrows.append((name, i, j, img))
    order = {a: k for k, a in enumerate(Q.arrows)}
    new_arrows.sort(key=lambda r: (min(order.get(b, 0) for b in r[3]), r[0] not in order, r[0]))
    newQ = Quiver(Q.vertices, [(n, s, t) for n, s, t, _ in new_arrows])
    base_change = {n: coords for n, _, _, coords in new_arrows}
    # express g(new arrow) in the new basis
    by_pair = {}
    for n, s, t, _ in new_arrows:
        by_pair.setdefault((s, t), []).append(n)
    vmaps, amaps = {}, {}
    for g in G.elements:
        vm = raw.vertex_map(g)
        lin = raw.linear_map(g)
        vmaps[g] = dict(vm)
        amaps[g] = {}
        for n, s, t, coords in new_arrows:
            img = {}
            for b, c in coords.items():
                for d, e in lin[b].items():
                    img[d] = img.get(d, 0) + c * e
            target_pair = (vm[s], vm[t])
            names = by_pair[target_pair]
            sol = solve_in_basis([base_change[m] for m in names], img)
            if sol is None:
                raise InvalidAction("new basis does not span the image")
            nz = [(m, x) for m, x in zip(names, sol) if x]
            if len(nz) != 1:
                raise InvalidAction("normalized action is not monomial")
            amaps[g][n] = (nz[0][1], nz[0][0])
    act = MonomialAction(G, newQ, vmaps, amaps)
    return act, base_change


def rewrite_potential(W_items, old_quiver, new_quiver, base_change):
    """Express a potential given on old arrows in the normalized arrows.

    ``W_items`` is a list of ``(coefficient, arrows)``.  Old arrows are
    written in the new basis by inverting ``base_change`` span by span.
    """
    inverse = {}
    by_pair = {}
    for n, (s, t) in new_quiver.arrows.items():
        by_pair.setdefault((s, t), []).append(n)
    for a, (s, t) in old_quiver.arrows.items():
        names = by_pair[(s, t)]
        sol = solve_in_basis([base_change[m] for m in names], {a: one()})
        inverse[a] = {m: x for m, x in zip(names, sol) if x}
    out = PathElement(new_quiver)
    for coeff, arrows in W_items:
        partials = [((), Scalar.coerce(coeff))]
        for a in arrows:
            partials = [(arr + (m,), c * x) for arr, c in partials for m, x in inverse[a].items()]
        for arr, c in partials:
            out = out + PathElement.of(new_quiver, new_quiver.path(arr), c)
    return canonical_potential(out)


# --- choices --------------------------------------------------------------

@dataclass
class ChoiceData:
    I_tilde: list
    kappa: dict
    R: dict
    D: dict
    chi: dict
    rep_of: dict = field(default_factory=dict)

    @property
    def distinguished(self):
        return [a for arrows in self.D.values() for a in arrows]


def make_choices(act, seed=None):
    """Default (lexicographic) choices, with optional user overrides in ``seed``."""
    seed = seed or {}
    G, Q = act.group, act.quiver
    vidx = Q.vertex_index
    orbits = {}
    for v in Q.vertices:
        orbits.setdefault(tuple(act.orbit(v)), None)
    if "I_tilde" in seed:
        I_tilde = sorted(seed["I_tilde"], key=vidx.get)
        for v in I_tilde:
            if v not in vidx:
                raise InvalidChoice(f"unknown vertex {v!r} in I_tilde")
        for orb in orbits:
            hits = [v for v in I_tilde if v in orb]
            if len(hits) != 1:
                raise InvalidChoice(f"I_tilde must meet the orbit {list(orb)} exactly once")
    else:
        I_tilde = sorted((orb[0] for orb in orbits), key=vidx.get)
    rep_of = {}
    for orb in orbits:
        r = next(v for v in I_tilde if v in orb)
        for v in orb:
            rep_of[v] = r

    kappa = {}
    user_kappa = {v: G.element(g) for v, g in seed.get("kappa", {}).items()}
    for v in Q.vertices:
        if v in I_tilde:
            if v in user_kappa and user_kappa[v] != G.identity:
                raise InvalidChoice(f"kappa of representative {v!r} must be the identity")
            kappa[v] = G.identity
        elif v in user_kappa:
            g = user_kappa[v]
            if act.vertex(g, v) != rep_of[v]:
                raise InvalidChoice(f"kappa[{v!r}] = {g} does not send {v!r} into I_tilde")
            kappa[v] = g
        else:
            kappa[v] = next(g for g in G.elements if act.vertex(g, v) == rep_of[v])

    R = {}
    user_R = seed.get("R", {})
    for i0 in I_tilde:
        orb_i = act.orbit(i0)
        for j0 in I_tilde:
            Sj = act.stabilizer(j0)
            sub_orbits = []
            for v in orb_i:
                o = frozenset(act.vertex(g, v) for g in Sj.elements)
                if o not in sub_orbits:
                    sub_orbits.append(o)
            if (i0, j0) in user_R:
                reps = list(user_R[(i0, j0)])
                for o in sub_orbits:
                    if sum(1 for r in reps if r in o) != 1:
                        raise InvalidChoice(
                            f"R[{i0!r},{j0!r}] must meet the orbit {sorted(o, key=vidx.get)} once")
                if any(r not in orb_i for r in reps):
                    raise InvalidChoice(f"R[{i0!r},{j0!r}] leaves the orbit of {i0!r}")
            else:
                reps = [min(o, key=vidx.get) for o in sub_orbits]
            R[(i0, j0)] = sorted(reps, key=vidx.get)

    D = {}
    chi = {}
    for (i0, j0), reps in R.items():
        D[(i0, j0)] = [a for a, (s, t) in Q.arrows.items() if t == j0 and s in reps]
        for a in D[(i0, j0)]:
            chi[a] = chi_of(act, a)
    return ChoiceData(I_tilde, kappa, R, D, chi, rep_of)


def check_invariance(act, W):
    """(True, None) if every generator fixes W, else (False, (generator, cycle))."""
    for g in act.group.generators():
        gW = act.potential(g, W)
        if gW != W:
            diff = gW - W
            c, _ = diff.sorted_terms()[0]
            return False, (g, format_path(W.quiver, c))
    return True, None


def orbit_sum(act, x):
    """sum_g g(x) for a path element x."""
    out = PathElement(x.quiver)
    for g in act.group.elements:
        out = out + act.element(g, x)
    return out
