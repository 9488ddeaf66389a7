"""Random small instances: monomial actions of small abelian groups with
invariant potentials.

Vertices come in orbits G/H.  Each arrow orbit is induced from one arrow
u -> v scaled by a random character of G_uv, then every arrow in the orbit is
rescaled by a random root of unity, which changes the action by a coboundary.
Potentials are orbit sums of random short cycles.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .action import orbit_sum
from .group import AbelianGroup, subgroup_generated
from .instance import parse_instance
from .quiver import PathElement, canonical_potential
from .scalar import format_scalar

GROUPS = ([2], [3], [2, 2], [3, 3])


def subgroups(G):
    seen = {}
    for g in G.elements:
        for h in G.elements:
            H = subgroup_generated(G, [g, h])
            seen.setdefault(H.element_set, H)
    return sorted(seen.values(), key=lambda H: (len(H), H.elements))


def _coset_reps(G, H):
    reps, covered = [], set()
    for g in G.elements:
        if g not in covered:
            reps.append(g)
            covered.update(G.mul(g, h) for h in H.elements)
    return reps


def _coset_index(G, H, reps, g):
    for n, r in enumerate(reps):
        if G.mul(G.inv(r), g) in H:
            return n
    raise AssertionError("coset not found")


def _root_text(k, N):
    k %= N
    if k == 0:
        return "1"
    return "z" if k == 1 else f"z^{k}"


def random_instance(rng, max_vertices=4, max_arrows=6, factors=None, attempts=50):
    """One instance as a JSON-ready dict, retried until the potential is nonzero."""
    factors = list(factors or rng.choice(GROUPS))
    data = None
    for _ in range(attempts):
        data = _attempt(rng, max_vertices, max_arrows, factors)
        if data["potential"]:
            break
    return data


def _attempt(rng, max_vertices, max_arrows, factors):
    G = AbelianGroup(factors)
    N = G.exponent
    subs = subgroups(G)

    # vertex orbits
    vertices, vorbit = [], []
    budget = rng.randint(1, max_vertices)
    while budget > 0:
        H = rng.choice([H for H in subs if len(G) // len(H) <= budget])
        reps = _coset_reps(G, H)
        k = len(vorbit)
        names = [f"v{k}" if len(reps) == 1 else f"v{k}_{n}" for n in range(len(reps))]
        vorbit.append((H, reps, names))
        vertices.extend(names)
        budget -= len(reps)

    def vertex_image(g, v):
        for H, reps, names in vorbit:
            if v in names:
                r = reps[names.index(v)]
                return names[_coset_index(G, H, reps, G.mul(g, r))]
        raise KeyError(v)

    def stab(v):
        return subgroup_generated(G, [g for g in G.elements if vertex_image(g, v) == v])

    # arrow orbits: arrows[name] = (source, target); action[g][name] = (exp, name')
    arrows = {}
    images = {g: {} for g in G.generators()}
    budget = rng.randint(1, max_arrows)
    k = 0
    for _ in range(20):
        if budget <= 0:
            break
        u = rng.choice([names[0] for _, _, names in vorbit])
        v = rng.choice(vertices)
        K = stab(u).intersect(stab(v))
        reps = _coset_reps(G, K)
        if len(reps) > budget:
            continue
        chi = rng.choice(K.characters)
        cob = [rng.randrange(N) for _ in reps]
        names = [f"a{k}" if len(reps) == 1 else f"a{k}_{n}" for n in range(len(reps))]
        for n, r in enumerate(reps):
            arrows[names[n]] = (vertex_image(r, u), vertex_image(r, v))
        for g in images:
            for n, r in enumerate(reps):
                gr = G.mul(g, r)
                m = _coset_index(G, K, reps, gr)
                kk = G.mul(G.inv(reps[m]), gr)
                e = chi.exponent_at(kk) + cob[n] - cob[m]
                images[g][names[n]] = (e % N, names[m])
        budget -= len(reps)
        k += 1

    action = []
    for g in G.generators():
        action.append({
            "vertices": {v: vertex_image(g, v) for v in vertices},
            "arrows": {a: [[_root_text(e, N), b]] for a, (e, b) in images[g].items()},
        })
    data = {
        "group": factors,
        "quiver": {"vertices": vertices,
                   "arrows": [{"id": a, "source": s, "target": t} for a, (s, t) in arrows.items()]},
        "action": action,
        "potential": [],
    }

    # invariant potential from orbit sums of random cycles
    inst = parse_instance(data)
    act, _, _ = inst.monomial()
    Q = act.quiver
    cycles = Q.cycles_up_to(4)
    elem = PathElement(Q)
    wanted = rng.randint(1, 3)
    rng.shuffle(cycles)
    for c in cycles:
        coeff = Fraction(rng.choice([1, 1, -1, 2, 3, -1]), rng.choice([1, 1, 2, 3]))
        term = orbit_sum(act, PathElement.of(Q, c, coeff))
        if term:
            # orbit sums vanish when the stabilizer of the cycle scales it
            elem = elem + term
            wanted -= 1
            if not wanted:
                break
    W = canonical_potential(elem)
    data["potential"] = [[format_scalar(x), list(c.arrows)] for c, x in W.sorted_terms()]

    # random but valid choice data
    orbits = {}
    for v in vertices:
        orbits.setdefault(tuple(act.orbit(v)), None)
    I_tilde = [rng.choice(orb) for orb in orbits]
    rep = {v: r for r in I_tilde for v in act.orbit(r)}
    kappa = {}
    for v in vertices:
        if v not in I_tilde:
            options = [g for g in G.elements if act.vertex(g, v) == rep[v]]
            kappa[v] = list(rng.choice(options))
    data["choices"] = {"I_tilde": I_tilde, "kappa": kappa}
    return data


def corpus(n=50, seed=0):
    rng = random.Random(seed)
    out = []
    for k in range(n):
        factors = GROUPS[k % len(GROUPS)]
        out.append(random_instance(rng, factors=factors))
    return out
