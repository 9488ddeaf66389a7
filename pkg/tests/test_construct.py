import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from qpskew.action import NotInvariant, make_choices
from qpskew.construct import NotInImage, QGArrow, Transport, build_QG, compute_WG
from qpskew.corpus import random_instance
from qpskew.instance import parse_instance
from qpskew.quiver import PathElement, Potential, canonical_potential, cyc, shuffle
from qpskew.scalar import one


def by_label(qg):
    """Arrow multiset as (origin, rho, sigma) labels."""
    return sorted((a.base, str(a.rho), str(a.sigma)) for a in qg.arrows)


def pull_back(x, Q):
    """A potential over Q_G for the trivial group, read back in Q."""
    out = PathElement(Q)
    for c, coeff in x.terms.items():
        out = out + PathElement.of(Q, Q.path([a.base for a in c.arrows]), coeff)
    return canonical_potential(out)


def loops_over(qg, base):
    return [a for a in qg.arrows if a.base == base]


def test_paper_quiver(paper):
    qg = paper.T.qg
    assert len(qg.vertices) == 6 and len(qg.arrows) == 15
    mixed = [a for a, (s, t) in qg.arrows.items() if s.rep == "i1" and t.rep == "j1"]
    xs = loops_over(qg, "x1")
    ys = loops_over(qg, "y3")
    assert len(mixed) == 9 and len(xs) == 3 and len(ys) == 3
    omega = paper.act.stabilizer("i1").characters[1]
    for a in xs:
        assert a.rho == a.sigma * omega
    for a in ys:
        assert a.rho == a.sigma


def test_trivial_quiver(trivial):
    qg = build_QG(trivial.act)
    assert len(qg.vertices) == len(trivial.Q.vertices)
    relabel = {a.base: (s.rep, t.rep) for a, (s, t) in qg.arrows.items()}
    assert relabel == trivial.Q.arrows


def test_kronecker_quiver(kronecker):
    qg = kronecker.T.qg
    assert len(qg.vertices) == 4
    assert by_label(qg) == [("a.0", "chi(1)", "chi(1)"), ("a.0", "tr", "tr"),
                            ("a.1", "chi(1)", "tr"), ("a.1", "tr", "chi(1)")]
    # cross-check the counts against the oracle corner dimensions
    A = kronecker.T.algebra
    for v in qg.vertices:
        for w in qg.vertices:
            assert len(qg.arrows_between(v, w)) == A.corner_dimension(v.rep, v.rho, w.rep, w.rho)


def test_phi_examples(paper):
    T, A = paper.T, paper.T.algebra
    qg = T.qg
    for v in qg.vertices:
        assert T.phi(qg.stationary(v)) == A.vertex_idempotent(v.rep, v.rho)
        assert T.phi_inv(A.vertex_idempotent(v.rep, v.rho)) == PathElement.of(qg, qg.stationary(v))
    tr = paper.act.stabilizer("j1").characters[0]
    y = QGArrow("y3", tr, tr)
    assert T.phi(qg.arrow(y)) == A.sandwich(tr, A.iota(paper.Q.arrow("y3")), tr)
    for a, b in itertools.product(qg.arrows, repeat=2):
        if qg.source(a) == qg.target(b):
            assert T.phi(qg.path([a, b])) == T.phi(qg.arrow(a)) * T.phi(qg.arrow(b))


def test_phi_inv_examples(paper):
    T, qg = paper.T, paper.T.qg
    got = T.phi_inv(T.algebra.iota(paper.Q.arrow("y1")))
    assert set(got.terms) == {qg.arrow(a) for a in loops_over(qg, "y3")}
    assert set(got.terms.values()) == {one(3)}
    with pytest.raises(NotInImage):
        T.phi_inv(T.algebra.element(paper.Q.arrow("y1")))


def test_phi_inv_round_trip(paper):
    T, qg = paper.T, paper.T.qg
    rng = random.Random(7)
    for n in range(1, 5):
        paths = qg.paths_of_length(n)
        for p in rng.sample(paths, min(12, len(paths))):
            assert T.phi_inv(T.phi(p)) == PathElement.of(qg, p)


def test_transport_arrow_examples(paper):
    T = paper.T
    # distinguished arrow with g = 1: every admissible lift with coefficient 1
    for a in paper.choices.distinguished:
        got = T.transport_arrow(a, (0, 0))
        assert set(got.terms.values()) == {one(3)}
        assert len(got.terms) == len(T.qg.origin[a])
    got = T.transport_arrow("y1", (0, 2))
    assert got == T.oracle_arrow("y1")
    assert set(got.terms.values()) == {one(3)}
    for g in paper.G.elements:
        c, a = paper.act.arrow(g, "x2")
        if a == "x1":
            assert T.transport_arrow("x2", g) == T.oracle_arrow("x2")


def test_transport_cycle_examples(paper, trivial):
    T, Q = paper.T, paper.Q
    ys = T.transport_cycle(Q.path(["y3", "y2", "y1"]))
    assert len(ys.terms) == 3 and set(ys.terms.values()) == {one(3)}
    xs = T.transport_cycle(Q.path(["x1"] * 3))
    assert xs == T.oracle_cycle(Q.path(["x1"] * 3))
    # one cycle through the three x-lifts; its coefficient counts the three
    # rotations of x1^3, each contributing once
    (cycle, coeff), = xs.terms.items()
    assert sorted(str(a.rho) for a in cycle.arrows) == ["chi(1)", "chi(2)", "tr"]
    assert coeff == 3
    for c in trivial.Q.cycles_up_to(4):
        got = trivial.T.transport_cycle(c)
        assert pull_back(got, trivial.Q) == canonical_potential(PathElement.of(trivial.Q, c))


def test_compute_WG_examples(paper, trivial):
    WG = paper.T.compute_WG(paper.W)
    coeffs = sorted(int(x.coeffs[0]) for x in WG.terms.values())
    assert coeffs == [1, 1, 1, 9]
    assert not paper.T.compute_WG(Potential(paper.Q))
    WT = trivial.T.compute_WG(trivial.W)
    assert pull_back(WT, trivial.Q) == trivial.W
    x13 = canonical_potential(PathElement.of(paper.Q, paper.Q.path(["x1"] * 3)))
    with pytest.raises(NotInvariant):
        compute_WG(x13, paper.act, paper.choices)


def test_WG_independent_of_rotation(paper):
    assert paper.T.compute_WG(paper.W, rotate=1) == paper.T.compute_WG(paper.W)


# --- corpus properties ---------------------------------------------------

seeds = st.integers(0, 10_000)


def transport_for(seed):
    data = random_instance(random.Random(seed), max_vertices=3, max_arrows=4)
    inst = parse_instance(data)
    act, _, W = inst.monomial()
    return Transport(act, make_choices(act, inst.choices_seed), max_len=8), W


@given(seeds)
def test_phi_is_multiplicative(seed):
    T, _ = transport_for(seed)
    qg = T.qg
    for p in qg.paths_of_length(1) + qg.paths_of_length(2):
        for q in qg.paths_of_length(1):
            if p.source == q.target and len(p) + len(q) <= 3:
                assert T.phi(qg.path(p.arrows + q.arrows)) == T.phi(p) * T.phi(q)


@given(seeds)
def test_arrow_images_are_corner_bases(seed):
    T, _ = transport_for(seed)
    A, qg = T.algebra, T.qg
    for v in qg.vertices:
        for w in qg.vertices:
            images = [T.phi(qg.arrow(a)) for a in qg.arrows_between(v, w)]
            assert images == A.corner_basis(v.rep, v.rho, w.rep, w.rho)


@given(seeds)
def test_transport_formulas_match_oracle(seed):
    T, _ = transport_for(seed)
    Q = T.act.quiver
    for b in Q.arrows:
        for g in T.group.elements:
            if T.act.arrow(g, b)[1] in T._dist:
                assert T.transport_arrow(b, g) == T.oracle_arrow(b)
    for p in Q.paths_of_length(2) + Q.paths_of_length(3):
        assert T.transport_path(p) == T.oracle_path(p)
    for c in Q.cycles_up_to(4):
        assert T.transport_cycle(c) == T.oracle_cycle(c)


@given(seeds)
def test_transport_cycle_ignores_choice_of_g(seed):
    T, _ = transport_for(seed)
    for c in T.act.quiver.cycles_up_to(3):
        options = [[g for g in T.group.elements if T.act.arrow(g, b)[1] in T._dist]
                   for b in c.arrows]
        expected = T.transport_cycle(c)
        for gs in itertools.islice(itertools.product(*options), 20):
            assert T.transport_cycle(c, gs) == expected


@settings(max_examples=25)
@given(seeds)
def test_shuffle_exchange(seed):
    T, _ = transport_for(seed)
    Q = T.act.quiver
    for c in Q.cycles_up_to(4):
        x = PathElement.of(Q, c)
        lhs = canonical_potential(shuffle(canonical_potential(cyc(T.phi_inv(T.algebra.iota(c))))))
        rhs = canonical_potential(cyc(T.phi_inv(T.algebra.iota(shuffle(x)))))
        assert lhs == rhs
