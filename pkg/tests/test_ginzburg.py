import random

import pytest
from hypothesis import given, settings, strategies as st

from qpskew.action import make_choices
from qpskew.construct import QGVertex, Transport
from qpskew.corpus import random_instance
from qpskew.ginzburg import (
    Dual, GinzburgAlgebra, Loop, Phi, VerificationFailed, build_Phi, extend_action, perturb,
    skew_degree, skew_differential, verify_dg_iso,
)
from qpskew.instance import parse_instance
from qpskew.quiver import PathElement, Potential
from qpskew.scalar import one, root_of_unity


def gen(gamma, a):
    return gamma.generator(a)


def test_differential_examples(paper):
    gamma = GinzburgAlgebra(paper.Q, paper.W)
    qb = gamma.quiver
    assert not gamma.d(gen(gamma, "x1"))
    assert gamma.d(gen(gamma, Dual("y1"))) == PathElement.of(qb, qb.path(["y3", "y2"]))
    dt = gamma.d(gen(gamma, Loop("i1")))
    expected = {
        ("x1", Dual("x1")): 1, (Dual("x1"), "x1"): -1,
        (Dual("c11"), "c11"): -1, (Dual("c12"), "c12"): -1, (Dual("c13"), "c13"): -1,
    }
    assert {p.arrows: x for p, x in dt.terms.items()} == {k: one(3) * v for k, v in expected.items()}


def test_leibniz_sign(paper):
    gamma = GinzburgAlgebra(paper.Q, paper.W)
    qb = gamma.quiver
    # d(x1* t) = d(x1*) t - x1* d(t), the second term carries (-1)^|x1*|
    p = qb.path([Dual("x1"), Loop("i1")])
    dx = gamma.d(gen(gamma, Dual("x1")))
    dt = gamma.d(gen(gamma, Loop("i1")))
    t = gen(gamma, Loop("i1"))
    x = gen(gamma, Dual("x1"))
    assert gamma.d(PathElement.of(qb, p)) == dx * t - x * dt


def test_extend_action_examples(paper, trivial):
    h, g = (0, 1), (1, 0)
    ext = extend_action(paper.act)
    z = root_of_unity(3, 1)
    assert ext.arrow(h, Dual("x1")) == (z.inverse(), Dual("x1"))
    same = extend_action(paper.act, rule="same")
    assert same.arrow(h, Dual("x1")) == (z, Dual("x1"))
    assert ext.arrow(g, Loop("i1")) == (one(3), Loop("i2"))
    text = extend_action(trivial.act)
    for a in text.quiver.arrows:
        assert text.arrow(trivial.G.identity, a) == (one(), a)


def commutes(ext, gamma):
    """Generators on which g(d x) != d(g x), for the generators of G."""
    bad = []
    for g in ext.group.generators():
        for a in gamma.quiver.arrows:
            x = gen(gamma, a)
            if ext.element(g, gamma.d(x)) != gamma.d(ext.element(g, x)):
                bad.append((g, a))
    return bad


def test_contragredient_rule_commutes_with_d(paper):
    gamma = GinzburgAlgebra(paper.Q, paper.W)
    assert commutes(extend_action(paper.act), gamma) == []


def test_same_scalar_rule_breaks_d(paper):
    # with g(a*) = lam b* the differential is not equivariant, so the
    # extended action would not be a dg action
    gamma = GinzburgAlgebra(paper.Q, paper.W)
    assert commutes(extend_action(paper.act, rule="same"), gamma)


def test_skew_differential_examples(paper):
    phi = Phi(paper.T, paper.W, paper.T.compute_WG(paper.W))
    A, gamma = phi.algebra, phi.gamma
    qb = A.quiver
    h = (0, 1)
    assert not skew_differential(gamma, A.element(qb.arrow("x1"), h))
    d = skew_differential(gamma, A.element(qb.arrow(Dual("y1")), h))
    assert d == A.element(gamma.d(gen(gamma, Dual("y1"))), h)
    x = A.element(qb.arrow(Dual("y3")))
    y = A.element(qb.arrow(Dual("y2")), h)
    lhs = skew_differential(gamma, x * y)
    rhs = skew_differential(gamma, x) * y - x * skew_differential(gamma, y)
    assert lhs == rhs


def test_phi_examples(paper):
    WG = paper.T.compute_WG(paper.W)
    phi = build_Phi(paper.act, paper.choices, paper.W, WG, transport=paper.T)
    A, qg = phi.algebra, phi.qg
    for v in qg.vertices:
        assert phi.images[v] == A.vertex_idempotent(v.rep, v.rho)
    y = next(a for a in qg.arrows if a.base == "y3" and a.rho.is_trivial())
    tr = y.rho
    star = A.quiver.arrow(Dual("y3"))
    assert phi.images[Dual(y)] == A.sandwich(tr, A.iota(star), tr).scale(3)
    v = next(v for v in qg.vertices if v.rep == "i1" and v.rho.is_trivial())
    loop = A.quiver.arrow(Loop("i1"))
    # i1 is a representative, so iota(t) = t (x) 1
    assert phi.images[Loop(v)] == A.sandwich(v.rho, A.element(loop), v.rho).scale(3)
    for x, img in phi.images.items():
        deg = 0 if isinstance(x, QGVertex) else phi.gamma_G.quiver.degree(x)
        assert skew_degree(img) == deg


def test_verify_paper(paper):
    WG = paper.T.compute_WG(paper.W)
    rep = verify_dg_iso(Phi(paper.T, paper.W, WG))
    assert rep.passed, rep.failures
    assert set(rep.checks) == {"a", "b", "c", "d"}


def test_verify_trivial(trivial):
    WG = trivial.T.compute_WG(trivial.W)
    assert verify_dg_iso(Phi(trivial.T, trivial.W, WG)).passed


def test_negative_control_fails_at_a(paper):
    WG = paper.T.compute_WG(paper.W)
    rep = verify_dg_iso(Phi(paper.T, paper.W, perturb(WG)))
    assert not rep.passed and rep.failures[0][0] == "a"
    with pytest.raises(VerificationFailed) as info:
        verify_dg_iso(Phi(paper.T, paper.W, perturb(WG)), strict=True)
    assert info.value.check == "a"


def test_unit_x_coefficient_fails(paper):
    # W_G with coefficient 1 on the x-cycle instead of the computed 9
    WG = paper.T.compute_WG(paper.W)
    terms = {c: (one(3) if x == 9 else x) for c, x in WG.terms.items()}
    assert sorted(int(x.coeffs[0]) for x in WG.terms.values()) == [1, 1, 1, 9]
    rep = verify_dg_iso(Phi(paper.T, paper.W, Potential(WG.quiver, terms)))
    assert not rep.passed and rep.failures[0][0] == "a"


def test_d_squared_zero(paper):
    WG = paper.T.compute_WG(paper.W)
    for gamma in (GinzburgAlgebra(paper.Q, paper.W), GinzburgAlgebra(paper.T.qg, WG)):
        for a in gamma.quiver.arrows:
            assert not gamma.d(gamma.d(gen(gamma, a)))


# --- corpus properties ---------------------------------------------------

seeds = st.integers(0, 10_000)


def setup(seed):
    data = random_instance(random.Random(seed), max_vertices=3, max_arrows=4)
    inst = parse_instance(data)
    act, _, W = inst.monomial()
    T = Transport(act, make_choices(act, inst.choices_seed))
    return T, W, T.compute_WG(W)


@settings(max_examples=30)
@given(seeds)
def test_verify_random(seed):
    T, W, WG = setup(seed)
    rep = verify_dg_iso(Phi(T, W, WG))
    assert rep.passed, rep.failures


@settings(max_examples=30)
@given(seeds)
def test_d_squared_and_equivariance_random(seed):
    T, W, WG = setup(seed)
    gamma = GinzburgAlgebra(T.act.quiver, W)
    for a in gamma.quiver.arrows:
        assert not gamma.d(gamma.d(gen(gamma, a)))
    assert commutes(extend_action(T.act), gamma) == []
    gamma_G = GinzburgAlgebra(T.qg, WG)
    for a in gamma_G.quiver.arrows:
        assert not gamma_G.d(gamma_G.d(gen(gamma_G, a)))
