import cmath
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from qpskew.action import (
    InvalidAction, InvalidChoice, RawAction, check_invariance, chi_of, make_choices, normalize,
    orbit, stabilizer,
)
from qpskew.corpus import random_instance
from qpskew.group import AbelianGroup
from qpskew.instance import parse_instance
from qpskew.quiver import PathElement, Quiver, canonical_potential
from qpskew.scalar import Scalar, one, root_of_unity


def loaded(data):
    inst = parse_instance(data)
    act, base_change, W = inst.monomial()
    return inst, act, base_change, W


def test_orbits_and_stabilizers(paper, trivial, kronecker):
    assert orbit(paper.act, "i1") == ["i1", "i2", "i3"]
    assert stabilizer(paper.act, "i1").elements == ((0, 0), (0, 1), (0, 2))
    assert orbit(trivial.act, "1") == ["1"]
    assert stabilizer(trivial.act, "1") == trivial.G.whole
    assert stabilizer(kronecker.act, "1") == kronecker.G.whole


def test_paper_action_already_monomial(paper):
    assert paper.base_change == {a: {a: one(3)} for a in paper.Q.arrows}
    assert chi_of(paper.act, "x1")((0, 1)) == root_of_unity(3, 1)
    for y in ("y1", "y2", "y3"):
        assert chi_of(paper.act, y).is_trivial()


def test_kronecker_eigenbasis(kronecker):
    # oracle: exact eigenvectors of the swap matrix
    swap = sympy.Matrix([[0, 1], [1, 0]])
    eig = {int(val): [list(v) for v in vecs] for val, _, vecs in swap.eigenvects()}
    assert eig == {1: [[1, 1]], -1: [[-1, 1]]}
    bc = kronecker.base_change
    coords = {n: (bc[n].get("a", 0), bc[n].get("b", 0)) for n in bc}
    by_char = {str(chi_of(kronecker.act, n)): coords[n] for n in bc}
    one2 = one(2)
    assert by_char["tr"] == (one2, one2)
    assert by_char["chi(1)"] == (one2, -one2)


def test_choices_examples(paper, trivial):
    ch = make_choices(paper.act, {"I_tilde": ["i1", "j1"]})
    assert ch.kappa["j3"] == (0, 1)
    assert len(ch.D[("j1", "j1")]) == 1
    tc = trivial.choices
    assert tc.I_tilde == trivial.Q.vertices
    assert all(g == trivial.G.identity for g in tc.kappa.values())
    assert sorted(tc.distinguished) == sorted(trivial.Q.arrows)


def test_choice_errors(paper):
    with pytest.raises(InvalidChoice):
        make_choices(paper.act, {"I_tilde": ["i1", "i2", "j1"]})
    with pytest.raises(InvalidChoice):
        make_choices(paper.act, {"kappa": {"j3": (1, 0)}})
    with pytest.raises(InvalidChoice):
        make_choices(paper.act, {"R": {("i1", "j1"): ["i1", "i2"]}})


def test_invariance_examples(paper):
    assert check_invariance(paper.act, paper.W) == (True, None)
    Q = paper.Q
    x13 = canonical_potential(PathElement.of(Q, Q.path(["x1"] * 3)))
    ok, (g, cycle) = check_invariance(paper.act, x13)
    assert not ok and g == (1, 0) and cycle == "x1*x1*x1"
    assert check_invariance(paper.act, canonical_potential(PathElement(Q)))[0]


def test_invalid_raw_actions():
    G = AbelianGroup([2])
    Q = Quiver([1, 2], [("a", 1, 2), ("b", 2, 1)])
    with pytest.raises(InvalidAction):
        RawAction(G, Q, [({1: 2, 2: 1}, {"a": {"a": one()}})])  # wrong endpoints
    with pytest.raises(InvalidAction):
        RawAction(G, Q, [({}, {"a": {"a": Scalar([2])}})])  # order 2 fails
    H = AbelianGroup([3])
    with pytest.raises(InvalidAction):
        RawAction(H, Q, [({1: 2, 2: 1}, {"a": {"b": one()}, "b": {"a": one()}})])


# --- corpus-driven properties --------------------------------------------

seeds = st.integers(0, 10_000)


@given(seeds)
def test_monomial_action_properties(seed):
    data = random_instance(random.Random(seed))
    _, act, _, W = loaded(data)
    G = act.group
    for g in G.elements:
        gi = G.inv(g)
        for a in act.quiver.arrows:
            c, b = act.arrow(g, a)
            d, a2 = act.arrow(gi, b)
            assert a2 == a and c * d == one(G.conductor)
            # characters are constant along arrow orbits
            assert chi_of(act, b).exps == chi_of(act, a).exps
    for g in G.generators():
        for h in G.generators():
            for a in act.quiver.arrows:
                x = PathElement.of(act.quiver, act.quiver.arrow(a))
                assert act.element(g, act.element(h, x)) == act.element(G.mul(g, h), x)
    assert check_invariance(act, W)[0]


@given(seeds)
def test_orbit_counting(seed):
    _, act, _, _ = loaded(random_instance(random.Random(seed)))
    ch = make_choices(act)
    G = act.group
    for i0 in ch.I_tilde:
        for j0 in ch.I_tilde:
            Gi, Gj = act.stabilizer(i0), act.stabilizer(j0)
            expected = Fraction(len(G) * len(Gi.intersect(Gj)), len(Gi) * len(Gj))
            assert len(ch.R[(i0, j0)]) == expected == len(ch.R[(j0, i0)])


@st.composite
def parallel_permutations(draw):
    """n parallel arrows 1 -> 2 permuted cyclically in blocks by Z/k."""
    k = draw(st.sampled_from([2, 3, 4]))
    blocks = draw(st.lists(st.sampled_from([d for d in (1, 2, 3, 4) if k % d == 0]),
                           min_size=1, max_size=3))
    names, image = [], {}
    for n, size in enumerate(blocks):
        block = [f"b{n}_{m}" for m in range(size)]
        names += block
        twist = draw(st.integers(0, k - 1)) if size == 1 else 0
        for m, a in enumerate(block):
            image[a] = [[f"z^{twist}" if twist else "1", block[(m + 1) % size]]]
    return {"group": [k],
            "quiver": {"vertices": ["1", "2"],
                       "arrows": [{"id": a, "source": "1", "target": "2"} for a in names]},
            "action": [{"arrows": image}]}


@given(parallel_permutations())
def test_normalize_diagonalizes(data):
    inst = parse_instance(data)
    raw = inst.raw_action()
    act, bc = normalize(raw)
    old = list(inst.quiver.arrows)
    new = list(act.quiver.arrows)
    assert len(new) == len(old)
    # the base change is invertible
    M = np.array([[_complex(bc[n].get(a, 0)) for a in old] for n in new])
    assert np.linalg.matrix_rank(M) == len(old)
    # each new arrow is an eigenvector with eigenvalue chi(g)
    for g in act.group.elements:
        lin = raw.linear_map(g)
        for n in new:
            c, m = act.arrow(g, n)
            assert m == n
            image = {}
            for a, x in bc[n].items():
                for b, y in lin[a].items():
                    image[b] = image.get(b, 0) + x * y
            for a in old:
                assert image.get(a, 0) == bc[n].get(a, 0) * c


def _complex(x):
    if not isinstance(x, Scalar):
        return complex(x)
    z = cmath.exp(2j * cmath.pi / x.conductor)
    return sum(complex(float(c)) * z**k for k, c in enumerate(x.coeffs))
