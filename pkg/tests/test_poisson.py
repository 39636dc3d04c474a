import random

import pytest
from hypothesis import given, strategies as st

from superstar import PoissonContext, Signature, SignatureMismatch, SuperPolynomial, Variable
from superstar import multiply, poisson_bracket, sampling, super_gradient

from strategies import SIGNATURES, pure_polynomials

SIG = Signature(1, 1, 1)
p1, q1, t1, t2 = Variable("p", 1), Variable("q", 1), Variable("t", 1), Variable("t", 2)


def V(v, sig=SIG):
    return SuperPolynomial.var(sig, v)


def sgn(f, g):
    return -1 if f.parity and g.parity else 1


def br(f, g):
    return poisson_bracket(f.sig, f, g)


def test_context_blocks():
    ctx = PoissonContext(Signature(1, 1, 1))
    assert ctx.omega == [[0, 1], [-1, 0]]
    assert ctx.gram == [[1, 0], [0, -1]]
    H = ctx.H
    assert len(H) == 4 and H[0][1] == 1 and H[3][3] == -1 and H[0][2] == 0


def test_canonical_pair():
    assert br(V(p1), V(q1)) == 1
    assert br(V(q1), V(p1)) == -1


def test_odd_generators():
    # {t_i, t_i} = -eps_i, matching t_i * t_i = -(h/2) eps_i
    assert br(V(t1), V(t1)) == -1
    assert br(V(t2), V(t2)) == 1
    assert br(V(t1), V(t2)) == 0


def test_leibniz_example():
    assert br(V(p1) ** 2, V(q1)) == V(p1).scale(2)


@pytest.mark.parametrize("sig", SIGNATURES, ids=str)
def test_generator_table(sig):
    eps = sig.epsilons
    for u in sig.variables():
        for v in sig.variables():
            want = 0
            if u.index == v.index:
                if (u.kind, v.kind) == ("p", "q"):
                    want = 1
                elif (u.kind, v.kind) == ("q", "p"):
                    want = -1
                elif u.kind == v.kind == "t":
                    want = -eps[u.index - 1]
            assert poisson_bracket(sig, V(u, sig), V(v, sig)) == want, (u, v)


def test_gradient():
    sig = Signature(1, 0, 0)
    assert super_gradient(sig, SuperPolynomial.var(sig, p1) * SuperPolynomial.var(sig, q1)) == (
        SuperPolynomial.var(sig, q1), SuperPolynomial.var(sig, p1))
    s2 = Signature(0, 2, 0)
    grad = super_gradient(s2, SuperPolynomial.var(s2, t1) * SuperPolynomial.var(s2, t2))
    assert grad == (SuperPolynomial.var(s2, t2), -SuperPolynomial.var(s2, t1))
    assert all(g == 0 for g in super_gradient(SIG, SuperPolynomial.one(SIG)))
    assert len(super_gradient(SIG, SuperPolynomial.one(SIG))) == 4


def test_no_hbar_and_mismatch():
    rng = random.Random(3)
    for _ in range(20):
        f, g = sampling.random_pure(rng, SIG, 3), sampling.random_pure(rng, SIG, 3)
        assert br(f, g).hbar_order() <= 0
    with pytest.raises(SignatureMismatch):
        poisson_bracket(SIG, V(p1), SuperPolynomial.var(Signature(1, 0, 0), q1))


def test_impure_inputs_split_linearly():
    f = V(p1) + V(t1)
    g = V(q1) + V(t1)
    assert br(f, g) == br(V(p1), V(q1)) + br(V(t1), V(t1))


triples = st.sampled_from(SIGNATURES).flatmap(
    lambda s: st.tuples(pure_polynomials(s, 4), pure_polynomials(s, 4), pure_polynomials(s, 4)))


@given(triples)
def test_antisymmetry(fgh):
    f, g, _ = fgh
    assert br(f, g) == br(g, f).scale(-sgn(f, g))


@given(triples)
def test_leibniz(fgh):
    f, g, h = fgh
    assert br(f, multiply(g, h)) == multiply(br(f, g), h) + multiply(g, br(f, h)).scale(sgn(f, g))


@given(triples)
def test_jacobi(fgh):
    f, g, h = fgh
    assert br(f, br(g, h)) == br(br(f, g), h) + br(g, br(f, h)).scale(sgn(f, g))
