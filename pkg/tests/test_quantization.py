import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superstar import (
    Signature,
    StarContext,
    SuperPolynomial,
    TruncationPolicy,
    Variable,
    bd1_defect,
    classical_limit,
    multiply,
    poisson_bracket,
    sampling,
    star,
    star_commutator,
)
from superstar.quantization import hbar_bracket

from oracles import moyal_oracle
from strategies import SIGNATURES, pure_polynomials

SIG = Signature(1, 1, 1)
p1, q1, t1, t2 = Variable("p", 1), Variable("q", 1), Variable("t", 1), Variable("t", 2)
HALF = Fraction(1, 2)


def V(v, sig=SIG):
    return SuperPolynomial.var(sig, v)


h = SuperPolynomial.hbar(SIG)


class TestExamples:
    def test_p_star_q(self):
        assert star(SIG, V(p1), V(q1)) == V(p1) * V(q1) + h.scale(HALF)

    def test_theta_products(self):
        s2 = Signature(0, 2, 0)
        a, b = SuperPolynomial.var(s2, t1), SuperPolynomial.var(s2, t2)
        assert star(s2, a, b) == a * b
        assert star(SIG, V(t1), V(t1)) == h.scale(-HALF)
        assert star(SIG, V(t2), V(t2)) == h.scale(HALF)

    def test_unit(self):
        one = SuperPolynomial.one(SIG)
        f = V(p1) * V(t2) + V(q1) ** 3
        assert star(SIG, one, f) == f == star(SIG, f, one)

    def test_commutators(self):
        assert star_commutator(SIG, V(p1), V(q1)) == h
        assert star_commutator(SIG, V(t1), V(t1)) == -h
        assert star_commutator(SIG, V(t2), V(t2)) == h
        assert star_commutator(SIG, V(p1), V(p1)) == 0

    def test_classical_limit(self):
        assert classical_limit(V(p1) * V(q1) + h.scale(HALF)) == V(p1) * V(q1)
        assert classical_limit(h ** 3) == 0

    def test_bd1_examples(self):
        assert bd1_defect(SIG, V(p1), V(q1)) == 0
        assert bd1_defect(SIG, V(t1), V(t1)) == 0
        f = V(p1) ** 2 * V(q1)
        g = V(p1) * V(q1) ** 2
        d = bd1_defect(SIG, f, g)
        assert d.divisible_by_hbar(2)
        comm = moyal_oracle(SIG, f, g) - moyal_oracle(SIG, g, f)
        assert d == comm - poisson_bracket(SIG, f, g).times_hbar()

    def test_hbar_bracket_recovers_poisson(self):
        f, g = V(p1) ** 2 * V(t1), V(q1) * V(t1)
        assert classical_limit(hbar_bracket(SIG, f, g)) == poisson_bracket(SIG, f, g)

    def test_truncation(self):
        ctx = StarContext.of(SIG, TruncationPolicy(max_hbar=1))
        f, g = V(p1) ** 2, V(q1) ** 2
        full = star(SIG, f, g)
        assert full.hbar_order() == 2
        assert star(ctx, f, g) == full - full.hbar_coefficient(2).times_hbar(2)


def test_matches_oracle_on_samples():
    rng = random.Random(11)
    for sig in SIGNATURES:
        for _ in range(25):
            f, g = sampling.random_polynomial(rng, sig, 3, 3), sampling.random_polynomial(rng, sig, 3, 3)
            assert star(sig, f, g) == moyal_oracle(sig, f, g)


pairs = st.sampled_from(SIGNATURES).flatmap(lambda s: st.tuples(pure_polynomials(s, 3), pure_polynomials(s, 3)))


@given(pairs)
def test_oracle_property(fg):
    f, g = fg
    assert star(f.sig, f, g) == moyal_oracle(f.sig, f, g)


@given(pairs)
def test_filtration_and_parity(fg):
    f, g = fg
    fg_ = star(f.sig, f, g)
    assert classical_limit(fg_) == multiply(f, g)
    assert fg_.hbar_coefficient(1) == poisson_bracket(f.sig, f, g).scale(HALF)
    assert fg_.is_pure()
    if fg_:
        assert fg_.parity == (f.parity + g.parity) % 2


@given(pairs)
def test_bd1(fg):
    f, g = fg
    assert bd1_defect(f.sig, f, g).divisible_by_hbar(2)


@given(st.sampled_from(SIGNATURES[:3]).flatmap(
    lambda s: st.tuples(pure_polynomials(s, 3, 3), pure_polynomials(s, 3, 3), pure_polynomials(s, 3, 3))))
def test_associative(fgh):
    f, g, k = fgh
    s = f.sig
    assert star(s, star(s, f, g), k) == star(s, f, star(s, g, k))


def test_associative_with_hbar_inputs():
    rng = random.Random(5)
    for _ in range(20):
        f, g, k = (sampling.random_polynomial(rng, SIG, 3, 3, hbar=2) for _ in range(3))
        assert star(SIG, star(SIG, f, g), k) == star(SIG, f, star(SIG, g, k))
