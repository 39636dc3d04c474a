import random
from fractions import Fraction
from math import comb, factorial

from hypothesis import given, strategies as st

from superstar import Signature, SuperPolynomial, Variable, multiply, partial_derivative, poisson_bracket, sampling
from superstar.formal import (
    FormalVectorField,
    JetElement,
    fiber_variable,
    hamiltonian_vf,
    is_poisson_derivation,
    jet_flatness_defect,
    jet_signature,
    recombine,
    split_at_origin,
    taylor_jet,
)

from strategies import polynomials, pure_polynomials

SIG = Signature(1, 1, 1)
p1, q1, t1, t2 = Variable("p", 1), Variable("q", 1), Variable("t", 1), Variable("t", 2)


def V(v, sig=SIG):
    return SuperPolynomial.var(sig, v)


class TestHamiltonian:
    def test_p_generates_d_dq(self):
        v = hamiltonian_vf(SIG, V(p1))
        assert v.coefficients[q1] == 1
        assert all(c == 0 for z, c in v.coefficients.items() if z != q1)

    def test_constant_gives_zero(self):
        assert hamiltonian_vf(SIG, SuperPolynomial.one(SIG)).is_zero()

    def test_odd_generator(self):
        # {t1, t1} = -eps_1, so t1 generates -d/dt1 when eps_1 = +1
        v = hamiltonian_vf(SIG, V(t1))
        assert v.parity == 1
        assert v.coefficients[t1] == -1
        assert all(c == 0 for z, c in v.coefficients.items() if z != t1)

    def test_lie_map(self):
        rng = random.Random(1)
        for _ in range(20):
            f, g = sampling.random_pure(rng, SIG, 3), sampling.random_pure(rng, SIG, 3)
            vf, vg = hamiltonian_vf(SIG, f), hamiltonian_vf(SIG, g)
            assert vf.commutator(vg) == hamiltonian_vf(SIG, poisson_bracket(SIG, f, g))


class TestPoissonDerivation:
    def samples(self, seed):
        rng = random.Random(seed)
        return [sampling.random_pure(rng, SIG, 2, 2) for _ in range(4)] + [V(p1), V(q1), V(t1)]

    def test_hamiltonian_fields_pass(self):
        rng = random.Random(2)
        for _ in range(8):
            v = hamiltonian_vf(SIG, sampling.random_pure(rng, SIG, 3))
            assert is_poisson_derivation(SIG, v, self.samples(rng.random()))

    def test_euler_field_fails(self):
        v = FormalVectorField(SIG, {p1: V(p1), q1: V(q1)})
        assert not is_poisson_derivation(SIG, v, self.samples(0))

    def test_zero_field_passes(self):
        assert is_poisson_derivation(SIG, FormalVectorField.zero(SIG), self.samples(0))


class TestSplit:
    def test_constant_field(self):
        lo, const = split_at_origin(FormalVectorField(SIG, {q1: SuperPolynomial.one(SIG)}))
        assert lo.is_zero() and const == {q1: 1}

    def test_affine_field(self):
        lo, const = split_at_origin(FormalVectorField(SIG, {q1: V(q1) + 1}))
        assert lo.coefficients[q1] == V(q1) and const == {q1: 1}

    @given(pure_polynomials(SIG, 4, 5))
    def test_recombine(self, h):
        v = hamiltonian_vf(SIG, h)
        lo, const = split_at_origin(v)
        assert recombine(lo, const) == v
        assert all(m.coordinate_degree >= 1 for c in lo.coefficients.values() for m in c.terms)


class TestJets:
    def test_linear(self):
        j = taylor_jet(V(q1), 1)
        assert str(j) == "q1 + Q1"

    def test_binomial(self):
        assert str(taylor_jet(V(p1) ** 2, 2)) == "p1^2 + 2*p1*P1 + P1^2"

    def test_odd_substitution(self):
        s = Signature(0, 2, 0)
        js = jet_signature(s)
        T = lambda i: SuperPolynomial.var(js, "t", i)
        f = SuperPolynomial.var(s, t1) * SuperPolynomial.var(s, t2)
        assert taylor_jet(f, 2).poly == multiply(T(1) + T(3), T(2) + T(4))

    def test_fiber_generator_defect(self):
        d = jet_flatness_defect(JetElement.fiber(SIG, q1))
        comps = dict(zip(SIG.variables(), d))
        assert comps[q1].poly == -1
        assert all(c.is_zero() for v, c in comps.items() if v != q1)

    def test_constant(self):
        assert all(c.is_zero() for c in jet_flatness_defect(JetElement.embed(SuperPolynomial.constant(SIG, 3))))

    def test_even_taylor_series_oracle(self):
        # f(x + y) = sum_k y^k/k! d^k f for a one-variable polynomial
        s = Signature(1, 0, 0)
        rng = random.Random(3)
        js = jet_signature(s)
        for _ in range(10):
            f = sampling.random_polynomial(rng, s, 5, 4)
            expected = SuperPolynomial.zero(js)
            for a in range(6):
                for b in range(6):
                    d = f
                    for _ in range(a):
                        d = partial_derivative(d, p1)
                    for _ in range(b):
                        d = partial_derivative(d, q1)
                    if not d:
                        continue
                    y = (SuperPolynomial.var(js, fiber_variable(s, p1)) ** a
                         * SuperPolynomial.var(js, fiber_variable(s, q1)) ** b)
                    expected = expected + multiply(JetElement.embed(d).poly, y).scale(
                        Fraction(1, factorial(a) * factorial(b)))
            assert taylor_jet(f, 10).poly == expected

    @given(polynomials(Signature(1, 2, 0), 5, 5))
    def test_flat_and_restricts(self, f):
        j = taylor_jet(f, 5)
        assert all(c.is_zero() for c in jet_flatness_defect(j))
        assert j.restrict_to_base() == f

    def test_multiplicative(self):
        rng = random.Random(4)
        for _ in range(15):
            f, g = sampling.random_pure(rng, SIG, 3), sampling.random_pure(rng, SIG, 3)
            assert taylor_jet(multiply(f, g), 6) == taylor_jet(f, 6) * taylor_jet(g, 6)

    def test_truncation_breaks_flatness_only_at_top(self):
        j = taylor_jet(V(p1) ** 3, 1)
        d = jet_flatness_defect(j)
        assert not all(c.is_zero() for c in d)
        assert all(all(c.fiber_degree(m) >= 1 for m in c.poly.terms) for c in d)
