"""Randomized invariant suite behind ``superstar check``.

Every check draws its own inputs from a seeded RNG and compares exact
rational results.  Implementations are looked up through their modules at
call time so a broken override is noticed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

from . import formal, graded, poisson, quantization, sampling, symplectic, weyl_clifford
from .graded import Signature, SuperPolynomial, Variable

__all__ = ["CheckResult", "CHECKS", "run_checks"]


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.failures[0]}" if self.failures else ""
        return f"[{status}] {self.name} ({self.cases} cases){extra}"


class _Run:
    def __init__(self, name, sig, rng, degree, cases):
        self.result = CheckResult(name)
        self.sig, self.rng, self.degree, self.cases = sig, rng, degree, cases

    def pure(self, degree=None, terms=3):
        return sampling.random_pure(self.rng, self.sig, degree or self.degree, terms)

    def expect(self, ok, message):
        self.result.cases += 1
        if not ok and len(self.result.failures) < 5:
            self.result.failures.append(message)


def _sgn(f, g):
    return -1 if (f.parity and g.parity) else 1


# -- graded algebra ----------------------------------------------------------------

def check_supercommutative(c: _Run):
    for _ in range(c.cases):
        f, g = c.pure(), c.pure()
        c.expect(graded.multiply(f, g) == graded.multiply(g, f).scale(_sgn(f, g)), f"fg != +-gf for {f}, {g}")


def check_product_associative(c: _Run):
    for _ in range(c.cases):
        f, g, h = c.pure(), c.pure(), c.pure()
        m = graded.multiply
        c.expect(m(m(f, g), h) == m(f, m(g, h)), f"(fg)h != f(gh) for {f}, {g}, {h}")


def check_partials(c: _Run):
    sig = c.sig
    vs = sig.variables()
    if not vs:
        return
    d = graded.partial_derivative
    for _ in range(c.cases):
        f = c.pure()
        u, v = c.rng.choice(vs), c.rng.choice(vs)
        sign = -1 if (u.is_odd and v.is_odd) else 1
        c.expect(d(d(f, u), v) == d(d(f, v), u).scale(sign), f"partials {u},{v} fail to supercommute on {f}")
        g = c.pure()
        lhs = d(graded.multiply(f, g), u)
        s = -1 if (u.is_odd and f.parity) else 1
        rhs = graded.multiply(d(f, u), g) + graded.multiply(f, d(g, u)).scale(s)
        c.expect(lhs == rhs, f"Leibniz rule for d/d{u} fails on {f}, {g}")


def check_substitution_is_algebra_map(c: _Run):
    for _ in range(max(1, c.cases // 4)):
        M = sampling.random_even_member(c.rng, c.sig)
        images = symplectic._images(M)
        f, g = c.pure(), c.pure()
        s = graded.substitute_linear
        c.expect(s(graded.multiply(f, g), images) == graded.multiply(s(f, images), s(g, images)),
                 f"substitution is not multiplicative on {f}, {g}")


# -- Poisson ---------------------------------------------------------------------

def check_generator_brackets(c: _Run):
    sig = c.sig
    eps = sig.epsilons
    for u in sig.variables():
        for v in sig.variables():
            want = 0
            if u.kind == "p" and v.kind == "q" and u.index == v.index:
                want = 1
            elif u.kind == "q" and v.kind == "p" and u.index == v.index:
                want = -1
            elif u.kind == v.kind == "t" and u.index == v.index:
                want = -eps[u.index - 1]
            got = poisson.poisson_bracket(sig, SuperPolynomial.var(sig, u), SuperPolynomial.var(sig, v))
            c.expect(got == want, f"{{{u},{v}}} = {got}, expected {want}")


def check_poisson_antisymmetry(c: _Run):
    br = lambda f, g: poisson.poisson_bracket(c.sig, f, g)
    for _ in range(c.cases):
        f, g = c.pure(), c.pure()
        c.expect(br(f, g) == br(g, f).scale(-_sgn(f, g)), f"antisymmetry fails on {f}, {g}")


def check_poisson_leibniz(c: _Run):
    br = lambda f, g: poisson.poisson_bracket(c.sig, f, g)
    m = graded.multiply
    for _ in range(c.cases):
        f, g, h = c.pure(), c.pure(), c.pure()
        lhs = br(f, m(g, h))
        rhs = m(br(f, g), h) + m(g, br(f, h)).scale(_sgn(f, g))
        c.expect(lhs == rhs, f"Leibniz fails on {f}, {g}, {h}")


def check_poisson_jacobi(c: _Run):
    br = lambda f, g: poisson.poisson_bracket(c.sig, f, g)
    for _ in range(c.cases):
        f, g, h = c.pure(), c.pure(), c.pure()
        lhs = br(f, br(g, h))
        rhs = br(br(f, g), h) + br(g, br(f, h)).scale(_sgn(f, g))
        c.expect(lhs == rhs, f"Jacobi fails on {f}, {g}, {h}")


# -- star product ------------------------------------------------------------------

def check_star_associative(c: _Run):
    st = lambda f, g: quantization.star(c.sig, f, g)
    deg = min(c.degree, 3)
    for _ in range(c.cases):
        f, g, h = c.pure(deg), c.pure(deg), c.pure(deg)
        c.expect(st(st(f, g), h) == st(f, st(g, h)), f"star is not associative on {f}, {g}, {h}")


def check_star_unit(c: _Run):
    one = SuperPolynomial.one(c.sig)
    for _ in range(c.cases):
        f = c.pure()
        c.expect(quantization.star(c.sig, one, f) == f == quantization.star(c.sig, f, one), f"1 is not a unit for {f}")


def check_star_filtration(c: _Run):
    for _ in range(c.cases):
        f, g = c.pure(), c.pure()
        fg = quantization.star(c.sig, f, g)
        c.expect(quantization.classical_limit(fg) == graded.multiply(f, g), f"f*g mod hbar != fg for {f}, {g}")
        half = poisson.poisson_bracket(c.sig, f, g).scale(Fraction(1, 2))
        c.expect(fg.hbar_coefficient(1) == half, f"hbar^1 part of f*g != {{f,g}}/2 for {f}, {g}")
        c.expect(fg.is_pure() and (not fg or fg.parity == (f.parity + g.parity) % 2), f"parity of f*g wrong for {f}, {g}")


def check_bd1(c: _Run):
    for _ in range(c.cases):
        f, g = c.pure(), c.pure()
        d = quantization.bd1_defect(c.sig, f, g)
        c.expect(d.divisible_by_hbar(2), f"[f,g] - hbar{{f,g}} not divisible by hbar^2 for {f}, {g}")


def check_sp_invariance(c: _Run):
    deg = min(c.degree, 3)
    for _ in range(max(1, c.cases // 10)):
        M = sampling.random_even_member(c.rng, c.sig)
        f, g = c.pure(deg), c.pure(deg)
        act = lambda h: symplectic.act(c.sig, M, h)
        c.expect(act(quantization.star(c.sig, f, g)) == quantization.star(c.sig, act(f), act(g)),
                 f"star not Sp-invariant for {f}, {g}")
        c.expect(act(poisson.poisson_bracket(c.sig, f, g)) == poisson.poisson_bracket(c.sig, act(f), act(g)),
                 f"bracket not Sp-invariant for {f}, {g}")


# -- Weyl (x) Clifford -----------------------------------------------------------------

def check_iso(c: _Run):
    length = min(c.degree, 4)
    report = weyl_clifford.iso_check(c.sig, max_length=length)
    c.result.cases += report.checked
    for word, lhs, rhs in report.mismatches[:5]:
        c.result.failures.append(f"word {word}: rewriting {lhs} vs star {rhs}")


def check_confluence(c: _Run):
    for _ in range(max(1, c.cases // 4)):
        word = sampling.random_word(c.rng, c.sig, c.rng.randint(0, 6))
        ref = weyl_clifford.normal_order(c.sig, word)
        other = weyl_clifford.normal_order(c.sig, word, rng=c.rng)
        c.expect(ref == other, f"normal form depends on rewrite order for {word}")


def check_rewrite_associative(c: _Run):
    deg = min(c.degree, 2)
    for _ in range(max(1, c.cases // 10)):
        x, y, z = c.pure(deg, 2), c.pure(deg, 2), c.pure(deg, 2)
        mul = weyl_clifford.rewrite_mul
        c.expect(mul(mul(x, y), z) == mul(x, mul(y, z)), f"rewrite_mul not associative on {x}, {y}, {z}")
        c.expect(mul(x, y) == quantization.star(c.sig, x, y), f"rewrite_mul disagrees with star on {x}, {y}")


# -- Sp(2n|a,b) -----------------------------------------------------------------------

def check_super_transpose_order(c: _Run):
    for _ in range(max(1, c.cases // 4)):
        M = sampling.random_supermatrix(c.rng, c.sig)
        T = symplectic.super_transpose
        c.expect(T(T(T(T(M)))) == M, "super transpose does not have order 4")


def check_group_closure(c: _Run):
    for _ in range(max(1, c.cases // 10)):
        M = sampling.random_even_member(c.rng, c.sig)
        N = sampling.random_even_member(c.rng, c.sig)
        c.expect(symplectic.is_sp_member(c.sig, M @ N), "product of members is not a member")
        c.expect(symplectic.is_sp_member(c.sig, M.inverse()), "inverse of a member is not a member")


def check_lie_members(c: _Run):
    sig = c.sig
    t = SuperPolynomial.var(sig, "x", 1) * SuperPolynomial.var(sig, "x", 2)  # t^2 = 0
    for _ in range(max(1, c.cases // 20)):
        X = sampling.random_even_lie_member(c.rng, sig)
        c.expect(symplectic.is_sp_lie_member(sig, X), "sampled Lie element fails the Lie condition")
        IX = symplectic.SuperMatrix.identity(sig) + symplectic.SuperMatrix(
            sig, tuple(tuple(graded.multiply(t, e) for e in row) for row in X.rows))
        c.expect(symplectic.is_sp_member(sig, IX), "I + tX is not a member modulo t^2")
        samples = [c.pure(2, 2) for _ in range(3)]
        c.expect(formal.is_poisson_derivation(sig, symplectic.lie_action(X), samples),
                 "linear Lie action is not a Poisson derivation")


# -- formal geometry -------------------------------------------------------------------

def check_hamiltonian(c: _Run):
    for _ in range(max(1, c.cases // 4)):
        f, g = c.pure(), c.pure()
        vf, vg = formal.hamiltonian_vf(c.sig, f), formal.hamiltonian_vf(c.sig, g)
        vfg = formal.hamiltonian_vf(c.sig, poisson.poisson_bracket(c.sig, f, g))
        c.expect(vf.commutator(vg).coefficients == vfg.coefficients, f"[v_f, v_g] != v_{{f,g}} for {f}, {g}")
        samples = [c.pure(2, 2) for _ in range(3)]
        c.expect(formal.is_poisson_derivation(c.sig, vf, samples), f"v_f is not a Poisson derivation for {f}")


def check_split(c: _Run):
    sig = c.sig
    for _ in range(max(1, c.cases // 4)):
        h = c.pure()
        v = formal.hamiltonian_vf(sig, h)
        lo, const = formal.split_at_origin(v)
        c.expect(formal.recombine(lo, const) == v, "split/recombine is not the identity")


def check_jets(c: _Run):
    deg = max(c.degree, 1)
    for _ in range(max(1, c.cases // 4)):
        f, g = c.pure(), c.pure()
        jf = formal.taylor_jet(f, deg)
        c.expect(all(d.is_zero() for d in formal.jet_flatness_defect(jf)), f"Taylor jet of {f} is not flat")
        c.expect(jf.restrict_to_base() == f, f"jet of {f} does not restrict to f")
        jfg = formal.taylor_jet(graded.multiply(f, g), 2 * deg)
        c.expect(jfg == formal.taylor_jet(f, 2 * deg) * formal.taylor_jet(g, 2 * deg),
                 f"taylor_jet not multiplicative on {f}, {g}")


CHECKS: List[tuple] = [
    ("graded: supercommutativity", check_supercommutative),
    ("graded: associativity", check_product_associative),
    ("graded: partial derivatives", check_partials),
    ("graded: substitution is an algebra map", check_substitution_is_algebra_map),
    ("poisson: generator table", check_generator_brackets),
    ("poisson: super-antisymmetry", check_poisson_antisymmetry),
    ("poisson: super-Leibniz", check_poisson_leibniz),
    ("poisson: super-Jacobi", check_poisson_jacobi),
    ("star: associativity", check_star_associative),
    ("star: unit", check_star_unit),
    ("star: hbar filtration and parity", check_star_filtration),
    ("star: BD1 defect divisible by hbar^2", check_bd1),
    ("star: Sp-invariance", check_sp_invariance),
    ("weyl-clifford: equivalence with star", check_iso),
    ("weyl-clifford: confluence", check_confluence),
    ("weyl-clifford: rewrite_mul", check_rewrite_associative),
    ("symplectic: super transpose has order 4", check_super_transpose_order),
    ("symplectic: group closure", check_group_closure),
    ("symplectic: Lie members", check_lie_members),
    ("formal: Hamiltonian vector fields", check_hamiltonian),
    ("formal: split at origin", check_split),
    ("formal: jet flatness", check_jets),
]


def run_checks(sig: Signature, degree: int = 3, cases: int = 50, seed: int = 0,
               progress: Optional[Callable[[CheckResult], None]] = None) -> List[CheckResult]:
    results = []
    for i, (name, fn) in enumerate(CHECKS):
        run = _Run(name, sig, random.Random(seed * 1000 + i), degree, cases)
        try:
            fn(run)
        except Exception as exc:  # a crash is a failed invariant, not a CLI error
            run.result.failures.append(f"raised {type(exc).__name__}: {exc}")
        results.append(run.result)
        if progress is not None:
            progress(run.result)
    return results
