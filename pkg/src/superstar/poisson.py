"""Poisson superalgebra structure on the formal super-disk of type (2n|a,b)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .graded import (
    Monomial,
    Signature,
    SignatureMismatch,
    SuperPolynomial,
    Variable,
    derive_monomial,
    mul_monomials,
    partial_derivative,
)

__all__ = ["PoissonContext", "poisson_bracket", "super_gradient", "contract"]


@dataclass(frozen=True)
class PoissonContext:
    signature: Signature

    @property
    def n(self) -> int:
        return self.signature.n

    @property
    def r(self) -> int:
        return self.signature.r

    @property
    def omega(self):
        """The 2n x 2n block [[0, Id], [-Id, 0]]."""
        n = self.n
        m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            m[i][n + i] = Fraction(1)
            m[n + i][i] = Fraction(-1)
        return m

    @property
    def gram(self):
        return self.signature.gram()

    @property
    def H(self):
        """H_Q = diag(Omega, G) as a (2n+r) square matrix."""
        n2, r = 2 * self.n, self.r
        size = n2 + r
        m = [[Fraction(0)] * size for _ in range(size)]
        om = self.omega
        for i in range(n2):
            for j in range(n2):
                m[i][j] = om[i][j]
        for i in range(r):
            m[n2 + i][n2 + i] = Fraction(self.signature.epsilons[i])
        return m


def _as_ctx(ctx) -> PoissonContext:
    if isinstance(ctx, Signature):
        return PoissonContext(ctx)
    return ctx


def contract(sig: Signature, m1: Monomial, m2: Monomial) -> List[Tuple[int, Monomial, Monomial]]:
    """One application of the Poisson bivector to ``m1 (x) m2``.

    Returns the terms ``(coefficient, m1', m2')`` of

        sum_i d/dp_i m1 (x) d/dq_i m2 - d/dq_i m1 (x) d/dp_i m2
        + sum_i eps_i (-1)^|m1| d/dtheta_i m1 (x) d/dtheta_i m2

    where the sign (-1)^|m1| is the Koszul sign of the second odd derivative
    passing the first tensor factor.
    """
    out = []
    n = sig.n
    e1, e2 = m1.evens, m2.evens
    for i in range(n):
        pi, qi = i, n + i
        if e1[pi] and e2[qi]:
            a = e1[:pi] + (e1[pi] - 1,) + e1[pi + 1:]
            b = e2[:qi] + (e2[qi] - 1,) + e2[qi + 1:]
            out.append((e1[pi] * e2[qi], Monomial(a, m1.odds, m1.hbar), Monomial(b, m2.odds, m2.hbar)))
        if e1[qi] and e2[pi]:
            a = e1[:qi] + (e1[qi] - 1,) + e1[qi + 1:]
            b = e2[:pi] + (e2[pi] - 1,) + e2[pi + 1:]
            out.append((-e1[qi] * e2[pi], Monomial(a, m1.odds, m1.hbar), Monomial(b, m2.odds, m2.hbar)))
    if m1.odds and m2.odds:
        koszul = -1 if m1.parity else 1
        for key in m1.odds:
            if key[0] != 0 or key not in m2.odds:
                continue
            v = Variable("t", key[1])
            s1, d1 = derive_monomial(m1, v, sig)
            s2, d2 = derive_monomial(m2, v, sig)
            out.append((sig.epsilons[key[1] - 1] * koszul * s1 * s2, d1, d2))
    return out


def poisson_bracket(ctx, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """{f, g}; bilinear, so impure inputs are handled term by term.

    On generators: {p_i, q_j} = delta_ij and {theta_i, theta_j} = -eps_i delta_ij.
    """
    ctx = _as_ctx(ctx)
    sig = ctx.signature
    if f.sig != sig or g.sig != sig:
        raise SignatureMismatch("bracket arguments must live in the context's signature")
    out: Dict[Monomial, Fraction] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            for k, a, b in contract(sig, m1, m2):
                sign, m = mul_monomials(a, b)
                if sign:
                    out[m] = out.get(m, 0) + sign * k * c1 * c2
    return SuperPolynomial(sig, out)


def super_gradient(ctx, f: SuperPolynomial) -> Tuple[SuperPolynomial, ...]:
    """Partials of ``f`` along p_1..p_n, q_1..q_n, theta_1..theta_r (left derivatives)."""
    ctx = _as_ctx(ctx)
    return tuple(partial_derivative(f, v) for v in ctx.signature.variables())
