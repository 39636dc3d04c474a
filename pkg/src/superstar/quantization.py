"""The Moyal-Weyl-Clifford star product on the formal super-disk.

    f * g = m( exp(hbar/2 * alpha) (f (x) g) )

with ``alpha`` the constant Poisson bivector (see :func:`superstar.poisson.contract`).
Each application of ``alpha`` lowers the degree of both tensor factors, so on
polynomials the series stops by itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Tuple

from .graded import (
    Monomial,
    Signature,
    SignatureMismatch,
    SuperPolynomial,
    TruncationPolicy,
    mul_monomials,
    multiply,
    truncate,
)
from .poisson import PoissonContext, contract, poisson_bracket

__all__ = [
    "StarContext",
    "star",
    "star_commutator",
    "classical_limit",
    "bd1_defect",
    "hbar_bracket",
]


@dataclass(frozen=True)
class StarContext:
    poisson: PoissonContext
    truncation: Optional[TruncationPolicy] = None

    @classmethod
    def of(cls, sig: Signature, truncation: Optional[TruncationPolicy] = None) -> "StarContext":
        return cls(PoissonContext(sig), truncation)

    @property
    def signature(self) -> Signature:
        return self.poisson.signature


def _as_ctx(ctx) -> StarContext:
    if isinstance(ctx, StarContext):
        return ctx
    if isinstance(ctx, PoissonContext):
        return StarContext(ctx)
    if isinstance(ctx, Signature):
        return StarContext.of(ctx)
    raise TypeError(f"cannot build a StarContext from {type(ctx).__name__}")


def _star_monomials(sig: Signature, m1: Monomial, m2: Monomial, max_k: Optional[int]):
    """Yield ``(k, coefficient, product monomial)`` for exp(hbar/2 alpha) on m1 (x) m2."""
    layer: Dict[Tuple[Monomial, Monomial], Fraction] = {(m1, m2): Fraction(1)}
    k = 0
    while layer:
        weight = Fraction(1, (2 ** k) * factorial(k))
        for (a, b), c in layer.items():
            sign, m = mul_monomials(a, b)
            if sign:
                yield k, sign * c * weight, m
        if max_k is not None and k >= max_k:
            return
        nxt: Dict[Tuple[Monomial, Monomial], Fraction] = {}
        for (a, b), c in layer.items():
            for s, a2, b2 in contract(sig, a, b):
                key = (a2, b2)
                v = nxt.get(key, 0) + s * c
                if v:
                    nxt[key] = v
                else:
                    nxt.pop(key, None)
        layer = nxt
        k += 1


def star(ctx, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """The star product ``f * g``; bilinear, so impure inputs are fine."""
    ctx = _as_ctx(ctx)
    sig = ctx.signature
    if f.sig != sig or g.sig != sig:
        raise SignatureMismatch(f"star arguments must live in signature {sig}")
    pol = ctx.truncation
    max_k = None
    if pol is not None and pol.max_hbar is not None:
        max_k = pol.max_hbar
    out: Dict[Monomial, Fraction] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            cc = c1 * c2
            for k, c, m in _star_monomials(sig, m1, m2, max_k):
                if k:
                    m = m._replace(hbar=m.hbar + k)
                out[m] = out.get(m, 0) + cc * c
    return truncate(SuperPolynomial(sig, out), pol)


def star_commutator(ctx, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Graded commutator ``f*g - (-1)^{|f||g|} g*f``, extended bilinearly over parity parts."""
    ctx = _as_ctx(ctx)
    result = SuperPolynomial.zero(ctx.signature)
    for fp, fpar in zip(f.parity_parts(), (0, 1)):
        if not fp:
            continue
        for gp, gpar in zip(g.parity_parts(), (0, 1)):
            if not gp:
                continue
            fg = star(ctx, fp, gp)
            gf = star(ctx, gp, fp)
            result = result + (fg + gf if fpar and gpar else fg - gf)
    return result


def classical_limit(f: SuperPolynomial) -> SuperPolynomial:
    """Reduce modulo hbar."""
    return f.hbar_coefficient(0)


def bd1_defect(ctx, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """``[f, g] - hbar {f, g}``; vanishes modulo hbar^2 for a deformation quantization."""
    ctx = _as_ctx(ctx)
    return star_commutator(ctx, f, g) - poisson_bracket(ctx.poisson, f, g).times_hbar()


def hbar_bracket(ctx, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """``[f, g] / hbar``; raises ``ArithmeticError`` if the commutator is not divisible."""
    return star_commutator(ctx, f, g).divide_by_hbar(1)


def first_order_part(ctx, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """The hbar^1 coefficient of f*g, for hbar-free inputs."""
    return star(ctx, f, g).hbar_coefficient(1)


def leading_terms(ctx, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """``fg + hbar/2 {f, g}``, the expansion of f*g to first order."""
    ctx = _as_ctx(ctx)
    return multiply(f, g) + poisson_bracket(ctx.poisson, f, g).scale(Fraction(1, 2)).times_hbar()
