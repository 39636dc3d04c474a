"""Formal vector fields on the super-disk and Taylor jets on affine space.

Jets live in a doubled signature: the base coordinates (p, q, theta) keep
their names and the fiber coordinates (p^, q^, theta^) are appended, so
``p^_i`` is ``p_{n+i}``, ``q^_i`` is ``q_{n+i}`` and ``theta^_i`` is
``theta_{r+i}`` of the doubled signature.  They print as ``P<i>``, ``Q<i>``,
``T<i>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .expression import format_expression
from .graded import (
    THETA,
    Monomial,
    Signature,
    SuperPolynomial,
    Variable,
    multiply,
    partial_derivative,
    substitute_linear,
)
from .poisson import PoissonContext, poisson_bracket

__all__ = [
    "FormalVectorField",
    "JetElement",
    "hamiltonian_vf",
    "is_poisson_derivation",
    "split_at_origin",
    "taylor_jet",
    "jet_flatness_defect",
    "jet_signature",
]


class FormalVectorField:
    """A derivation of the function algebra, given by its values on the coordinates.

    ``parity`` is 0 or 1 for a homogeneous derivation and ``None`` for a mixed one.
    """

    def __init__(self, sig: Signature, coefficients: Mapping[Variable, SuperPolynomial],
                 parity: Optional[int] = 0):
        self.sig = sig
        zero = SuperPolynomial.zero(sig)
        self.coefficients: Dict[Variable, SuperPolynomial] = {
            v: coefficients.get(v, zero) for v in sig.variables()}
        self.parity = parity
        if parity is not None:
            for v, c in self.coefficients.items():
                if c and (not c.is_pure() or c.parity != (parity + v.parity) % 2):
                    raise ValueError(f"coefficient of {v} breaks the parity of a degree-{parity} derivation")

    @classmethod
    def zero(cls, sig: Signature) -> "FormalVectorField":
        return cls(sig, {})

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        """Apply the derivation: sum_z v(z) * d f / d z (left derivatives)."""
        out = SuperPolynomial.zero(self.sig)
        for v, c in self.coefficients.items():
            if c:
                d = partial_derivative(f, v)
                if d:
                    out = out + multiply(c, d)
        return out

    def parity_parts(self) -> List["FormalVectorField"]:
        if self.parity is not None:
            return [self]
        parts = []
        for d in (0, 1):
            coeffs = {}
            for v, c in self.coefficients.items():
                ev, od = c.parity_parts()
                coeffs[v] = od if (d + v.parity) % 2 else ev
            field = FormalVectorField(self.sig, coeffs, d)
            if not field.is_zero():
                parts.append(field)
        return parts

    def is_zero(self) -> bool:
        return all(not c for c in self.coefficients.values())

    def __add__(self, other: "FormalVectorField") -> "FormalVectorField":
        par = self.parity if self.parity == other.parity else None
        if self.is_zero():
            par = other.parity
        elif other.is_zero():
            par = self.parity
        return FormalVectorField(self.sig, {v: self.coefficients[v] + other.coefficients[v]
                                            for v in self.coefficients}, par)

    def commutator(self, other: "FormalVectorField") -> "FormalVectorField":
        """[v, w] = v w - (-1)^{|v||w|} w v, for homogeneous fields."""
        sign = -1 if (self.parity and other.parity) else 1
        coeffs = {z: self(other.coefficients[z]) - other(self.coefficients[z]).scale(sign)
                  for z in self.coefficients}
        return FormalVectorField(self.sig, coeffs, (self.parity + other.parity) % 2)

    def __eq__(self, other):
        if not isinstance(other, FormalVectorField):
            return NotImplemented
        return self.sig == other.sig and self.coefficients == other.coefficients

    def __repr__(self):
        body = ", ".join(f"{v} -> {format_expression(c)}" for v, c in self.coefficients.items() if c)
        return f"FormalVectorField({body or '0'}; parity={self.parity})"


def _pctx(ctx) -> PoissonContext:
    if isinstance(ctx, Signature):
        return PoissonContext(ctx)
    return getattr(ctx, "poisson", ctx)


def hamiltonian_vf(ctx, h: SuperPolynomial) -> FormalVectorField:
    """The field z -> {h, z}; mixed-parity ``h`` gives a mixed field."""
    ctx = _pctx(ctx)
    sig = ctx.signature
    coeffs = {v: poisson_bracket(ctx, h, SuperPolynomial.var(sig, v)) for v in sig.variables()}
    parity = h.parity if h.is_pure() else None
    return FormalVectorField(sig, coeffs, parity)


def is_poisson_derivation(ctx, v: FormalVectorField, samples: Iterable[SuperPolynomial]) -> bool:
    """Check v{x,y} = {vx, y} + (-1)^{|v||x|} {x, vy} on all pairs of pure parts of samples."""
    ctx = _pctx(ctx)
    pure = []
    for s in samples:
        pure += [part for part in s.parity_parts() if part]
    for field in v.parity_parts():
        for x in pure:
            sign = -1 if (field.parity and x.parity) else 1
            vx = field(x)
            for y in pure:
                lhs = field(poisson_bracket(ctx, x, y))
                rhs = poisson_bracket(ctx, vx, y) + poisson_bracket(ctx, x, field(y)).scale(sign)
                if lhs != rhs:
                    return False
    return True


def split_at_origin(v: FormalVectorField) -> Tuple[FormalVectorField, Dict[Variable, SuperPolynomial]]:
    """Split v into (part vanishing at 0, constant translation part)."""
    sig = v.sig
    vanishing, constant = {}, {}
    for z, c in v.coefficients.items():
        hi = {m: k for m, k in c.terms.items() if m.coordinate_degree >= 1}
        lo = {m: k for m, k in c.terms.items() if m.coordinate_degree == 0}
        vanishing[z] = SuperPolynomial(sig, hi)
        if lo:
            constant[z] = SuperPolynomial(sig, lo)
    return FormalVectorField(sig, vanishing, v.parity), constant


def recombine(vanishing: FormalVectorField, constant: Mapping[Variable, SuperPolynomial]) -> FormalVectorField:
    zero = SuperPolynomial.zero(vanishing.sig)
    coeffs = {z: c + constant.get(z, zero) for z, c in vanishing.coefficients.items()}
    return FormalVectorField(vanishing.sig, coeffs, vanishing.parity)


# -- jets -----------------------------------------------------------------------

def jet_signature(sig: Signature) -> Signature:
    return Signature.from_epsilons(2 * sig.n, sig.epsilons + sig.epsilons)


def base_variable(sig: Signature, v: Variable) -> Variable:
    """Name of base coordinate ``v`` inside the jet signature."""
    return v


def fiber_variable(sig: Signature, v: Variable) -> Variable:
    """Name of the fiber partner of base coordinate ``v`` inside the jet signature."""
    shift = sig.r if v.kind == "t" else sig.n
    return Variable(v.kind, v.index + shift)


@dataclass(frozen=True)
class JetElement:
    base: Signature
    poly: SuperPolynomial  # over jet_signature(base)

    def __post_init__(self):
        if self.poly.sig != jet_signature(self.base):
            raise ValueError("jet polynomial must live in the doubled signature")

    def fiber_degree(self, m: Monomial) -> int:
        n, r = self.base.n, self.base.r
        deg = sum(m.evens[n:2 * n]) + sum(m.evens[3 * n:4 * n])
        return deg + sum(1 for k in m.odds if k[0] == THETA and k[1] > r)

    def __add__(self, other: "JetElement") -> "JetElement":
        return JetElement(self.base, self.poly + other.poly)

    def __sub__(self, other: "JetElement") -> "JetElement":
        return JetElement(self.base, self.poly - other.poly)

    def __mul__(self, other: "JetElement") -> "JetElement":
        return JetElement(self.base, multiply(self.poly, other.poly))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def truncate_fiber(self, order: int) -> "JetElement":
        keep = {m: c for m, c in self.poly.terms.items() if self.fiber_degree(m) <= order}
        return JetElement(self.base, SuperPolynomial(self.poly.sig, keep))

    def restrict_to_base(self) -> SuperPolynomial:
        """Set every fiber coordinate to zero."""
        n, r = self.base.n, self.base.r
        out = {}
        for m, c in self.poly.terms.items():
            if self.fiber_degree(m):
                continue
            evens = m.evens[:n] + m.evens[2 * n:3 * n]
            out[Monomial(evens, m.odds, m.hbar)] = c
        return SuperPolynomial(self.base, out)

    @classmethod
    def fiber(cls, base: Signature, v: Variable) -> "JetElement":
        return cls(base, SuperPolynomial.var(jet_signature(base), fiber_variable(base, v)))

    @classmethod
    def embed(cls, f: SuperPolynomial) -> "JetElement":
        """A base function viewed as a fiber-constant jet."""
        sig = f.sig
        n = sig.n
        out = {}
        for m, c in f.terms.items():
            evens = m.evens[:n] + (0,) * n + m.evens[n:] + (0,) * n
            out[Monomial(evens, m.odds, m.hbar)] = c
        return cls(sig, SuperPolynomial(jet_signature(sig), out))

    def __str__(self):
        n, r = self.base.n, self.base.r

        def rename(mt):
            kind, idx = mt.group(1), int(mt.group(2))
            limit = r if kind == "t" else n
            return f"{kind.upper()}{idx - limit}" if idx > limit else mt.group(0)

        return re.sub(r"([pqt])(\d+)", rename, format_expression(self.poly))


def taylor_jet(f: SuperPolynomial, order: int) -> JetElement:
    """f(x + y) expanded in the fiber coordinates y up to fiber degree ``order``."""
    sig = f.sig
    jsig = jet_signature(sig)
    images = {v: SuperPolynomial.var(jsig, v) + SuperPolynomial.var(jsig, fiber_variable(sig, v))
              for v in sig.variables()}
    lifted = JetElement.embed(f).poly
    return JetElement(sig, substitute_linear(lifted, images)).truncate_fiber(order)


def jet_flatness_defect(j: JetElement) -> List[JetElement]:
    """Components d/dz - d/dz^ of the jet connection, one per base coordinate."""
    out = []
    for v in j.base.variables():
        d = partial_derivative(j.poly, base_variable(j.base, v)) - partial_derivative(j.poly, fiber_variable(j.base, v))
        out.append(JetElement(j.base, d))
    return out
