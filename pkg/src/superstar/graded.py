"""Exact Z/2-graded polynomials in even variables, odd (Grassmann) variables and hbar.

A monomial is stored as ``(evens, odds, hbar)``:

* ``evens`` -- tuple of ``2n`` exponents, ``p_1..p_n`` then ``q_1..q_n``;
* ``odds`` -- strictly ascending tuple of odd keys.  ``(0, i)`` is ``theta_i``
  and ``(1, k)`` is the auxiliary Grassmann parameter ``xi_k``, so every theta
  sorts before every xi;
* ``hbar`` -- the power of hbar.

Coefficients are :class:`fractions.Fraction`.  Any reordering of odd factors
is paid for with the Koszul sign of the permutation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, NamedTuple, Optional, Tuple, Union

__all__ = [
    "Signature",
    "Variable",
    "Monomial",
    "SuperPolynomial",
    "TruncationPolicy",
    "SignatureMismatch",
    "ParityError",
    "multiply",
    "partial_derivative",
    "substitute_linear",
    "truncate",
]

THETA = 0
XI = 1

Scalar = Union[int, Fraction]


class SignatureMismatch(ValueError):
    pass


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    """Type ``(2n|a,b)`` together with the sign vector of the odd quadratic form.

    ``epsilons`` defaults to ``a`` plus signs followed by ``b`` minus signs.
    """

    n: int
    a: int = 0
    b: int = 0
    epsilons: Tuple[int, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.n < 0 or self.a < 0 or self.b < 0:
            raise ValueError(f"negative dimension in signature ({self.n}|{self.a},{self.b})")
        eps = self.epsilons
        if eps is None:
            eps = (1,) * self.a + (-1,) * self.b
        eps = tuple(int(e) for e in eps)
        if len(eps) != self.a + self.b:
            raise ValueError(f"need {self.a + self.b} epsilons, got {len(eps)}")
        if any(e not in (1, -1) for e in eps):
            raise ValueError("epsilons must be +1 or -1")
        if eps.count(1) != self.a:
            raise ValueError(f"epsilons {eps} do not have exactly {self.a} positive entries")
        object.__setattr__(self, "epsilons", eps)

    @property
    def r(self) -> int:
        return self.a + self.b

    @classmethod
    def from_epsilons(cls, n: int, epsilons: Iterable[int]) -> "Signature":
        eps = tuple(epsilons)
        return cls(n, eps.count(1), eps.count(-1), eps)

    def variables(self) -> Tuple["Variable", ...]:
        """Coordinates in canonical order: p's, q's, then thetas."""
        out = [Variable("p", i) for i in range(1, self.n + 1)]
        out += [Variable("q", i) for i in range(1, self.n + 1)]
        out += [Variable("t", i) for i in range(1, self.r + 1)]
        return tuple(out)

    def gram(self):
        """The diagonal matrix G = diag(eps) as nested lists of Fractions."""
        r = self.r
        return [[Fraction(self.epsilons[i]) if i == j else Fraction(0) for j in range(r)]
                for i in range(r)]

    def __str__(self):
        return f"({2 * self.n}|{self.a},{self.b})"


@dataclass(frozen=True, order=True)
class Variable:
    """A generator: ``kind`` is ``'p'``, ``'q'`` (even), ``'t'`` (theta) or ``'x'`` (aux xi)."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ("p", "q", "t", "x"):
            raise ValueError(f"unknown variable kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("variable indices start at 1")

    @property
    def is_odd(self) -> bool:
        return self.kind in ("t", "x")

    @property
    def parity(self) -> int:
        return 1 if self.is_odd else 0

    def __str__(self):
        return f"{self.kind}{self.index}"

    def check(self, sig: Signature) -> None:
        limit = {"p": sig.n, "q": sig.n, "t": sig.r}.get(self.kind)
        if limit is not None and self.index > limit:
            raise ValueError(f"variable {self} out of range for signature {sig}")

    def even_slot(self, sig: Signature) -> int:
        return self.index - 1 if self.kind == "p" else sig.n + self.index - 1

    def odd_key(self) -> Tuple[int, int]:
        return (THETA if self.kind == "t" else XI, self.index)


class Monomial(NamedTuple):
    evens: Tuple[int, ...]
    odds: Tuple[Tuple[int, int], ...]
    hbar: int = 0

    @property
    def parity(self) -> int:
        return len(self.odds) & 1

    @property
    def degree(self) -> int:
        """Total degree in p, q, theta and xi (hbar excluded)."""
        return sum(self.evens) + len(self.odds)

    @property
    def coordinate_degree(self) -> int:
        """Degree in the coordinates p, q, theta only."""
        return sum(self.evens) + sum(1 for k in self.odds if k[0] == THETA)


def merge_odds(left, right):
    """Concatenate two ascending odd tuples into ascending order.

    Returns ``(sign, merged)`` or ``(0, None)`` when a generator repeats.
    """
    if not left:
        return 1, right
    if not right:
        return 1, left
    out = []
    swaps = 0
    i = j = 0
    nl, nr = len(left), len(right)
    while i < nl and j < nr:
        a, b = left[i], right[j]
        if a == b:
            return 0, None
        if a < b:
            out.append(a)
            i += 1
        else:
            # b jumps over the remaining nl - i entries of left
            swaps += nl - i
            out.append(b)
            j += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return (-1 if swaps & 1 else 1), tuple(out)


def sort_odds(keys):
    """Sort a sequence of odd keys; returns ``(sign, sorted)`` or ``(0, None)``."""
    keys = list(keys)
    if len(set(keys)) != len(keys):
        return 0, None
    inversions = 0
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if keys[i] > keys[j]:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(keys))


def mul_monomials(m1: Monomial, m2: Monomial):
    """Product of two basis monomials as ``(sign, monomial)``; sign 0 means zero."""
    sign, odds = merge_odds(m1.odds, m2.odds)
    if not sign:
        return 0, None
    evens = tuple(a + b for a, b in zip(m1.evens, m2.evens))
    return sign, Monomial(evens, odds, m1.hbar + m2.hbar)


class SuperPolynomial:
    """An element of Q[p, q, hbar] tensor Lambda[theta, xi], stored sparsely.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("sig", "terms", "_hash")

    def __init__(self, sig: Signature, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.sig = sig
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, sig, terms):
        obj = cls.__new__(cls)
        obj.sig = sig
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, sig: Signature) -> "SuperPolynomial":
        return cls._raw(sig, {})

    @classmethod
    def constant(cls, sig: Signature, c: Scalar = 1, hbar: int = 0) -> "SuperPolynomial":
        return cls(sig, {Monomial((0,) * (2 * sig.n), (), hbar): c})

    @classmethod
    def one(cls, sig: Signature) -> "SuperPolynomial":
        return cls.constant(sig, 1)

    @classmethod
    def hbar(cls, sig: Signature, power: int = 1) -> "SuperPolynomial":
        return cls.constant(sig, 1, power)

    @classmethod
    def var(cls, sig: Signature, v: Union[Variable, str], index: Optional[int] = None) -> "SuperPolynomial":
        """The generator ``v``; accepts ``var(sig, 'p', 1)`` or ``var(sig, Variable('p', 1))``."""
        if not isinstance(v, Variable):
            v = Variable(v, index)
        v.check(sig)
        evens = [0] * (2 * sig.n)
        odds: Tuple[Tuple[int, int], ...] = ()
        if v.is_odd:
            odds = (v.odd_key(),)
        else:
            evens[v.even_slot(sig)] = 1
        return cls._raw(sig, {Monomial(tuple(evens), odds, 0): Fraction(1)})

    @classmethod
    def from_factors(cls, sig: Signature, coeff: Scalar, factors: Iterable[Variable], hbar: int = 0):
        """Ordered product ``coeff * hbar^k * f_1 f_2 ...`` with Koszul signs applied."""
        evens = [0] * (2 * sig.n)
        odds = []
        for v in factors:
            v.check(sig)
            if v.is_odd:
                odds.append(v.odd_key())
            else:
                evens[v.even_slot(sig)] += 1
        sign, odds_sorted = sort_odds(odds)
        if not sign:
            return cls.zero(sig)
        return cls(sig, {Monomial(tuple(evens), odds_sorted, hbar): sign * Fraction(coeff)})

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def parities(self):
        return {m.parity for m in self.terms}

    def is_pure(self) -> bool:
        return len(self.parities()) <= 1

    @property
    def parity(self) -> int:
        """Parity of a pure element (zero counts as even)."""
        ps = self.parities()
        if len(ps) > 1:
            raise ParityError("element has mixed parity")
        return ps.pop() if ps else 0

    def parity_parts(self):
        """Split into ``(even part, odd part)``."""
        ev = {m: c for m, c in self.terms.items() if not m.parity}
        od = {m: c for m, c in self.terms.items() if m.parity}
        return SuperPolynomial._raw(self.sig, ev), SuperPolynomial._raw(self.sig, od)

    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=0)

    def hbar_order(self) -> int:
        return max((m.hbar for m in self.terms), default=0)

    def hbar_coefficient(self, k: int) -> "SuperPolynomial":
        """The coefficient of hbar^k, as an hbar-free element."""
        return SuperPolynomial._raw(
            self.sig, {m._replace(hbar=0): c for m, c in self.terms.items() if m.hbar == k})

    def divisible_by_hbar(self, k: int = 1) -> bool:
        return all(m.hbar >= k for m in self.terms)

    def divide_by_hbar(self, k: int = 1) -> "SuperPolynomial":
        if not self.divisible_by_hbar(k):
            raise ArithmeticError(f"element is not divisible by hbar^{k}")
        return SuperPolynomial._raw(self.sig, {m._replace(hbar=m.hbar - k): c for m, c in self.terms.items()})

    def constant_term(self) -> Fraction:
        zero = Monomial((0,) * (2 * self.sig.n), (), 0)
        return self.terms.get(zero, Fraction(0))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            if other.sig != self.sig:
                raise SignatureMismatch(f"signatures differ: {self.sig} vs {other.sig}")
            return other
        if isinstance(other, (int, Fraction)):
            return SuperPolynomial.constant(self.sig, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SuperPolynomial._raw(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial._raw(self.sig, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "SuperPolynomial":
        c = Fraction(c)
        if not c:
            return SuperPolynomial.zero(self.sig)
        return SuperPolynomial._raw(self.sig, {m: c * v for m, v in self.terms.items()})

    def times_hbar(self, k: int = 1) -> "SuperPolynomial":
        return SuperPolynomial._raw(self.sig, {m._replace(hbar=m.hbar + k): c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, SuperPolynomial):
            return multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = SuperPolynomial.one(self.sig)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperPolynomial.constant(self.sig, other)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .expression import format_expression

        return f"SuperPolynomial({format_expression(self)!r}, sig={self.sig})"

    def __str__(self):
        from .expression import format_expression

        return format_expression(self)


def _check_same(f: SuperPolynomial, g: SuperPolynomial) -> None:
    if f.sig != g.sig:
        raise SignatureMismatch(f"signatures differ: {f.sig} vs {g.sig}")


def multiply(f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
    """Supercommutative product with Koszul signs."""
    _check_same(f, g)
    out: Dict[Monomial, Fraction] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            sign, m = mul_monomials(m1, m2)
            if not sign:
                continue
            v = out.get(m, 0) + sign * c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return SuperPolynomial._raw(f.sig, out)


def derive_monomial(m: Monomial, v: Variable, sig: Signature):
    """Left derivative of a basis monomial: ``(coefficient, monomial)`` or ``(0, None)``."""
    if v.is_odd:
        key = v.odd_key()
        try:
            pos = m.odds.index(key)
        except ValueError:
            return 0, None
        odds = m.odds[:pos] + m.odds[pos + 1:]
        return (-1 if pos & 1 else 1), Monomial(m.evens, odds, m.hbar)
    slot = v.even_slot(sig)
    e = m.evens[slot]
    if not e:
        return 0, None
    evens = m.evens[:slot] + (e - 1,) + m.evens[slot + 1:]
    return e, Monomial(evens, m.odds, m.hbar)


def partial_derivative(f: SuperPolynomial, v: Variable) -> SuperPolynomial:
    """d f / d v; odd variables use the left derivative."""
    out: Dict[Monomial, Fraction] = {}
    for m, c in f.terms.items():
        k, dm = derive_monomial(m, v, f.sig)
        if k:
            out[dm] = out.get(dm, 0) + k * c
    return SuperPolynomial(f.sig, out)


def substitute_linear(f: SuperPolynomial, images: Mapping[Variable, SuperPolynomial]) -> SuperPolynomial:
    """Apply the algebra endomorphism sending each listed variable to its image.

    Unlisted variables are fixed.  Images must have the parity of their source;
    hbar cannot be substituted.
    """
    sig = f.sig
    for v, img in images.items():
        _check_same(f, img)
        if not img.is_pure() or (img and img.parity != v.parity):
            raise ParityError(f"image of {v} does not have parity {v.parity}")
    evars = [Variable("p", i) for i in range(1, sig.n + 1)] + [Variable("q", i) for i in range(1, sig.n + 1)]
    one = SuperPolynomial.one(sig)
    power_cache: Dict[Tuple[Variable, int], SuperPolynomial] = {}

    def image(v: Variable) -> SuperPolynomial:
        return images[v] if v in images else SuperPolynomial.var(sig, v)

    def power(v: Variable, k: int) -> SuperPolynomial:
        key = (v, k)
        if key not in power_cache:
            power_cache[key] = one if k == 0 else multiply(power(v, k - 1), image(v))
        return power_cache[key]

    result = SuperPolynomial.zero(sig)
    for m, c in f.terms.items():
        term = SuperPolynomial.constant(sig, c, m.hbar)
        for v, e in zip(evars, m.evens):
            if e:
                term = multiply(term, power(v, e))
        for kind, idx in m.odds:
            v = Variable("t" if kind == THETA else "x", idx)
            term = multiply(term, image(v))
        result = result + term
    return result


@dataclass(frozen=True)
class TruncationPolicy:
    """Keep terms of total degree <= ``max_degree`` and hbar power <= ``max_hbar``."""

    max_degree: Optional[int] = None
    max_hbar: Optional[int] = None

    def keeps(self, m: Monomial) -> bool:
        if self.max_degree is not None and m.degree > self.max_degree:
            return False
        if self.max_hbar is not None and m.hbar > self.max_hbar:
            return False
        return True


def truncate(f: SuperPolynomial, policy: Optional[TruncationPolicy]) -> SuperPolynomial:
    if policy is None:
        return f
    return SuperPolynomial._raw(f.sig, {m: c for m, c in f.terms.items() if policy.keeps(m)})
