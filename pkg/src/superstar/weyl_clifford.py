"""Weyl (x) Clifford algebra by generators, relations and normal ordering.

Words in the generators p_i, q_i, theta_i are rewritten into PBW order
(p's, then q's, then thetas ascending) with the rules

    q_i p_i          -> p_i q_i - hbar
    y x  (x < y)     -> (-1)^{|x||y|} x y      for all other pairs
    theta_i theta_i  -> -(hbar/2) eps_i

i.e. [p_i, q_i] = hbar and [theta_i, theta_i] = -hbar eps_i.  The PBW basis is
then re-expressed in the symmetric (Weyl-ordered) basis, whose elements are
identified with the plain monomials of the star-product algebra:

    p^a q^b (PBW) = sum_k k! C(a,k) C(b,k) (hbar/2)^k  Sym(p^{a-k} q^{b-k})

Distinct thetas anticommute on the nose, so the odd part needs no change.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graded import THETA, Monomial, Signature, SignatureMismatch, SuperPolynomial, Variable
from .quantization import star

__all__ = [
    "GeneratorWord",
    "IsoReport",
    "pbw_order",
    "normal_order",
    "rewrite_mul",
    "to_symmetric",
    "from_symmetric",
    "all_words",
    "iso_check",
]

_RANK = {"p": 0, "q": 1, "t": 2}


@dataclass(frozen=True)
class GeneratorWord:
    letters: Tuple[Variable, ...]
    hbar_power: int = 0
    coefficient: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        for v in self.letters:
            if v.kind not in _RANK:
                raise ValueError(f"{v} is not a Weyl/Clifford generator")

    def __str__(self):
        body = "*".join(str(v) for v in self.letters) or "1"
        return body if self.hbar_power == 0 else f"h^{self.hbar_power}*{body}"


def _key(v: Variable):
    return (_RANK[v.kind], v.index)


def _reducible(word: Sequence[Variable]) -> List[int]:
    out = []
    for i in range(len(word) - 1):
        x, y = word[i], word[i + 1]
        if _key(x) > _key(y) or (x == y and x.is_odd):
            out.append(i)
    return out


def _to_monomial(word: Sequence[Variable], sig: Signature, hbar: int) -> Monomial:
    evens = [0] * (2 * sig.n)
    odds = []
    for v in word:
        if v.is_odd:
            odds.append((THETA, v.index))
        else:
            evens[v.even_slot(sig)] += 1
    return Monomial(tuple(evens), tuple(odds), hbar)


def pbw_order(sig: Signature, word, rng: Optional[random.Random] = None) -> SuperPolynomial:
    """Rewrite a word into PBW-ordered monomials.

    The result is returned in PBW coordinates: the monomial ``p^a q^b theta_S``
    stands for the *ordered* product.  ``rng`` picks a random redex at each
    step instead of the leftmost one.
    """
    if not isinstance(word, GeneratorWord):
        word = GeneratorWord(tuple(word))
    for v in word.letters:
        v.check(sig)
    eps = sig.epsilons
    stack = [(word.letters, word.hbar_power, word.coefficient)]
    out: Dict[Monomial, Fraction] = {}
    while stack:
        w, hb, c = stack.pop()
        redexes = _reducible(w)
        if not redexes:
            m = _to_monomial(w, sig, hb)
            out[m] = out.get(m, 0) + c
            continue
        i = rng.choice(redexes) if rng is not None else redexes[0]
        x, y = w[i], w[i + 1]
        rest_l, rest_r = w[:i], w[i + 2:]
        if x == y:
            stack.append((rest_l + rest_r, hb + 1, c * Fraction(-eps[x.index - 1], 2)))
            continue
        sign = -1 if (x.is_odd and y.is_odd) else 1
        stack.append((rest_l + (y, x) + rest_r, hb, sign * c))
        if x.kind == "q" and y.kind == "p" and x.index == y.index:
            stack.append((rest_l + rest_r, hb + 1, -c))
    return SuperPolynomial(sig, out)


def _reorder(f: SuperPolynomial, half: Fraction) -> SuperPolynomial:
    """Apply exp(half * hbar * sum_i d_{p_i} d_{q_i}) via its closed form."""
    n = f.sig.n
    out: Dict[Monomial, Fraction] = {}
    for m, c in f.terms.items():
        # per pair i choose k_i contractions
        choices = [range(min(m.evens[i], m.evens[n + i]) + 1) for i in range(n)]
        for ks in itertools.product(*choices):
            w = c
            evens = list(m.evens)
            for i, k in enumerate(ks):
                a, b = m.evens[i], m.evens[n + i]
                w *= factorial(k) * comb(a, k) * comb(b, k)
                evens[i] -= k
                evens[n + i] -= k
            total = sum(ks)
            w *= half ** total
            key = Monomial(tuple(evens), m.odds, m.hbar + total)
            out[key] = out.get(key, 0) + w
    return SuperPolynomial(f.sig, out)


def to_symmetric(f: SuperPolynomial) -> SuperPolynomial:
    """PBW coordinates -> symmetric (Weyl-ordered) coordinates."""
    return _reorder(f, Fraction(1, 2))


def from_symmetric(f: SuperPolynomial) -> SuperPolynomial:
    """Symmetric coordinates -> PBW coordinates; inverse of :func:`to_symmetric`."""
    return _reorder(f, Fraction(-1, 2))


def normal_order(sig: Signature, word, rng: Optional[random.Random] = None) -> SuperPolynomial:
    """Normal form of a word, as an element in the symmetric basis."""
    return to_symmetric(pbw_order(sig, word, rng))


def _word_of(m: Monomial, sig: Signature) -> Tuple[Variable, ...]:
    letters: List[Variable] = []
    for slot, e in enumerate(m.evens):
        v = Variable("p", slot + 1) if slot < sig.n else Variable("q", slot - sig.n + 1)
        letters += [v] * e
    for kind, idx in m.odds:
        if kind != THETA:
            raise ValueError("auxiliary Grassmann parameters are not algebra generators")
        letters.append(Variable("t", idx))
    return tuple(letters)


def rewrite_mul(x: SuperPolynomial, y: SuperPolynomial) -> SuperPolynomial:
    """Product of two normal forms, by concatenating PBW words and reordering."""
    if x.sig != y.sig:
        raise SignatureMismatch(f"signatures differ: {x.sig} vs {y.sig}")
    sig = x.sig
    xs, ys = from_symmetric(x), from_symmetric(y)
    total = SuperPolynomial.zero(sig)
    for m1, c1 in xs.terms.items():
        w1 = _word_of(m1, sig)
        for m2, c2 in ys.terms.items():
            word = GeneratorWord(w1 + _word_of(m2, sig), m1.hbar + m2.hbar, c1 * c2)
            total = total + pbw_order(sig, word)
    return to_symmetric(total)


def all_words(sig: Signature, max_length: int) -> Iterable[Tuple[Variable, ...]]:
    gens = sig.variables()
    for k in range(max_length + 1):
        yield from itertools.product(gens, repeat=k)


def iterated_star(sig: Signature, word: Sequence[Variable]) -> SuperPolynomial:
    """g_1 * (g_2 * (... * g_k)) in the star-product algebra."""
    out = SuperPolynomial.one(sig)
    for v in reversed(tuple(word)):
        out = star(sig, SuperPolynomial.var(sig, v), out)
    return out


@dataclass
class IsoReport:
    checked: int = 0
    mismatches: List[Tuple[str, SuperPolynomial, SuperPolynomial]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def iso_check(sig: Signature, words: Optional[Iterable[Sequence[Variable]]] = None,
              max_length: int = 6) -> IsoReport:
    """Compare rewriting normal forms with iterated star products, word by word."""
    if words is None:
        words = all_words(sig, max_length)
    report = IsoReport()
    for word in words:
        lhs = normal_order(sig, word)
        rhs = iterated_star(sig, word)
        report.checked += 1
        if lhs != rhs:
            report.mismatches.append((str(GeneratorWord(tuple(word))), lhs, rhs))
    return report
