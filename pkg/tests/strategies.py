from fractions import Fraction

from hypothesis import strategies as st

from superstar.graded import Monomial, Signature, SuperPolynomial

SIGNATURES = [Signature(1, 1, 1), Signature(1, 2, 0), Signature(2, 1, 1), Signature(0, 2, 1), Signature(1, 0, 0)]

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


@st.composite
def monomials(draw, sig, max_degree=3, parity=None, hbar=0):
    r = sig.r
    odd = draw(st.lists(st.integers(1, r), unique=True, max_size=min(r, max_degree))) if r else []
    if parity is not None and len(odd) % 2 != parity:
        if odd:
            odd = odd[:-1]
        elif r:
            odd = [draw(st.integers(1, r))]
    room = max(max_degree - len(odd), 0)
    evens = [0] * (2 * sig.n)
    if sig.n:
        for slot in draw(st.lists(st.integers(0, 2 * sig.n - 1), max_size=room)):
            evens[slot] += 1
    return Monomial(tuple(evens), tuple(sorted((0, i) for i in odd)), draw(st.integers(0, hbar)))


@st.composite
def polynomials(draw, sig, max_degree=3, max_terms=4, parity=None, hbar=0):
    ms = draw(st.lists(monomials(sig, max_degree, parity, hbar), max_size=max_terms))
    terms = {}
    for m in ms:
        terms[m] = terms.get(m, 0) + draw(coefficients)
    return SuperPolynomial(sig, terms)


@st.composite
def pure_polynomials(draw, sig, max_degree=3, max_terms=4, hbar=0):
    parity = draw(st.integers(0, 1)) if sig.r else 0
    return draw(polynomials(sig, max_degree, max_terms, parity, hbar))
