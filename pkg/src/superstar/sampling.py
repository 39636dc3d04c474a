"""Random test data: polynomials, pure elements, words and symplectic matrices."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .graded import Monomial, Signature, SuperPolynomial, Variable

__all__ = [
    "random_polynomial",
    "random_pure",
    "random_coefficient",
    "random_word",
    "random_even_member",
    "random_even_lie_member",
    "random_supermatrix",
]


def random_coefficient(rng: random.Random, span: int = 5) -> Fraction:
    c = 0
    while c == 0:
        c = rng.randint(-span, span)
    return Fraction(c, rng.choice((1, 1, 1, 2, 3)))


def random_monomial(rng: random.Random, sig: Signature, degree: int, parity: Optional[int] = None,
                    hbar: int = 0) -> Monomial:
    """A monomial of total degree ``degree`` in p, q, theta (or None if parity is unreachable)."""
    r = sig.r
    max_odd = min(degree, r)
    odd_counts = [k for k in range(max_odd + 1) if parity is None or k % 2 == parity]
    if sig.n == 0:
        odd_counts = [k for k in odd_counts if k == degree]
    if not odd_counts:
        return None
    k = rng.choice(odd_counts)
    odds = tuple(sorted((0, i) for i in rng.sample(range(1, r + 1), k)))
    evens = [0] * (2 * sig.n)
    for _ in range(degree - k):
        evens[rng.randrange(2 * sig.n)] += 1
    return Monomial(tuple(evens), odds, hbar)


def random_polynomial(rng: random.Random, sig: Signature, max_degree: int = 3, terms: int = 3,
                      parity: Optional[int] = None, hbar: int = 0) -> SuperPolynomial:
    """Random element with up to ``terms`` terms of degree <= ``max_degree``.

    With ``parity`` set, every term has that parity.  ``hbar`` allows terms with
    hbar powers up to that bound.
    """
    out = {}
    for _ in range(terms):
        d = rng.randint(0, max_degree)
        m = random_monomial(rng, sig, d, parity, rng.randint(0, hbar))
        if m is None:
            continue
        out[m] = out.get(m, 0) + random_coefficient(rng)
    return SuperPolynomial(sig, out)


def random_pure(rng: random.Random, sig: Signature, max_degree: int = 3, terms: int = 3,
                hbar: int = 0) -> SuperPolynomial:
    parity = rng.randint(0, 1) if sig.r else 0
    return random_polynomial(rng, sig, max_degree, terms, parity, hbar)


def random_word(rng: random.Random, sig: Signature, length: int) -> List[Variable]:
    gens = list(sig.variables())
    if not gens:
        return []
    return [rng.choice(gens) for _ in range(length)]


def _rational_angle(rng: random.Random):
    t = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
    return t


def _identity(size):
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def random_symplectic_block(rng: random.Random, n: int, steps: int = 3):
    """A random rational 2n x 2n matrix with M^T Omega M = Omega."""
    m = _identity(2 * n)
    for _ in range(steps):
        g = _identity(2 * n)
        kind = rng.randrange(3)
        i = rng.randrange(n)
        if kind == 0:
            # shear p_i row picks up q_i: [[1, s], [0, 1]] on the (p_i, q_i) plane
            g[i][n + i] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        elif kind == 1:
            g[n + i][i] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        else:
            # diag(A, A^{-T}) with an elementary A mixing two p's
            if n > 1:
                j = rng.choice([k for k in range(n) if k != i])
                s = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                g[i][j] = s
                g[n + j][n + i] = -s
            else:
                s = Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2, 3]))
                g[0][0], g[1][1] = s, 1 / s
        m = _matmul(m, g)
    return m


def random_orthogonal_block(rng: random.Random, epsilons, steps: int = 3):
    """A random rational D with D^T G D = G, G = diag(epsilons)."""
    r = len(epsilons)
    m = _identity(r)
    for _ in range(steps):
        g = _identity(r)
        if r == 0:
            break
        if r == 1 or rng.random() < 0.2:
            i = rng.randrange(r)
            g[i][i] = Fraction(-1)
        else:
            i, j = rng.sample(range(r), 2)
            t = _rational_angle(rng)
            if epsilons[i] == epsilons[j]:
                c, s = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
                g[i][i], g[i][j], g[j][i], g[j][j] = c, -s, s, c
            else:
                if abs(t) == 1:
                    t = Fraction(1, 2)
                c, s = (1 + t * t) / (1 - t * t), 2 * t / (1 - t * t)
                g[i][i], g[i][j], g[j][i], g[j][j] = c, s, s, c
        m = _matmul(m, g)
    return m


def random_even_member(rng: random.Random, sig: Signature):
    """A random block-diagonal rational element of Sp(2n|a,b)."""
    from .symplectic import SuperMatrix

    A = random_symplectic_block(rng, sig.n) if sig.n else []
    D = random_orthogonal_block(rng, sig.epsilons) if sig.r else []
    return SuperMatrix.from_blocks(sig, A=A or None, D=D or None) if (A or D) else SuperMatrix.identity(sig)


def random_even_lie_member(rng: random.Random, sig: Signature):
    """A random block-diagonal rational element of the Lie superalgebra."""
    from .symplectic import SuperMatrix

    n, r = sig.n, sig.r
    rand = lambda: Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    # Omega S with S symmetric is Hamiltonian
    S = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(2 * n):
        for j in range(i, 2 * n):
            S[i][j] = S[j][i] = rand()
    omega = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        omega[i][n + i], omega[n + i][i] = Fraction(1), Fraction(-1)
    A = _matmul(omega, S) if n else None
    # G K with K antisymmetric satisfies D^T G + G D = 0
    D = None
    if r:
        K = [[Fraction(0)] * r for _ in range(r)]
        for i in range(r):
            for j in range(i + 1, r):
                K[i][j] = rand()
                K[j][i] = -K[i][j]
        D = [[sig.epsilons[i] * K[i][j] for j in range(r)] for i in range(r)]
    return SuperMatrix.from_blocks(sig, A=A, D=D)


def random_supermatrix(rng: random.Random, sig: Signature, aux: int = 3):
    """A random parity-disciplined matrix with xi-valued odd blocks."""
    from .symplectic import SuperMatrix

    n2, r = 2 * sig.n, sig.r
    size = n2 + r
    xi = [SuperPolynomial.var(sig, "x", k) for k in range(1, aux + 1)]
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            odd = (i < n2) != (j < n2)
            if odd:
                e = SuperPolynomial.zero(sig)
                for x in xi:
                    if rng.random() < 0.5:
                        e = e + x.scale(rng.randint(-2, 2))
            else:
                e = SuperPolynomial.constant(sig, Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
                if aux >= 2 and rng.random() < 0.3:
                    e = e + (xi[0] * xi[1]).scale(rng.randint(-2, 2))
            row.append(e)
        rows.append(row)
    return SuperMatrix.from_rows(sig, rows)
