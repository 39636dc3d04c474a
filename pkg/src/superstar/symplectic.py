"""Block supermatrices and the supergroup Sp(2n|a,b).

A :class:`SuperMatrix` acts on the coordinate vector (p, q, theta).  Its
entries are super-polynomials in the auxiliary Grassmann parameters ``x<i>``
only; the A and D blocks are even, the B and C blocks odd.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Union

from .graded import ParityError, Signature, SuperPolynomial, Variable, multiply, substitute_linear
from .poisson import PoissonContext

__all__ = [
    "SuperMatrix",
    "NotAMember",
    "super_transpose",
    "is_sp_member",
    "is_sp_lie_member",
    "act",
    "lie_action",
]

Entry = Union[int, Fraction, SuperPolynomial]


class NotAMember(ValueError):
    pass


def _coerce(sig: Signature, x: Entry) -> SuperPolynomial:
    if isinstance(x, SuperPolynomial):
        if x.sig != sig:
            raise ValueError(f"matrix entry lives in {x.sig}, expected {sig}")
        return x
    return SuperPolynomial.constant(sig, Fraction(x))


def _zeros(sig, rows, cols):
    z = SuperPolynomial.zero(sig)
    return [[z] * cols for _ in range(rows)]


@dataclass(frozen=True)
class SuperMatrix:
    sig: Signature
    rows: tuple  # tuple of tuples of SuperPolynomial, (2n+r) square

    @classmethod
    def from_blocks(cls, sig: Signature, A=None, B=None, C=None, D=None) -> "SuperMatrix":
        n2, r = 2 * sig.n, sig.r
        A = A if A is not None else _zeros(sig, n2, n2)
        B = B if B is not None else _zeros(sig, n2, r)
        C = C if C is not None else _zeros(sig, r, n2)
        D = D if D is not None else _zeros(sig, r, r)
        for name, blk, shape in (("A", A, (n2, n2)), ("B", B, (n2, r)), ("C", C, (r, n2)), ("D", D, (r, r))):
            if len(blk) != shape[0] or any(len(row) != shape[1] for row in blk):
                raise ValueError(f"block {name} must be {shape[0]}x{shape[1]}")
        rows = []
        for i in range(n2):
            rows.append(tuple(_coerce(sig, x) for x in list(A[i]) + list(B[i])))
        for i in range(r):
            rows.append(tuple(_coerce(sig, x) for x in list(C[i]) + list(D[i])))
        m = cls(sig, tuple(rows))
        m.check_parity()
        return m

    @classmethod
    def from_rows(cls, sig: Signature, rows: Sequence[Sequence[Entry]]) -> "SuperMatrix":
        size = 2 * sig.n + sig.r
        if len(rows) != size or any(len(row) != size for row in rows):
            raise ValueError(f"matrix must be {size}x{size} for signature {sig}")
        m = cls(sig, tuple(tuple(_coerce(sig, x) for x in row) for row in rows))
        m.check_parity()
        return m

    @classmethod
    def identity(cls, sig: Signature) -> "SuperMatrix":
        size = 2 * sig.n + sig.r
        return cls.from_rows(sig, [[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def zero(cls, sig: Signature) -> "SuperMatrix":
        size = 2 * sig.n + sig.r
        return cls.from_rows(sig, [[0] * size for _ in range(size)])

    @property
    def size(self) -> int:
        return len(self.rows)

    def _is_odd_slot(self, i, j) -> bool:
        n2 = 2 * self.sig.n
        return (i < n2) != (j < n2)

    def check_parity(self) -> None:
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if any(m.coordinate_degree or m.hbar for m in x.terms):
                    raise ValueError(f"entry ({i},{j}) must only involve auxiliary parameters")
                want = 1 if self._is_odd_slot(i, j) else 0
                if x and (not x.is_pure() or x.parity != want):
                    raise ParityError(f"entry ({i},{j}) must have parity {want}")

    def blocks(self):
        n2 = 2 * self.sig.n
        A = [list(r[:n2]) for r in self.rows[:n2]]
        B = [list(r[n2:]) for r in self.rows[:n2]]
        C = [list(r[:n2]) for r in self.rows[n2:]]
        D = [list(r[n2:]) for r in self.rows[n2:]]
        return A, B, C, D

    def is_even(self) -> bool:
        """True when all entries are plain rationals (a real point: B = C = 0)."""
        return all(not x or all(not m.odds for m in x.terms) for row in self.rows for x in row)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.sig != other.sig:
            raise ValueError("signature mismatch")
        size = self.size
        zero = SuperPolynomial.zero(self.sig)
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                acc = zero
                for k in range(size):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + multiply(a, b)
                row.append(acc)
            out.append(tuple(row))
        return SuperMatrix(self.sig, tuple(out))

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        return SuperMatrix(self.sig, tuple(tuple(a + b for a, b in zip(r1, r2))
                                           for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "SuperMatrix":
        return SuperMatrix(self.sig, tuple(tuple(x.scale(c) for x in row) for row in self.rows))

    def body(self) -> List[List[Fraction]]:
        """Numeric part: constant terms of all entries."""
        return [[x.constant_term() for x in row] for row in self.rows]

    def inverse(self) -> "SuperMatrix":
        """Inverse over the Grassmann ring; the numeric body must be invertible.

        With M = M0 + N (N nilpotent) the inverse is sum_k (-M0^{-1} N)^k M0^{-1},
        which terminates.
        """
        sig = self.sig
        m0 = self.body()
        m0_inv = _numeric_inverse(m0)
        M0i = SuperMatrix(sig, tuple(tuple(SuperPolynomial.constant(sig, x) for x in row) for row in m0_inv))
        N = self - SuperMatrix(sig, tuple(tuple(SuperPolynomial.constant(sig, x) for x in row) for row in m0))
        step = (M0i @ N).scale(-1)
        term = M0i
        total = M0i
        for _ in range(4 * self.size * 64 + 1):
            term = step @ term
            if all(not x for row in term.rows for x in row):
                break
            total = total + term
        else:  # pragma: no cover - nilpotency guarantees termination
            raise RuntimeError("nilpotent series did not terminate")
        return total

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.sig == other.sig and self.rows == other.rows

    def __hash__(self):
        return hash((self.sig, self.rows))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)


def _numeric_inverse(m: List[List[Fraction]]) -> List[List[Fraction]]:
    size = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(m)]
    for col in range(size):
        piv = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("numeric part of the matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def super_transpose(M: SuperMatrix) -> SuperMatrix:
    """[[A, B], [C, D]] -> [[A^T, -C^T], [B^T, D^T]]."""
    M.check_parity()
    A, B, C, D = M.blocks()

    def tr(blk, rows, cols):
        return [[blk[j][i] for j in range(rows)] for i in range(cols)]

    n2, r = 2 * M.sig.n, M.sig.r
    At, Bt, Ct, Dt = tr(A, n2, n2), tr(B, n2, r), tr(C, r, n2), tr(D, r, r)
    return SuperMatrix.from_blocks(M.sig, At, [[-x for x in row] for row in Ct], Bt, Dt)


def _H(ctx: PoissonContext) -> SuperMatrix:
    return SuperMatrix.from_rows(ctx.signature, ctx.H)


def _check_dims(ctx: PoissonContext, M: SuperMatrix) -> None:
    if M.sig != ctx.signature:
        raise ValueError(f"matrix is for signature {M.sig}, context is {ctx.signature}")


def is_sp_member(ctx, M: SuperMatrix) -> bool:
    """M^sT H M == H."""
    ctx = ctx if isinstance(ctx, PoissonContext) else PoissonContext(ctx)
    _check_dims(ctx, M)
    H = _H(ctx)
    return super_transpose(M) @ H @ M == H


def is_sp_lie_member(ctx, X: SuperMatrix) -> bool:
    """X^sT H + H X == 0."""
    ctx = ctx if isinstance(ctx, PoissonContext) else PoissonContext(ctx)
    _check_dims(ctx, X)
    H = _H(ctx)
    return super_transpose(X) @ H + H @ X == SuperMatrix.zero(ctx.signature)


def _images(M: SuperMatrix):
    """Coordinate z_j goes to sum_i z_i M_ij (column j of M)."""
    sig = M.sig
    coords = [SuperPolynomial.var(sig, v) for v in sig.variables()]
    images = {}
    for j, v in enumerate(sig.variables()):
        acc = SuperPolynomial.zero(sig)
        for i, z in enumerate(coords):
            x = M.rows[i][j]
            if x:
                acc = acc + multiply(z, x)
        images[v] = acc
    return images


def act(ctx, M: SuperMatrix, f: SuperPolynomial) -> SuperPolynomial:
    """Linear change of coordinates by a member of Sp(2n|a,b)."""
    pctx = getattr(ctx, "poisson", ctx)
    if not is_sp_member(pctx, M):
        raise NotAMember("matrix does not satisfy M^sT H M = H")
    return substitute_linear(f, _images(M))


def lie_action(X: SuperMatrix):
    """The derivation z_j -> sum_i z_i X_ij induced by a Lie algebra element, as a vector field."""
    from .formal import FormalVectorField

    return FormalVectorField(X.sig, _images(X), parity=0)
