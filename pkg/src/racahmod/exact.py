"""Exact arithmetic building blocks: big rationals, quadratic surds and dense
rational linear algebra.

Every value in the package funnels through this module, so no floating point
ever enters a computation.  All types are immutable after construction and all
functions are pure, which makes everything safe to use from parallel workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

# The arbitrary-precision rational carrier.  fractions.Fraction already
# maintains the invariants we need (positive reduced denominator, canonical
# equality), so it is used directly rather than reimplemented.
Rational = Fraction

Vector = tuple[Fraction, ...]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial is undefined for negative argument {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k), with C(n, k) = 0 whenever k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def rat_from_str(text: str) -> Fraction:
    """Parse the exact serialization "p/q" (or plain "p")."""
    return Fraction(text.strip())


def rat_to_str(value: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = s * t**2 with s squarefree; return (s, t).

    Uses trial division, which is fast for the integers arising here: they are
    built from factorials of desk-scale integers and therefore only contain
    small prime factors.
    """
    if n <= 0:
        raise ValueError(f"squarefree_split needs a positive integer, got {n}")
    s, t = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e & 1:
                s *= p
            t *= p ** (e >> 1)
        p += 1 if p == 2 else 2
    # whatever is left is prime (or 1), hence squarefree
    return s * n, t


@dataclass(frozen=True)
class SqrtRational:
    """The exact number coeff * sqrt(radicand).

    radicand is a squarefree positive integer and coeff = 0 forces
    radicand = 1, so two values are equal iff their fields are equal.  The set
    of such numbers is closed under multiplication, which is all the
    recoupling formulas need: every Delta product, Clebsch-Gordan coefficient
    and 6j-symbol is a rational multiple of one square root.
    """

    coeff: Fraction
    radicand: int = 1

    def __post_init__(self):
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.radicand < 1:
            raise ValueError(f"radicand must be positive, got {self.radicand}")
        if self.coeff == 0 and self.radicand != 1:
            object.__setattr__(self, "radicand", 1)

    @staticmethod
    def of(coeff, radicand: int = 1) -> "SqrtRational":
        """Construct from an arbitrary positive radicand, extracting squares."""
        coeff = Fraction(coeff)
        if coeff == 0:
            return SqrtRational(Fraction(0), 1)
        s, t = squarefree_split(radicand)
        return SqrtRational(coeff * t, s)

    @staticmethod
    def sqrt_of(value) -> "SqrtRational":
        """Exact square root of a non-negative rational."""
        value = Fraction(value)
        if value < 0:
            raise ValueError(f"square root of negative rational {value}")
        if value == 0:
            return SqrtRational(Fraction(0), 1)
        # sqrt(p/q) = sqrt(p*q)/q
        s, t = squarefree_split(value.numerator * value.denominator)
        return SqrtRational(Fraction(t, value.denominator), s)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def as_fraction(self) -> Fraction:
        if self.radicand != 1:
            raise ValueError(f"{self} is irrational")
        return self.coeff

    def __mul__(self, other):
        if isinstance(other, SqrtRational):
            # product of coprime squarefree parts stays squarefree
            g = math.gcd(self.radicand, other.radicand)
            return SqrtRational(
                self.coeff * other.coeff * g,
                (self.radicand // g) * (other.radicand // g),
            )
        if isinstance(other, (int, Fraction)):
            return SqrtRational(self.coeff * other, self.radicand if self.coeff * other else 1)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return SqrtRational(-self.coeff, self.radicand)

    def inverse(self) -> "SqrtRational":
        if self.coeff == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/(q*sqrt(s)) = sqrt(s)/(q*s)
        return SqrtRational(Fraction(1) / (self.coeff * self.radicand), self.radicand)

    def __truediv__(self, other):
        if isinstance(other, SqrtRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return SqrtRational(self.coeff / other, self.radicand)
        return NotImplemented

    def __str__(self) -> str:
        if self.radicand == 1:
            return rat_to_str(self.coeff)
        return f"{rat_to_str(self.coeff)}*sqrt({self.radicand})"

    @staticmethod
    def from_str(text: str) -> "SqrtRational":
        text = text.strip()
        if "*sqrt(" in text:
            coeff_part, rad_part = text.split("*sqrt(")
            return SqrtRational(Fraction(coeff_part), int(rad_part.rstrip(")")))
        return SqrtRational(Fraction(text), 1)


def sqrtrat_mul(x: SqrtRational, y: SqrtRational) -> SqrtRational:
    return x * y


def sqrtrat_sum_is_zero(terms: Iterable[SqrtRational]) -> bool:
    """Whether a finite sum of SqrtRational values is exactly zero.

    Square roots of distinct squarefree integers are linearly independent over
    the rationals, so the sum vanishes iff the coefficients cancel radicand by
    radicand.  Used to verify three-term recurrences and bilinear identities
    without a general algebraic-number field.
    """
    acc: dict[int, Fraction] = {}
    for t in terms:
        acc[t.radicand] = acc.get(t.radicand, Fraction(0)) + t.coeff
    return all(c == 0 for c in acc.values())


def _reduce_num_den(num, den):
    g = den
    for row in num:
        for x in row:
            g = math.gcd(g, x)
            if g == 1:
                return num, den
    if g > 1:
        num = tuple(tuple(x // g for x in row) for row in num)
        den //= g
    return num, den


class QMatrix:
    """Dense matrix of exact rationals.

    Stored as an integer matrix over one positive common denominator so that
    matrix products run in pure bigint arithmetic; entries are exposed as
    Fractions.  Instances are immutable.
    """

    __slots__ = ("rows", "cols", "_num", "_den")

    def __init__(self, rows: int, cols: int, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            num = tuple(tuple(-int(x) for x in row) for row in num)
        else:
            num = tuple(tuple(int(x) for x in row) for row in num)
        if len(num) != rows or any(len(r) != cols for r in num):
            raise ValueError("entry grid does not match declared shape")
        num, den = _reduce_num_den(num, den)
        self.rows = rows
        self.cols = cols
        self._num = num
        self._den = den

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_rows(data: Sequence[Sequence]) -> "QMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = [[Fraction(x) for x in row] for row in data]
        den = 1
        for row in entries:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        num = tuple(
            tuple(x.numerator * (den // x.denominator) for x in row) for row in entries
        )
        return QMatrix(rows, cols, num, den)

    @staticmethod
    def zero(rows: int, cols: int) -> "QMatrix":
        return QMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)), 1)

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 1)

    @staticmethod
    def diagonal(entries: Sequence) -> "QMatrix":
        fracs = [Fraction(x) for x in entries]
        n = len(fracs)
        return QMatrix.from_rows(
            [[fracs[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    # -- access ------------------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self._num[i][j], self._den)

    def to_fractions(self) -> tuple[Vector, ...]:
        d = self._den
        return tuple(tuple(Fraction(x, d) for x in row) for row in self._num)

    def row(self, i: int) -> Vector:
        d = self._den
        return tuple(Fraction(x, d) for x in self._num[i])

    def column(self, j: int) -> Vector:
        d = self._den
        return tuple(Fraction(row[j], d) for row in self._num)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._num for x in row)

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._den == other._den
            and self._num == other._num
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._den, self._num))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_shape(other, same=True)
        da, db = self._den, other._den
        num = tuple(
            tuple(x * db + y * da for x, y in zip(ra, rb))
            for ra, rb in zip(self._num, other._num)
        )
        return QMatrix(self.rows, self.cols, num, da * db)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def __neg__(self) -> "QMatrix":
        return QMatrix(
            self.rows, self.cols, tuple(tuple(-x for x in row) for row in self._num), self._den
        )

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError(
                    f"shape mismatch: ({self.rows}x{self.cols}) * ({other.rows}x{other.cols})"
                )
            bt = list(zip(*other._num))
            num = tuple(
                tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in self._num
            )
            return QMatrix(self.rows, other.cols, num, self._den * other._den)
        if isinstance(other, (int, Fraction)):
            s = Fraction(other)
            num = tuple(tuple(x * s.numerator for x in row) for row in self._num)
            return QMatrix(self.rows, self.cols, num, self._den * s.denominator)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, tuple(zip(*self._num)), self._den)

    def apply(self, vec: Sequence) -> Vector:
        """Matrix-vector product, vector given and returned as Fractions."""
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        fr = [Fraction(x) for x in vec]
        return tuple(
            sum((Fraction(a, self._den) * x for a, x in zip(row, fr)), Fraction(0))
            for row in self._num
        )

    def _check_shape(self, other: "QMatrix", same: bool):
        if same and (self.rows != other.rows or self.cols != other.cols):
            raise ValueError(
                f"shape mismatch: ({self.rows}x{self.cols}) vs ({other.rows}x{other.cols})"
            )

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"


def commutator(a: QMatrix, b: QMatrix) -> QMatrix:
    return a * b - b * a


def block_diagonal(blocks: Sequence[QMatrix]) -> QMatrix:
    dims = [(b.rows, b.cols) for b in blocks]
    rows = sum(r for r, _ in dims)
    cols = sum(c for _, c in dims)
    grid = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for blk in blocks:
        fr = blk.to_fractions()
        for i in range(blk.rows):
            for j in range(blk.cols):
                grid[r0 + i][c0 + j] = fr[i][j]
        r0 += blk.rows
        c0 += blk.cols
    return QMatrix.from_rows(grid) if rows else QMatrix.zero(0, 0)


def assemble_blocks(
    row_dims: Sequence[int],
    col_dims: Sequence[int],
    blocks: dict[tuple[int, int], QMatrix],
) -> QMatrix:
    """Assemble a block-partitioned matrix; unspecified blocks are zero."""
    rows, cols = sum(row_dims), sum(col_dims)
    grid = [[Fraction(0)] * cols for _ in range(rows)]
    row_off = [0]
    for d in row_dims:
        row_off.append(row_off[-1] + d)
    col_off = [0]
    for d in col_dims:
        col_off.append(col_off[-1] + d)
    for (bi, bj), blk in blocks.items():
        if blk.rows != row_dims[bi] or blk.cols != col_dims[bj]:
            raise ValueError(f"block ({bi},{bj}) has shape {blk.rows}x{blk.cols}")
        fr = blk.to_fractions()
        for i in range(blk.rows):
            for j in range(blk.cols):
                grid[row_off[bi] + i][col_off[bj] + j] = fr[i][j]
    return QMatrix.from_rows(grid)


# -- exact Gaussian elimination ---------------------------------------------


def rref(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with unit pivots.

    Returns the nonzero rows (ordered by pivot column) and the pivot columns.
    Deterministic: leftmost pivot, first nonzero row, pivots normalized to 1.
    """
    work = [[Fraction(x) for x in row] for row in rows if any(row)]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = Fraction(1) / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [row for row in work[:r]], pivots


def matrix_rank(mat: QMatrix) -> int:
    return len(rref(mat.to_fractions())[1])


def kernel(mat: QMatrix) -> list[Vector]:
    """Basis of the right null space, in the canonical free-column form.

    For each non-pivot column f of the reduced echelon form the basis vector
    has a 1 at position f and minus the echelon coefficients at the pivot
    positions; the list is ordered by f, which makes the output reproducible.
    """
    reduced, pivots = rref(mat.to_fractions())
    n = mat.cols
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for f in range(n):
        if f in pivot_set:
            continue
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(tuple(vec))
    return basis


def span_rref(vectors: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Echelonized basis of the span of the given vectors (as rows)."""
    return rref(vectors)


def reduce_vector(
    reduced: Sequence[Sequence[Fraction]], pivots: Sequence[int], vec: Sequence
) -> list[Fraction]:
    """Residual of vec after elimination against an echelonized row set."""
    work = [Fraction(x) for x in vec]
    for row, p in zip(reduced, pivots):
        f = work[p]
        if f != 0:
            work = [x - f * y for x, y in zip(work, row)]
    return work


def in_span(reduced, pivots, vec) -> bool:
    return not any(reduce_vector(reduced, pivots, vec))


def solve_columns(columns: Sequence[Sequence], target: Sequence):
    """Solve sum_j x_j * columns[j] = target exactly; None when inconsistent."""
    n = len(target)
    k = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    reduced, pivots = rref(aug)
    coeffs = [Fraction(0)] * k
    for row, p in zip(reduced, pivots):
        if p == k:  # pivot in the augmented column: inconsistent
            return None
        coeffs[p] = row[k]
    # consistency needs every non-pivot unknown forced only when independent;
    # columns are assumed independent in all call sites, so verify the answer.
    for i in range(n):
        s = sum((coeffs[j] * Fraction(columns[j][i]) for j in range(k)), Fraction(0))
        if s != Fraction(target[i]):
            return None
    return coeffs


def intersect_spans(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[Vector]:
    """Echelonized basis of span(a) intersected with span(b)."""
    a = [tuple(Fraction(x) for x in v) for v in a]
    b = [tuple(Fraction(x) for x in v) for v in b]
    if not a or not b:
        return []
    n = len(a[0])
    if any(len(v) != n for v in a) or any(len(v) != n for v in b):
        raise ValueError("vectors must share one dimension")
    # columns: the a's then the b's; kernel rows give combinations with
    # sum x_i a_i = sum y_j b_j, and the common value spans the intersection.
    stacked = QMatrix.from_rows(
        [[a[j][i] for j in range(len(a))] + [-b[j][i] for j in range(len(b))] for i in range(n)]
    )
    members = []
    for ker in kernel(stacked):
        vec = [Fraction(0)] * n
        for j, x in enumerate(ker[: len(a)]):
            if x:
                for i in range(n):
                    vec[i] += x * a[j][i]
        if any(vec):
            members.append(vec)
    reduced, _ = rref(members)
    return [tuple(row) for row in reduced]
