"""Irreducible sl(2)-modules, tensor products and the canonical embeddings.

Weights here are plain non-negative integers (the highest weight k of the
(k+1)-dimensional irreducible V(k)); only the recoupling layer speaks in
twice-values.  Two basis conventions coexist and every representation carries
its tag:

* PlainF       basis F^r e, so E acts by r(k+1-r) on the superdiagonal and
               F by 1 on the subdiagonal.  All tensor/embedding coefficient
               formulas live in these coordinates.
* DividedPower basis F^r e / r!, so E has superdiagonal (k, ..., 2, 1) and
               F has subdiagonal (1, 2, ..., k).  All block-matrix module
               realizations live in these coordinates.

Conjugating PlainF matrices by diag(0!, 1!, ..., k!) gives the DividedPower
matrices; mixing conventions in one operation is an error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import QMatrix, Vector, binomial, commutator, factorial, matrix_rank
from .wigner import triangle

PLAIN_F = "PlainF"
DIVIDED_POWER = "DividedPower"


@dataclass(frozen=True)
class Sl2Rep:
    """Matrices of h, e, f on a weight basis (h diagonal with integers)."""

    dim: int
    h: QMatrix
    e: QMatrix
    f: QMatrix
    convention: str = DIVIDED_POWER

    def validate(self) -> None:
        for name, mat in (("h", self.h), ("e", self.e), ("f", self.f)):
            if mat.rows != self.dim or mat.cols != self.dim:
                raise ValueError(f"{name} is not {self.dim}x{self.dim}")
        for i in range(self.dim):
            for j in range(self.dim):
                x = self.h.entry(i, j)
                if i != j and x != 0:
                    raise ValueError("h is not diagonal")
                if i == j and x.denominator != 1:
                    raise ValueError("h has a non-integer weight")
        if commutator(self.h, self.e) != 2 * self.e:
            raise ValueError("[h,e] != 2e")
        if commutator(self.h, self.f) != -2 * self.f:
            raise ValueError("[h,f] != -2f")
        if commutator(self.e, self.f) != self.h:
            raise ValueError("[e,f] != h")

    def weights(self) -> list[int]:
        return [int(self.h.entry(i, i)) for i in range(self.dim)]


def irrep(k: int, convention: str = DIVIDED_POWER) -> Sl2Rep:
    """The irreducible module V(k) of dimension k+1 in the given convention."""
    if k < 0:
        raise ValueError("highest weight must be non-negative")
    if convention not in (PLAIN_F, DIVIDED_POWER):
        raise ValueError(f"unknown convention {convention!r}")
    n = k + 1
    h = QMatrix.diagonal([k - 2 * r for r in range(n)])
    e_rows = [[0] * n for _ in range(n)]
    f_rows = [[0] * n for _ in range(n)]
    for r in range(1, n):
        if convention == PLAIN_F:
            e_rows[r - 1][r] = r * (k + 1 - r)
            f_rows[r][r - 1] = 1
        else:
            e_rows[r - 1][r] = k + 1 - r
            f_rows[r][r - 1] = r
    return Sl2Rep(n, h, QMatrix.from_rows(e_rows), QMatrix.from_rows(f_rows), convention)


def conversion_diagonal(k: int) -> QMatrix:
    """diag(0!, 1!, ..., k!), conjugation from PlainF to DividedPower."""
    return QMatrix.diagonal([factorial(r) for r in range(k + 1)])


def tensor(a: Sl2Rep, b: Sl2Rep) -> Sl2Rep:
    """Tensor product on the lexicographic (left index major) product basis."""
    if a.convention != b.convention:
        raise ValueError("tensor factors use different basis conventions")
    da, db = a.dim, b.dim
    n = da * db
    ha, hb = a.weights(), b.weights()
    h = QMatrix.diagonal([ha[i] + hb[j] for i in range(da) for j in range(db)])

    def kron_sum(ma: QMatrix, mb: QMatrix) -> QMatrix:
        fa, fb = ma.to_fractions(), mb.to_fractions()
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(da):
            for j in range(db):
                r = i * db + j
                for i2 in range(da):
                    if fa[i2][i]:
                        rows[i2 * db + j][r] += fa[i2][i]
                for j2 in range(db):
                    if fb[j2][j]:
                        rows[i * db + j2][r] += fb[j2][j]
        return QMatrix.from_rows(rows)

    return Sl2Rep(n, h, kron_sum(a.e, b.e), kron_sum(a.f, b.f), a.convention)


@dataclass
class TensorVector:
    """Vector in V(a) tensor V(b), PlainF coordinates indexed by (r1, r2)."""

    left_dim: int
    right_dim: int
    coeffs: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def copy(self) -> "TensorVector":
        return TensorVector(self.left_dim, self.right_dim, dict(self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs.values())

    def apply_f(self) -> "TensorVector":
        """Leibniz action of F in PlainF coordinates (F F^r e = F^{r+1} e)."""
        out: dict[tuple[int, int], Fraction] = {}
        for (r1, r2), c in self.coeffs.items():
            if c == 0:
                continue
            if r1 + 1 < self.left_dim:
                key = (r1 + 1, r2)
                out[key] = out.get(key, Fraction(0)) + c
            if r2 + 1 < self.right_dim:
                key = (r1, r2 + 1)
                out[key] = out.get(key, Fraction(0)) + c
        return TensorVector(self.left_dim, self.right_dim, out)

    def apply_e(self) -> "TensorVector":
        """Leibniz action of E (E F^r e_k = r(k+1-r) F^{r-1} e_k)."""
        ka, kb = self.left_dim - 1, self.right_dim - 1
        out: dict[tuple[int, int], Fraction] = {}
        for (r1, r2), c in self.coeffs.items():
            if c == 0:
                continue
            if r1 > 0:
                key = (r1 - 1, r2)
                out[key] = out.get(key, Fraction(0)) + c * r1 * (ka + 1 - r1)
            if r2 > 0:
                key = (r1, r2 - 1)
                out[key] = out.get(key, Fraction(0)) + c * r2 * (kb + 1 - r2)
        return TensorVector(self.left_dim, self.right_dim, out)

    def weight(self) -> int:
        """Common h-eigenvalue of the support; error if not homogeneous."""
        ka, kb = self.left_dim - 1, self.right_dim - 1
        ws = {ka - 2 * r1 + kb - 2 * r2 for (r1, r2), c in self.coeffs.items() if c}
        if len(ws) != 1:
            raise ValueError("vector is not a weight vector")
        return ws.pop()

    def scaled(self, s) -> "TensorVector":
        s = Fraction(s)
        return TensorVector(
            self.left_dim, self.right_dim, {k: c * s for k, c in self.coeffs.items()}
        )

    def to_vector(self) -> Vector:
        flat = [Fraction(0)] * (self.left_dim * self.right_dim)
        for (r1, r2), c in self.coeffs.items():
            flat[r1 * self.right_dim + r2] = c
        return tuple(flat)


def iota(k: int, a: int, b: int) -> TensorVector:
    """Highest weight vector of weight k inside V(a) tensor V(b).

    Coefficients in PlainF coordinates:
        sum_r (-1)^r  C(x, r) / C(x + k, a - r)  F^r e_a  tensor  F^{x-r} e_b
    with x = (a + b - k)/2.  Unique up to scale; this fixes the scale used by
    every composite map in the package.
    """
    if not triangle(a, b, k):
        raise ValueError(f"triangle condition fails for ({a}, {b}, {k})")
    x = (a + b - k) // 2
    coeffs = {
        (r, x - r): Fraction((-1) ** r * binomial(x, r), binomial(x + k, a - r))
        for r in range(x + 1)
    }
    return TensorVector(a + 1, b + 1, coeffs)


def dual_iso(k: int) -> QMatrix:
    """Matrix of the isomorphism V(k) -> V(k)*, F^r e |-> (-1)^r (F^{k-r} e)*.

    Rows are indexed by the dual basis (F^s e)*, columns by F^r e, both in
    PlainF order.
    """
    rows = [[0] * (k + 1) for _ in range(k + 1)]
    for r in range(k + 1):
        rows[k - r][r] = (-1) ** r
    return QMatrix.from_rows(rows)


def hom_embedding(m: int, b: int, a: int, convention: str = DIVIDED_POWER) -> list[QMatrix]:
    """Equivariant map V(m) -> Hom(V(b), V(a)) as m+1 explicit matrices.

    Image of the weight basis v_0, ..., v_m (v_i = F^i v_0 / i!), realized by
    composing the embedding V(m) -> V(a) tensor V(b) with the contraction
    V(b) -> V(b)* from dual_iso.  The returned matrices satisfy
        [rep_a(x) , M_i] - M_i shifted = image of x . v_i
    for every generator x, in the requested convention.
    """
    if not triangle(a, b, m):
        raise ValueError(f"triangle condition fails for ({a}, {b}, {m})")
    top = iota(m, a, b)
    j_signs = [(-1) ** r2 for r2 in range(b + 1)]
    mats: list[QMatrix] = []
    w = top
    for i in range(m + 1):
        rows = [[Fraction(0)] * (b + 1) for _ in range(a + 1)]
        inv_fact = Fraction(1, factorial(i))
        for (r1, r2), c in w.coeffs.items():
            if c:
                rows[r1][b - r2] += c * j_signs[r2] * inv_fact
        mats.append(QMatrix.from_rows(rows))
        if i < m:
            w = w.apply_f()
    if convention == DIVIDED_POWER:
        da = conversion_diagonal(a)
        db_inv = QMatrix.diagonal([Fraction(1, factorial(r)) for r in range(b + 1)])
        mats = [da * mat * db_inv for mat in mats]
    elif convention != PLAIN_F:
        raise ValueError(f"unknown convention {convention!r}")
    return mats


def decompose(rep: Sl2Rep) -> dict[int, int]:
    """Multiplicities of the irreducible constituents, keyed by highest weight.

    Computed from highest weight vectors: the multiplicity of V(k) is the
    dimension of the kernel of e restricted to the weight-k eigenspace of h.
    """
    for i in range(rep.dim):
        for j in range(rep.dim):
            if i != j and rep.h.entry(i, j) != 0:
                raise ValueError("decomposition needs h in diagonal form")
    ws = rep.weights()
    e_fr = rep.e.to_fractions()
    out: dict[int, int] = {}
    for k in sorted({w for w in ws if w >= 0}, reverse=True):
        cols = [i for i, w in enumerate(ws) if w == k]
        sub = QMatrix.from_rows([[e_fr[i][j] for j in cols] for i in range(rep.dim)])
        mult = len(cols) - matrix_rank(sub)
        if mult:
            out[k] = mult
    if sum((k + 1) * n for k, n in out.items()) != rep.dim:
        raise ValueError("weight structure is inconsistent with a semisimple module")
    return out


def symmetric_power_components(m: int, i: int) -> dict[int, int]:
    """Irreducible constituents of the i-th symmetric power of V(m)."""
    counts: dict[int, int] = {}
    for combo in itertools.combinations_with_replacement(range(m + 1), i):
        w = i * m - 2 * sum(combo)
        counts[w] = counts.get(w, 0) + 1
    out = {}
    for k in sorted((w for w in counts if w >= 0), reverse=True):
        mult = counts.get(k, 0) - counts.get(k + 2, 0)
        if mult:
            out[k] = mult
    return out


def exterior_square_components(m: int) -> set[int]:
    """Highest weights occurring in the exterior square of V(m).

    Closed form {k : 0 <= k <= 2m-2, k = 2m-2 mod 4}, cross-checked against
    the explicit antisymmetric subspace of V(m) tensor V(m).
    """
    closed = {k for k in range(0, max(2 * m - 1, 0)) if (2 * m - 2 - k) % 4 == 0}
    counts: dict[int, int] = {}
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            w = 2 * m - 2 * i - 2 * j
            counts[w] = counts.get(w, 0) + 1
    explicit = set()
    for k in (w for w in counts if w >= 0):
        if counts.get(k, 0) - counts.get(k + 2, 0) > 0:
            explicit.add(k)
    if explicit != closed:
        raise AssertionError(f"exterior square mismatch for m={m}: {explicit} vs {closed}")
    return closed


@dataclass(frozen=True)
class InvariantForm:
    matrix: QMatrix
    symmetric: bool


def invariant_form(m: int) -> InvariantForm:
    """The (unique up to scale) invariant bilinear form on V(m), PlainF basis.

    Built by pushing the invariant line of V(m) tensor V(m) through dual_iso
    on both slots.  The form is symmetric exactly when m is even, skew
    otherwise.
    """
    inv = iota(0, m, m)
    rows = [[Fraction(0)] * (m + 1) for _ in range(m + 1)]
    for (r1, r2), c in inv.coeffs.items():
        # j(F^r e) = (-1)^r (F^{m-r} e)*, so the (r1, r2) term evaluates the
        # pair (F^{m-r1} e, F^{m-r2} e).
        rows[m - r1][m - r2] += c * (-1) ** (r1 + r2)
    mat = QMatrix.from_rows(rows)
    symmetric = mat == mat.transpose()
    skew = mat == -mat.transpose()
    if symmetric == skew:
        raise AssertionError("invariant form is neither symmetric nor skew")
    return InvariantForm(mat, symmetric)
