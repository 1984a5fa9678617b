"""Builders for the uniserial modules of sl(2) semidirect V(m).

The main family Z(ell, b) has socle factors V(ell), V(ell+m), ..., V(ell+bm)
and an explicit block realization: divided-power sl(2) blocks on the diagonal
and scaled shifted-identity blocks on the first superdiagonal for the radical
generators.  Beyond it and its duals there are exceptional uniserial modules
of length 3 (socle factors V(0), V(m), V(c) with c <= 2m, c = 2m mod 4) and a
one-parameter length-4 family (V(0), V(m), V(m), V(0) for m divisible by 4),
plus a polynomial-module construction realizing Z(0, b) inside the b-th
symmetric power of the (m+2)-dimensional module.

Superdiagonal radical blocks are always the primitive integer normalization
of the equivariant maps from sl2.hom_embedding (entries coprime integers,
leading entry positive); that normalization reproduces the explicit block
matrices above verbatim.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import gmod, sl2
from .exact import (
    QMatrix,
    Vector,
    assemble_blocks,
    binomial,
    block_diagonal,
    commutator,
    factorial,
    rref,
    reduce_vector,
)
from .gmod import GRep
from .wigner import triangle


def _primitive_scale(mats: list[QMatrix]) -> Fraction:
    """Positive-leading primitive rescale for a family of rational matrices."""
    g, l = 0, 1
    first = None
    for mat in mats:
        for row in mat.to_fractions():
            for x in row:
                if x:
                    if first is None:
                        first = x
                    g = gcd(g, abs(x.numerator))
                    l = l * x.denominator // gcd(l, x.denominator)
    if first is None:
        return Fraction(1)
    sc = Fraction(l, g)
    return -sc if first * sc < 0 else sc


def radical_blocks(m: int, target: int, source: int) -> list[QMatrix]:
    """Canonical superdiagonal blocks V(m) -> Hom(V(target), V(source)).

    hom_embedding fixes the maps projectively; the primitive normalization
    pins the scale and sign.
    """
    mats = sl2.hom_embedding(m, target, source, sl2.DIVIDED_POWER)
    sc = _primitive_scale(mats)
    return [sc * mat for mat in mats]


# -- the main family -----------------------------------------------------------


def _w_block(a: int, m: int, i: int) -> QMatrix:
    rows = [[0] * (a + m + 1) for _ in range(a + 1)]
    for r in range(a + 1):
        rows[r][m - i + r] = 1
    return QMatrix.from_rows(rows)


def v_block(a: int, m: int, i: int) -> QMatrix:
    """The (a+1) x (a+m+1) radical block (-1)^i C(m,i) times a shifted identity."""
    return ((-1) ** i * binomial(m, i)) * _w_block(a, m, i)


def build_z(ell: int, b: int, m: int) -> GRep:
    """The uniserial module with socle factors V(ell), V(ell+m), ..., V(ell+bm)."""
    if m < 1:
        raise ValueError("the radical weight m must be positive")
    if ell < 0 or b < 0:
        raise ValueError("ell and b must be non-negative")
    dims = [ell + j * m + 1 for j in range(b + 1)]
    irreps = [sl2.irrep(ell + j * m, sl2.DIVIDED_POWER) for j in range(b + 1)]
    h = block_diagonal([r.h for r in irreps])
    e = block_diagonal([r.e for r in irreps])
    f = block_diagonal([r.f for r in irreps])
    v = []
    for i in range(m + 1):
        blocks = {(j, j + 1): v_block(ell + j * m, m, i) for j in range(b)}
        v.append(assemble_blocks(dims, dims, blocks))
    return GRep(
        m=m,
        dim=sum(dims),
        h=h,
        e=e,
        f=f,
        v=tuple(v),
        convention=sl2.DIVIDED_POWER,
        blocks=tuple(dims),
    )


def build_z_dual(ell: int, b: int, m: int) -> GRep:
    """Dual of build_z: socle factors V(ell+bm), ..., V(ell+m), V(ell)."""
    return gmod.dual_rep(build_z(ell, b, m))


# -- exceptional lengths 3 and 4 ------------------------------------------------


def build_exceptional_len3(m: int, c: int) -> GRep:
    """The unique uniserial module with socle factors V(0), V(m), V(c).

    Exists exactly when c <= 2m and c = 2m mod 4.  The block between the two
    outer factors is forced to zero (for c = m that is the canonical
    representative after conjugating the free block away).
    """
    if m < 1:
        raise ValueError("the radical weight m must be positive")
    if c < 0 or c > 2 * m or (2 * m - c) % 4 != 0:
        raise ValueError(f"socle factors [0, {m}, {c}] need c <= 2m and c = 2m mod 4")
    dims = [1, m + 1, c + 1]
    irreps = [sl2.irrep(k, sl2.DIVIDED_POWER) for k in (0, m, c)]
    f12 = radical_blocks(m, m, 0)
    f23 = radical_blocks(m, c, m)
    v = []
    for i in range(m + 1):
        v.append(assemble_blocks(dims, dims, {(0, 1): f12[i], (1, 2): f23[i]}))
    return GRep(
        m=m,
        dim=sum(dims),
        h=block_diagonal([r.h for r in irreps]),
        e=block_diagonal([r.e for r in irreps]),
        f=block_diagonal([r.f for r in irreps]),
        v=tuple(v),
        convention=sl2.DIVIDED_POWER,
        blocks=tuple(dims),
    )


def build_z_family(m: int, z) -> GRep:
    """The one-parameter family with socle factors V(0), V(m), V(m), V(0).

    Valid for m divisible by 4; the member is uniserial for every z, and z
    scales the extra block mapping the top factor into the second one.
    """
    if m < 1 or m % 4 != 0:
        raise ValueError("the one-parameter family needs m = 0 mod 4")
    z = Fraction(z)
    dims = [1, m + 1, m + 1, 1]
    irreps = [sl2.irrep(k, sl2.DIVIDED_POWER) for k in (0, m, m, 0)]
    f12 = radical_blocks(m, m, 0)
    f23 = radical_blocks(m, m, m)
    f34 = radical_blocks(m, 0, m)
    v = []
    for i in range(m + 1):
        blocks = {
            (0, 1): f12[i],
            (1, 2): f23[i],
            (2, 3): f34[i],
            (1, 3): z * f34[i],
        }
        v.append(assemble_blocks(dims, dims, blocks))
    return GRep(
        m=m,
        dim=sum(dims),
        h=block_diagonal([r.h for r in irreps]),
        e=block_diagonal([r.e for r in irreps]),
        f=block_diagonal([r.f for r in irreps]),
        v=tuple(v),
        convention=sl2.DIVIDED_POWER,
        blocks=tuple(dims),
    )


# -- symmetric powers of the (m+2)-dimensional module ---------------------------


@dataclass(frozen=True)
class SymmetricPowerModule:
    """Degree-b polynomial module and the submodule its top monomial generates.

    `big` is the space of degree-b homogeneous polynomials in m+2 variables
    under the derivation action of the (m+2)-dimensional representation;
    `sub` is the submodule generated by x1^b (x1 = the highest weight variable
    of the V(m) block), which realizes the length-(b+1) main-family module
    with socle factors V(0), V(m), ..., V(bm).
    """

    big: GRep
    sub: GRep
    generator_big: Vector
    generator_sub: Vector


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        d = [0] * nvars
        for i in combo:
            d[i] += 1
        out.append(tuple(d))
    return sorted(out, reverse=True)


def _derivation_matrix(base: QMatrix, monos: list[tuple[int, ...]]) -> QMatrix:
    index = {d: i for i, d in enumerate(monos)}
    n = len(monos)
    rows = [[Fraction(0)] * n for _ in range(n)]
    fr = base.to_fractions()
    nvars = base.rows
    for col, d in enumerate(monos):
        for j in range(nvars):
            if d[j] == 0:
                continue
            for i in range(nvars):
                if fr[i][j] == 0:
                    continue
                shifted = list(d)
                shifted[j] -= 1
                shifted[i] += 1
                rows[index[tuple(shifted)]][col] += fr[i][j] * d[j]
    return QMatrix.from_rows(rows)


def _coords_in_rref(rows, pivots, vec):
    coeffs = [vec[p] for p in pivots]
    resid = list(vec)
    for coeff, row in zip(coeffs, rows):
        if coeff:
            resid = [x - coeff * y for x, y in zip(resid, row)]
    if any(resid):
        return None
    return coeffs


def build_symmetric_power(m: int, b: int) -> SymmetricPowerModule:
    """Degree-b symmetric power construction over sl(2) semidirect V(m)."""
    if m < 1:
        raise ValueError("the radical weight m must be positive")
    if b < 0:
        raise ValueError("the degree b must be non-negative")
    base = build_z(0, 1, m)
    monos = _monomials(m + 2, b)
    n = len(monos)
    named = dict(base.matrices())
    big = GRep(
        m=m,
        dim=n,
        h=_derivation_matrix(named["h"], monos),
        e=_derivation_matrix(named["e"], monos),
        f=_derivation_matrix(named["f"], monos),
        v=tuple(_derivation_matrix(named[f"v_{i}"], monos) for i in range(m + 1)),
        convention=sl2.DIVIDED_POWER,
    )
    gen = [Fraction(0)] * n
    gen_exp = tuple(b if i == 1 else 0 for i in range(m + 2))
    gen[monos.index(gen_exp)] = Fraction(1)
    gens = [big.e, big.f, big.h, *big.v]
    rows, pivots = rref([gen])
    grew = True
    while grew:
        grew = False
        for mat in gens:
            for row in list(rows):
                img = mat.apply(row)
                resid = reduce_vector(rows, pivots, img)
                if any(resid):
                    rows, pivots = rref(rows + [resid])
                    grew = True
    basis = [tuple(r) for r in rows]

    def restrict(mat: QMatrix) -> QMatrix:
        cols = []
        for vec in basis:
            coeffs = _coords_in_rref(basis, pivots, mat.apply(vec))
            if coeffs is None:
                raise RuntimeError("generated subspace is not invariant")
            cols.append(coeffs)
        k = len(basis)
        return QMatrix.from_rows([[cols[j][i] for j in range(k)] for i in range(k)])

    sub = GRep(
        m=m,
        dim=len(basis),
        h=restrict(big.h),
        e=restrict(big.e),
        f=restrict(big.f),
        v=tuple(restrict(vi) for vi in big.v),
        convention=sl2.DIVIDED_POWER,
    )
    gen_sub = _coords_in_rref(basis, pivots, gen)
    if gen_sub is None:
        raise RuntimeError("generator does not lie in its own closure")
    return SymmetricPowerModule(big, sub, tuple(gen), tuple(gen_sub))


# -- axiomatic characterization --------------------------------------------------


@dataclass(frozen=True)
class CharacterizationReport:
    maximal_generator: bool  # (C1)
    nilpotency_window: bool  # (C2)
    radical_compatibility: bool  # (C3) or its dual version

    @property
    def all_hold(self) -> bool:
        return self.maximal_generator and self.nilpotency_window and self.radical_compatibility


def _sl2_closure(rep: GRep, vec) -> tuple[list, list]:
    rows, pivots = rref([vec])
    if not rows:
        return [], []
    gens = [rep.h, rep.e, rep.f]
    grew = True
    while grew:
        grew = False
        for mat in gens:
            for row in list(rows):
                resid = reduce_vector(rows, pivots, mat.apply(row))
                if any(resid):
                    rows, pivots = rref(rows + [resid])
                    grew = True
    return rows, pivots


def check_z_characterization(
    rep: GRep, vec, ell: int, b: int, dual: bool = False
) -> CharacterizationReport:
    """Check the cyclic-vector conditions that pin down the main family.

    For the plain orientation u = v_m and the three conditions are: vec is a
    maximal vector of weight ell + b m generating the module; u^b vec != 0
    while u^{b+1} vec = 0; and the matrix of [e, v_m] kills vec.  For the
    dual orientation u = v_0, the expected weight is ell, and the third
    condition asks that the radical image of u^i vec stays inside the
    sl(2)-span of u^{i+1} vec for 0 <= i <= b.
    """
    vec = tuple(Fraction(x) for x in vec)
    if not any(vec):
        raise ValueError("the candidate vector must be non-zero")
    weight = ell if dual else ell + b * rep.m
    u = rep.v[0] if dual else rep.v[rep.m]

    is_weight = rep.h.apply(vec) == tuple(weight * x for x in vec)
    killed = not any(rep.e.apply(vec))
    rows, pivots = rref([vec])
    gens = [rep.h, rep.e, rep.f, *rep.v]
    grew = True
    while grew:
        grew = False
        for mat in gens:
            for row in list(rows):
                resid = reduce_vector(rows, pivots, mat.apply(row))
                if any(resid):
                    rows, pivots = rref(rows + [resid])
                    grew = True
    generates = len(rows) == rep.dim
    c1 = is_weight and killed and generates

    powers = [vec]
    for _ in range(b + 1):
        powers.append(u.apply(powers[-1]))
    c2 = any(powers[b]) and not any(powers[b + 1])

    if not dual:
        bracket = commutator(rep.e, rep.v[rep.m])
        c3 = not any(bracket.apply(vec))
    else:
        c3 = True
        for i in range(b + 1):
            span_rows, span_pivots = _sl2_closure(rep, powers[i + 1])
            for vj in rep.v:
                img = vj.apply(powers[i])
                if any(img) and (
                    not span_rows or any(reduce_vector(span_rows, span_pivots, img))
                ):
                    c3 = False
    return CharacterizationReport(c1, c2, c3)


# -- generic sequence builder -----------------------------------------------------


@dataclass(frozen=True)
class SequenceObstruction:
    """First nonvanishing radical commutator met while assembling a sequence."""

    window: int  # index of the offending consecutive-factor window
    pair: tuple[int, int]  # radical generator indices (i, j)
    block: QMatrix  # the nonzero composite block

    def __bool__(self) -> bool:
        return False


def build_from_sequence(seq, m: int, scalars=None):
    """Assemble a module candidate with the given socle-factor sequence.

    Superdiagonal blocks are the canonical equivariant ones scaled by the
    given nonzero rationals (default all 1).  Returns the GRep when every
    radical commutator vanishes (then the module is uniserial with the given
    factors); otherwise returns a SequenceObstruction carrying the first
    nonvanishing commutator block.  This is the brute-force admissibility
    oracle.
    """
    seq = [int(a) for a in seq]
    if not seq:
        raise ValueError("the factor sequence must be non-empty")
    if m < 1:
        raise ValueError("the radical weight m must be positive")
    if scalars is None:
        scalars = [Fraction(1)] * (len(seq) - 1)
    scalars = [Fraction(s) for s in scalars]
    if len(scalars) != len(seq) - 1:
        raise ValueError("need one scalar per consecutive pair")
    if any(s == 0 for s in scalars):
        raise ValueError("scalars must be non-zero")
    for i in range(len(seq) - 1):
        if not triangle(seq[i], seq[i + 1], m):
            raise ValueError(
                f"triangle condition fails between factors {seq[i]} and {seq[i + 1]}"
            )
    families = [
        [scalars[i] * mat for mat in radical_blocks(m, seq[i + 1], seq[i])]
        for i in range(len(seq) - 1)
    ]
    # the only bracket obstructions sit two steps down the flag
    for w in range(len(seq) - 2):
        fam_a = [mat.to_fractions() for mat in families[w]]
        fam_b = [mat.to_fractions() for mat in families[w + 1]]
        for i in range(m + 1):
            for j in range(i + 1, m + 1):
                prod = _mat_anticommute(fam_a[i], fam_b[j], fam_a[j], fam_b[i])
                if prod is not None:
                    return SequenceObstruction(w, (i, j), QMatrix.from_rows(prod))
    dims = [a + 1 for a in seq]
    irreps = [sl2.irrep(a, sl2.DIVIDED_POWER) for a in seq]
    v = []
    for i in range(m + 1):
        blocks = {(w, w + 1): families[w][i] for w in range(len(seq) - 1)}
        v.append(assemble_blocks(dims, dims, blocks))
    rep = GRep(
        m=m,
        dim=sum(dims),
        h=block_diagonal([r.h for r in irreps]),
        e=block_diagonal([r.e for r in irreps]),
        f=block_diagonal([r.f for r in irreps]),
        v=tuple(v),
        convention=sl2.DIVIDED_POWER,
        blocks=tuple(dims),
    )
    verdict = gmod.check_rep(rep)
    if not verdict:
        raise RuntimeError(f"assembled module fails a relation: {verdict.failure}")
    return rep


def _mat_anticommute(a_i, b_j, a_j, b_i):
    """a_i b_j - a_j b_i over Fractions; None when it vanishes."""
    rows = len(a_i)
    inner = len(b_j)
    cols = len(b_j[0]) if inner else 0
    out = []
    nonzero = False
    for r in range(rows):
        row = []
        ar_i, ar_j = a_i[r], a_j[r]
        for c in range(cols):
            s = Fraction(0)
            for k in range(inner):
                if ar_i[k]:
                    s += ar_i[k] * b_j[k][c]
                if ar_j[k]:
                    s -= ar_j[k] * b_i[k][c]
            if s:
                nonzero = True
            row.append(s)
        out.append(row)
    return out if nonzero else None


# -- LaTeX rendering ---------------------------------------------------------------


def _term_string(coeff: Fraction, symbol: str) -> str:
    if coeff == 1:
        return symbol
    if coeff == -1:
        return f"-{symbol}"
    return f"{coeff}{symbol}"


def grep_to_latex(rep: GRep) -> str:
    """Render the generic element as a block-partitioned LaTeX array.

    Each entry shows the linear combination of h, e, f, v_0..v_m acting
    there; blocks that are identically zero render blank.
    """
    blocks = rep.blocks
    if blocks is None:
        blocks = tuple(
            sum((k + 1) * n for k, n in step.factors.items())
            for step in gmod.socle_series(rep).steps
        )
    offsets = [0]
    for d in blocks:
        offsets.append(offsets[-1] + d)
    named = rep.matrices()
    symbols = [name.replace("v_", "v_") for name, _ in named]
    grids = [mat.to_fractions() for _, mat in named]

    def entry_terms(i, j):
        return [
            _term_string(grids[g][i][j], symbols[g])
            for g in range(len(named))
            if grids[g][i][j]
        ]

    def block_active(bi, bj):
        for i in range(offsets[bi], offsets[bi + 1]):
            for j in range(offsets[bj], offsets[bj + 1]):
                if entry_terms(i, j):
                    return True
        return bi == bj

    active = {
        (bi, bj): block_active(bi, bj) for bi in range(len(blocks)) for bj in range(len(blocks))
    }
    colspec = "|".join("r" * d for d in blocks)
    lines = [f"\\begin{{array}}{{{colspec}}}"]
    for bi in range(len(blocks)):
        for i in range(offsets[bi], offsets[bi + 1]):
            cells = []
            for bj in range(len(blocks)):
                for j in range(offsets[bj], offsets[bj + 1]):
                    if not active[(bi, bj)]:
                        cells.append("")
                        continue
                    terms = entry_terms(i, j)
                    if not terms:
                        cells.append("0")
                    else:
                        text = terms[0]
                        for t in terms[1:]:
                            text += t if t.startswith("-") else f"+{t}"
                        cells.append(text)
            lines.append(" & ".join(cells) + r" \\")
        if bi + 1 < len(blocks):
            lines.append(r"\hline")
    lines.append(r"\end{array}")
    return "\n".join(lines)
