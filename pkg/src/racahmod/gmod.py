"""Representations of the perfect Lie algebra g = sl(2) semidirect V(m).

g has basis e, h, f, v_0, ..., v_m with the sl(2) relations, an abelian
radical ([v_i, v_j] = 0) and the mixed relations

    [h, v_i] = (m - 2i) v_i,
    [e, v_i] = (m - i + 1) v_{i-1},
    [f, v_i] = (i + 1) v_{i+1},

with v_{-1} = v_{m+1} = 0.  Because the radical annihilates every irreducible
module, the socle series of any module is computed step by step as the joint
kernel of the v_i acting on successive quotients, and uniseriality is the
statement that every socle factor is a single irreducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from . import sl2
from .exact import (
    QMatrix,
    Vector,
    commutator,
    kernel,
    rat_from_str,
    rat_to_str,
    reduce_vector,
    rref,
    solve_columns,
)


@dataclass(frozen=True)
class GRep:
    """Matrices of h, e, f, v_0..v_m in a declared basis convention.

    `blocks` optionally records the socle-factor block sizes of a built
    realization (used by the LaTeX emitter); it is not part of the JSON
    interchange schema.
    """

    m: int
    dim: int
    h: QMatrix
    e: QMatrix
    f: QMatrix
    v: tuple[QMatrix, ...]
    convention: str = sl2.DIVIDED_POWER
    blocks: tuple[int, ...] | None = None

    def matrices(self) -> list[tuple[str, QMatrix]]:
        named = [("h", self.h), ("e", self.e), ("f", self.f)]
        named += [(f"v_{i}", vi) for i, vi in enumerate(self.v)]
        return named


@dataclass(frozen=True)
class RepCheck:
    ok: bool
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_rep(rep: GRep) -> RepCheck:
    """Verify every defining bracket relation exactly.

    Returns the first violated relation by name; all pairs [v_i, v_j] are
    checked even though the (v_0, v_j) pairs would suffice by equivariance.
    """
    mats = [rep.h, rep.e, rep.f, *rep.v]
    n = rep.dim
    for _, mat in rep.matrices():
        if mat.rows != n or mat.cols != n:
            raise ValueError("all generator matrices must be square of the module dimension")
    if len(rep.v) != rep.m + 1:
        raise ValueError(f"expected {rep.m + 1} radical generators, got {len(rep.v)}")
    h, e, f = rep.h, rep.e, rep.f
    if commutator(h, e) != 2 * e:
        return RepCheck(False, "[h,e] != 2e")
    if commutator(h, f) != -2 * f:
        return RepCheck(False, "[h,f] != -2f")
    if commutator(e, f) != h:
        return RepCheck(False, "[e,f] != h")
    m = rep.m
    zero = QMatrix.zero(n, n)
    for i, vi in enumerate(rep.v):
        if commutator(h, vi) != (m - 2 * i) * vi:
            return RepCheck(False, f"[h,v_{i}] != (m-2i) v_{i}")
        expect_e = (m - i + 1) * rep.v[i - 1] if i > 0 else zero
        if commutator(e, vi) != expect_e:
            return RepCheck(False, f"[e,v_{i}] != (m-i+1) v_{i - 1 if i else 0}")
        expect_f = (i + 1) * rep.v[i + 1] if i < m else zero
        if commutator(f, vi) != expect_f:
            return RepCheck(False, f"[f,v_{i}] != (i+1) v_{min(i + 1, m)}")
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            if commutator(rep.v[i], rep.v[j]) != zero:
                return RepCheck(False, f"[v_{i},v_{j}] != 0")
    return RepCheck(True)


@dataclass(frozen=True)
class SocleStep:
    basis: tuple[Vector, ...]  # echelon basis of soc^i in original coordinates
    factors: dict[int, int]  # sl(2) decomposition of soc^i / soc^{i-1}


@dataclass(frozen=True)
class SocleSeries:
    steps: tuple[SocleStep, ...]

    def factor_sequence(self) -> list[dict[int, int]]:
        return [dict(step.factors) for step in self.steps]

    def factor_weights(self) -> list[int]:
        """Socle factors when every factor is a single irreducible."""
        out = []
        for step in self.steps:
            if len(step.factors) != 1 or next(iter(step.factors.values())) != 1:
                raise ValueError("a socle factor is not irreducible")
            out.append(next(iter(step.factors)))
        return out


def _weights_of(rep: GRep) -> list[int]:
    ws = []
    for i in range(rep.dim):
        for j in range(rep.dim):
            x = rep.h.entry(i, j)
            if i != j and x != 0:
                raise ValueError("h must act diagonally to compute socle series")
        w = rep.h.entry(i, i)
        if w.denominator != 1:
            raise ValueError("h has a non-integer weight")
        ws.append(int(w))
    return ws


def socle_series(rep: GRep) -> SocleSeries:
    """Socle series computed as joint kernels of the radical on quotients.

    Quotients keep h diagonal by choosing complements out of standard basis
    vectors (every subspace met here is spanned by weight-homogeneous
    vectors, and distinct weights occupy disjoint coordinate supports).
    """
    verdict = check_rep(rep)
    if not verdict:
        raise ValueError(f"not a representation: {verdict.failure}")
    weights = _weights_of(rep)
    n = rep.dim
    s_rows: list[list[Fraction]] = []
    s_pivots: list[int] = []
    steps: list[SocleStep] = []
    while len(s_rows) < n:
        comp = [i for i in range(n) if i not in set(s_pivots)]
        nc = len(comp)

        def quotient_matrix(mat: QMatrix) -> QMatrix:
            cols = []
            for c in comp:
                resid = reduce_vector(s_rows, s_pivots, mat.column(c))
                cols.append([resid[i] for i in comp])
            return QMatrix.from_rows([[cols[j][i] for j in range(nc)] for i in range(nc)])

        quot_v = [quotient_matrix(vm) for vm in rep.v]
        stacked_rows = [row for qm in quot_v for row in qm.to_fractions()]
        ker = kernel(QMatrix.from_rows(stacked_rows)) if stacked_rows else []
        if nc and not stacked_rows:
            ker = [tuple(Fraction(i == j) for j in range(nc)) for i in range(nc)]
        if not ker:
            raise RuntimeError("radical action has no common kernel on a nonzero quotient")

        factors = _factor_decomposition(rep, comp, weights, quotient_matrix, ker)
        new_vecs = []
        for kv in ker:
            vec = [Fraction(0)] * n
            for j, x in enumerate(kv):
                vec[comp[j]] = x
            new_vecs.append(vec)
        s_rows, s_pivots = rref(s_rows + new_vecs)
        steps.append(SocleStep(tuple(tuple(r) for r in s_rows), factors))
    return SocleSeries(tuple(steps))


def _factor_decomposition(rep, comp, weights, quotient_matrix, ker) -> dict[int, int]:
    """Decompose the span of the joint-kernel vectors as an sl(2)-module."""
    h_fac = QMatrix.diagonal(
        [_homogeneous_weight(kv, comp, weights) for kv in ker]
    )
    quot_e = quotient_matrix(rep.e)
    quot_f = quotient_matrix(rep.f)

    def restrict(mat: QMatrix) -> QMatrix:
        cols = []
        for kv in ker:
            img = mat.apply(kv)
            coeffs = solve_columns(ker, img)
            if coeffs is None:
                raise RuntimeError("socle factor is not sl(2)-invariant")
            cols.append(coeffs)
        k = len(ker)
        return QMatrix.from_rows([[cols[j][i] for j in range(k)] for i in range(k)])

    factor_rep = sl2.Sl2Rep(len(ker), h_fac, restrict(quot_e), restrict(quot_f), rep.convention)
    return sl2.decompose(factor_rep)


def _homogeneous_weight(vec, comp, weights) -> int:
    ws = {weights[comp[j]] for j, x in enumerate(vec) if x}
    if len(ws) != 1:
        raise RuntimeError("socle basis vector is not weight-homogeneous")
    return ws.pop()


def is_uniserial(rep: GRep) -> bool:
    """Whether every socle factor is a single irreducible sl(2)-module."""
    for step in socle_series(rep).steps:
        if len(step.factors) != 1 or next(iter(step.factors.values())) != 1:
            return False
    return True


def dual_rep(rep: GRep) -> GRep:
    """Dual module: every generator matrix X goes to -X^T."""
    return replace(
        rep,
        h=-rep.h.transpose(),
        e=-rep.e.transpose(),
        f=-rep.f.transpose(),
        v=tuple(-vi.transpose() for vi in rep.v),
        blocks=tuple(reversed(rep.blocks)) if rep.blocks else None,
    )


# -- JSON interchange ----------------------------------------------------------


def _matrix_to_strings(mat: QMatrix) -> list[list[str]]:
    return [[rat_to_str(x) for x in row] for row in mat.to_fractions()]


def _matrix_from_strings(data: Sequence[Sequence[str]]) -> QMatrix:
    return QMatrix.from_rows([[rat_from_str(x) for x in row] for row in data])


def grep_to_dict(rep: GRep) -> dict:
    return {
        "m": rep.m,
        "dim": rep.dim,
        "h": _matrix_to_strings(rep.h),
        "e": _matrix_to_strings(rep.e),
        "f": _matrix_to_strings(rep.f),
        "v": [_matrix_to_strings(vi) for vi in rep.v],
        "convention": rep.convention,
    }


def grep_from_dict(data: dict) -> GRep:
    return GRep(
        m=int(data["m"]),
        dim=int(data["dim"]),
        h=_matrix_from_strings(data["h"]),
        e=_matrix_from_strings(data["e"]),
        f=_matrix_from_strings(data["f"]),
        v=tuple(_matrix_from_strings(vi) for vi in data["v"]),
        convention=data["convention"],
    )


def grep_to_json(rep: GRep) -> str:
    return json.dumps(grep_to_dict(rep), indent=1)


def grep_from_json(text: str) -> GRep:
    return grep_from_dict(json.loads(text))
