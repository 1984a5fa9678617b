"""Unit tests for representations of sl(2) semidirect V(m)."""

import dataclasses
from fractions import Fraction

import pytest

from racahmod.constructions import build_z, build_z_dual, build_z_family
from racahmod.exact import QMatrix
from racahmod.gmod import (
    GRep,
    check_rep,
    dual_rep,
    grep_from_json,
    grep_to_dict,
    grep_to_json,
    is_uniserial,
    socle_series,
)
from racahmod.sl2 import DIVIDED_POWER, irrep, tensor


def zero_radical_rep(base, m):
    """A valid module where every radical generator acts by zero."""
    n = base.dim
    return GRep(
        m=m,
        dim=n,
        h=base.h,
        e=base.e,
        f=base.f,
        v=tuple(QMatrix.zero(n, n) for _ in range(m + 1)),
        convention=base.convention,
    )


def test_check_rep_main_family():
    assert check_rep(build_z(1, 2, 2)).ok
    assert check_rep(build_z(0, 3, 1)).ok
    assert check_rep(build_z(2, 1, 3)).ok


def test_check_rep_zero_radical():
    rep = zero_radical_rep(irrep(3, DIVIDED_POWER), 2)
    assert check_rep(rep).ok


def test_check_rep_detects_perturbation():
    rep = build_z(1, 2, 2)
    rows = [list(row) for row in rep.v[0].to_fractions()]
    rows[0][2] += 1
    broken = dataclasses.replace(rep, v=(QMatrix.from_rows(rows),) + rep.v[1:])
    verdict = check_rep(broken)
    assert not verdict.ok
    assert verdict.failure is not None and "v_0" in verdict.failure


def test_check_rep_detects_sl2_violation():
    rep = build_z(0, 1, 2)
    broken = dataclasses.replace(rep, e=2 * rep.e)
    verdict = check_rep(broken)
    assert not verdict.ok and verdict.failure == "[e,f] != h"


def test_check_rep_shape_errors():
    rep = build_z(0, 1, 1)
    bad = dataclasses.replace(rep, v=rep.v[:1])
    with pytest.raises(ValueError):
        check_rep(bad)


def test_socle_series_main_family():
    series = socle_series(build_z(1, 2, 2))
    assert series.factor_weights() == [1, 3, 5]
    dims = [len(step.basis) for step in series.steps]
    assert dims == [2, 6, 12]


def test_socle_series_zero_radical_single_step():
    base = tensor(irrep(1, DIVIDED_POWER), irrep(1, DIVIDED_POWER))
    rep = zero_radical_rep(base, 2)
    series = socle_series(rep)
    assert len(series.steps) == 1
    assert series.steps[0].factors == {2: 1, 0: 1}


def test_socle_series_dual_reverses():
    series = socle_series(dual_rep(build_z(1, 2, 2)))
    assert series.factor_weights() == [5, 3, 1]
    assert socle_series(build_z_dual(0, 1, 3)).factor_weights() == [3, 0]


def test_socle_invariance_of_steps():
    rep = build_z(0, 2, 3)
    series = socle_series(rep)
    mats = [mat for _, mat in rep.matrices()]
    for step in series.steps:
        from racahmod.exact import rref, reduce_vector

        rows, pivots = rref(step.basis)
        for vec in step.basis:
            for mat in mats:
                assert not any(reduce_vector(rows, pivots, mat.apply(vec)))


def test_is_uniserial():
    assert is_uniserial(build_z(1, 2, 2))
    assert is_uniserial(build_z_family(4, 1))
    base = zero_radical_rep(irrep(0, DIVIDED_POWER), 2)
    two_copies = GRep(
        m=2,
        dim=2,
        h=QMatrix.zero(2, 2),
        e=QMatrix.zero(2, 2),
        f=QMatrix.zero(2, 2),
        v=tuple(QMatrix.zero(2, 2) for _ in range(3)),
        convention=DIVIDED_POWER,
    )
    assert not is_uniserial(two_copies)
    assert is_uniserial(base)


def test_uniserial_matches_dual():
    for rep in [build_z(1, 2, 2), build_z(0, 1, 3), build_z_family(4, Fraction(5, 7))]:
        assert is_uniserial(rep) == is_uniserial(dual_rep(rep))


def test_dual_involution_and_socle():
    rep = build_z(1, 2, 2)
    double = dual_rep(dual_rep(rep))
    assert socle_series(double).factor_weights() == [1, 3, 5]
    assert check_rep(dual_rep(rep)).ok


def test_dual_of_irreducible():
    rep = zero_radical_rep(irrep(4, DIVIDED_POWER), 2)
    dual = dual_rep(rep)
    assert check_rep(dual).ok
    assert socle_series(dual).factor_weights() == [4]


def test_json_round_trip():
    rep = build_z(1, 2, 2)
    text = grep_to_json(rep)
    back = grep_from_json(text)
    assert back.m == rep.m and back.dim == rep.dim
    assert back.h == rep.h and back.e == rep.e and back.f == rep.f
    assert back.v == rep.v and back.convention == rep.convention
    assert socle_series(back).factor_weights() == [1, 3, 5]


def test_json_schema_keys():
    data = grep_to_dict(build_z(0, 1, 2))
    assert sorted(data) == ["convention", "dim", "e", "f", "h", "m", "v"]
    assert isinstance(data["h"][0][0], str)
    assert len(data["v"]) == 3


def test_socle_steps_grow_strictly_and_exhaust():
    for rep in [build_z(1, 2, 2), build_z_dual(0, 2, 3), build_z_family(4, 1)]:
        series = socle_series(rep)
        dims = [len(step.basis) for step in series.steps]
        assert dims == sorted(set(dims))
        assert dims[-1] == rep.dim
        total = sum(
            (k + 1) * n for step in series.steps for k, n in step.factors.items()
        )
        assert total == rep.dim


def test_dual_builder_equals_dual_of_builder():
    for ell, b, m in [(1, 2, 2), (0, 1, 3), (2, 0, 4)]:
        assert build_z_dual(ell, b, m) == dual_rep(build_z(ell, b, m))
