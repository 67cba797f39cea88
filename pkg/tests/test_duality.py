import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import a2_reps, a2_r2, abelian_diag, heisenberg, random_solvable
from liespectra.duality import (
    CALIBRATION_SIGN,
    calibrate,
    dual_spectrum_check,
    nilpotent_check,
    slodkowski_duality_check,
)
from liespectra.errors import NotNilpotent
from liespectra.koszul import LEFT, RIGHT
from liespectra.lie_algebra import adapted_from_user, opposite
from liespectra.linalg import Matrix
from liespectra.representation import dual_rep
from liespectra.scalars import GaussianRational as G
from liespectra.spectra import same_points, translate


def test_calibration():
    cal = calibrate()
    assert cal.action == RIGHT and cal.sign == 1 == CALIBRATION_SIGN
    assert "chain condition" in cal.rejected[LEFT]


@pytest.mark.parametrize("name,R", a2_reps())
def test_a2_worked_example(name, R):
    rep = dual_spectrum_check(R.algebra, R)
    assert rep.trace_vector == (G(0), G(1))
    shifted = translate(rep.sp_primal.points, (G(0), G(1)))
    assert set(shifted) == set(rep.sp_dual.points)
    assert rep.translation_verified and rep.calibration_sign == 1


def test_heisenberg_and_abelian():
    assert nilpotent_check(*heisenberg())
    assert nilpotent_check(*abelian_diag())
    with pytest.raises(NotNilpotent):
        nilpotent_check(*a2_r2())


def test_slodkowski_duality_a2():
    L, R = a2_r2()
    for k in range(3):
        res = slodkowski_duality_check(L, R, k)
        assert res.first and res.second
    # the same-level form of the first identity fails at the ends
    assert not slodkowski_duality_check(L, R, 0).first_literal
    assert not slodkowski_duality_check(L, R, 2).first_literal
    with pytest.raises(ValueError):
        slodkowski_duality_check(L, R, 3)


def test_slodkowski_duality_nilpotent_zero_shift():
    L, R = heisenberg()
    rep = dual_spectrum_check(L, R)
    assert not any(rep.trace_vector)
    assert all(s.ok for s in rep.slodkowski)


def test_float_backend_duality():
    rep = dual_spectrum_check(*a2_r2(), backend="float")
    assert rep.translation_verified and rep.ok


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_duality_and_involution(seed):
    L, R = random_solvable(random.Random(seed))
    rep = dual_spectrum_check(L, R)
    assert rep.ok
    k = rep.adapted.derived_dim
    assert not any(rep.trace_vector[:k])
    # the dual of the dual returns the primal spectrum
    Lw = rep.adapted.algebra
    Rw = R.change_basis(rep.adapted.B, Lw)
    Lo = opposite(Lw)
    back = dual_spectrum_check(Lo, dual_rep(Rw), adapted_from_user(Lo, Matrix.identity(Lo.dim)))
    assert same_points(back.sp_dual.points, rep.sp_primal.points)
