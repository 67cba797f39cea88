import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import a2_r2, abelian_diag, heisenberg, one_dim, random_commuting, random_solvable
from liespectra.duality import working_problem
from liespectra.errors import BasisNotAdapted, IrrationalSpectrum, NotAnIdeal, NotCommuting
from liespectra.lie_algebra import LieAlgebra, derived_algebra, is_character
from liespectra.linalg import Matrix
from liespectra.representation import Representation, weights_float_oracle
from liespectra.scalars import GaussianRational as G
from liespectra.spectra import (
    DELTA,
    PI,
    SpectralData,
    candidate_characters,
    containment_check,
    joint_weights_exact,
    project_spectrum,
    projection_check,
    same_points,
    sigma_p_member,
    slodkowski,
    sp,
    taylor_oracle,
)


def pts(*rows):
    return {tuple(G(x) for x in r) for r in rows}


def test_candidates_contain_weights():
    L, R = a2_r2()
    cands = set(candidate_characters(L, R))
    assert pts((0, 0), (0, 1)) <= cands
    assert set(candidate_characters(*heisenberg())) == pts((0, 0, 0))
    assert set(candidate_characters(*abelian_diag())) == pts((1, 3), (2, 4))


def test_candidates_need_derived_first():
    L = LieAlgebra.from_brackets(2, {(0, 1): {1: 1}})
    R = Representation(L, [[[1, 0], [0, 0]], [[0, 1], [0, 0]]])
    with pytest.raises(BasisNotAdapted):
        candidate_characters(L, R)


def test_joint_weights_exact():
    L, R = a2_r2()
    assert sorted(joint_weights_exact(R.mats, 2)) == sorted([(G(0), G(1)), (G(0), G(0))])


def test_sigma_membership():
    L, R = one_dim((1, 2))
    assert not any(sigma_p_member(L, R, (G(3),), p) for p in range(2))
    assert sigma_p_member(L, R, (G(1),), 0) and sigma_p_member(L, R, (G(1),), 1)


def test_sp_examples():
    L, R = one_dim((1, 2))
    assert set(sp(L, R).points) == pts((1,), (2,))
    assert set(sp(*abelian_diag()).points) == pts((1, 3), (2, 4))
    assert set(sp(*a2_r2()).points) == pts((0, 1), (0, -1))
    assert set(slodkowski(L, R, DELTA, 0).points) == pts((1,), (2,))


def test_a2_sigma_levels():
    D = SpectralData(*a2_r2())
    assert set(D.sigma(0).points) == pts((0, 1))
    assert set(D.sigma(1).points) == pts((0, 1), (0, -1))
    assert set(D.sigma(2).points) == pts((0, -1))


def test_slodkowski_range():
    L, R = a2_r2()
    with pytest.raises(ValueError):
        slodkowski(L, R, DELTA, 3)
    with pytest.raises(ValueError):
        slodkowski(L, R, "gamma", 1)


def test_irrational_spectrum_falls_back_to_float():
    L = LieAlgebra.abelian(1)
    R = Representation(L, [[[0, 1], [2, 0]]])
    with pytest.raises(IrrationalSpectrum):
        sp(L, R)
    S = sp(L, R, backend="float")
    assert sorted(round(f[0].real, 9) for f in S.points) == [round(-2 ** 0.5, 9), round(2 ** 0.5, 9)]


def test_projection_examples():
    L, R = a2_r2()
    S = sp(L, R)
    assert set(project_spectrum(S, [[1, 0]])) == pts((0,))
    assert set(project_spectrum(S, [[1, 0], [0, 1]])) == set(S.points)
    assert project_spectrum(S, []) == ((),)
    with pytest.raises(NotAnIdeal):
        project_spectrum(S, [[0, 1]])
    assert projection_check(L, R, [[1, 0]]).ok
    with pytest.raises(NotAnIdeal):
        projection_check(L, R, [[0, 1]])
    H, RH = heisenberg()
    assert projection_check(H, RH, [[1, 0, 0]]).ok


def test_pi_levels_need_codimension_shift():
    # the same-level reading fails: sigma_pi,2(A2) projects to {0} but sigma_pi,2 of a line is empty
    L, R = a2_r2()
    S = SpectralData(L, R).slodkowski(PI, 2)
    assert set(project_spectrum(S, [[1, 0]])) == pts((0,))
    rep = projection_check(L, R, [[1, 0]])
    assert ("pi", 2, 1) in rep.checked


def test_containment():
    assert containment_check(*a2_r2()).ok
    assert containment_check(*heisenberg()).ok


def test_taylor_examples():
    assert set(taylor_oracle([Matrix.diag([G(1), G(2)]), Matrix.diag([G(3), G(4)])])) == pts((1, 3), (2, 4))
    assert set(taylor_oracle([[[0, 1], [0, 0]]])) == pts((0,))
    M = Matrix([[1, 1], [0, 2]])
    assert set(taylor_oracle([M, M])) == pts((1, 1), (2, 2))
    with pytest.raises(NotCommuting):
        taylor_oracle([[[0, 1], [0, 0]], [[0, 0], [1, 0]]])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_structure_on_random_instances(seed):
    L0, R0 = random_solvable(random.Random(seed))
    _, L, R = working_problem(L0, R0)
    D = SpectralData(L, R)
    n = L.dim
    S = D.sp()
    assert S.points and set(S.points) <= set(D.candidates)
    assert set(D.slodkowski(DELTA, n).points) == set(S.points) == set(D.slodkowski(PI, 0).points)
    for k in range(n):
        assert set(D.slodkowski(DELTA, k).points) <= set(D.slodkowski(DELTA, k + 1).points)
        assert set(D.slodkowski(PI, k + 1).points) <= set(D.slodkowski(PI, k).points)
    k = len(derived_algebra(L))
    for f in S.points:
        assert is_character(L, f) and not any(f[:k])
    for w in weights_float_oracle(R):
        assert any(all(abs(complex(a) - b) < 1e-4 for a, b in zip(c, w)) for c in D.candidates)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_commutative_reduction(seed):
    mats = random_commuting(random.Random(seed))
    L = LieAlgebra.abelian(len(mats))
    assert sp(L, Representation(L, mats)).points == taylor_oracle(mats)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_backends_agree(seed):
    L0, R0 = random_solvable(random.Random(seed))
    _, L, R = working_problem(L0, R0)
    assert same_points(sp(L, R).points, sp(L, R, backend="float").points, "float")
