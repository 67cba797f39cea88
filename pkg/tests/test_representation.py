import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import a2, a2_r2, heisenberg, random_commuting, random_solvable
from liespectra.errors import InvalidRepresentation
from liespectra.lie_algebra import LieAlgebra, opposite
from liespectra.linalg import Matrix
from liespectra.representation import (
    Representation,
    annihilates_derived,
    dual_rep,
    validate_rep,
    weights_float_oracle,
)
from liespectra.spectra import same_points, taylor_oracle, to_float_points


def close_multiset(a, b, tol=1e-6):
    a, b = sorted(a, key=lambda w: [(z.real, z.imag) for z in w]), list(b)
    for w in a:
        hit = next((k for k, v in enumerate(b) if all(abs(x - y) < tol for x, y in zip(w, v))), None)
        if hit is None:
            return False
        b.pop(hit)
    return not b


def test_validate_rep_examples():
    assert validate_rep(a2_r2()[1]).ok
    L = LieAlgebra.abelian(2)
    bad = Representation(L, [[[0, 1], [0, 0]], [[0, 0], [1, 0]]])
    assert validate_rep(bad).violations == [(1, 2)]
    assert validate_rep(Representation(a2(), [Matrix.zeros(3, 3)] * 2)).ok


def test_shape_errors():
    with pytest.raises(InvalidRepresentation):
        Representation(a2(), [[[1]]])
    with pytest.raises(InvalidRepresentation):
        Representation(a2(), [[[1]], [[1, 0], [0, 1]]])


def test_dual_rep_examples():
    L, R = a2_r2()
    D = dual_rep(R)
    assert D.algebra == opposite(L)
    assert D.mats[0] == Matrix([[0, 0], [1, 0]]) and D.mats[1] == Matrix([[1, 0], [0, 0]])
    assert validate_rep(D).ok
    assert dual_rep(D) == R
    Z = Representation(L, [Matrix.zeros(2, 2)] * 2)
    assert all(M.is_zero() for M in dual_rep(Z).mats)


def test_weights_examples():
    assert close_multiset(weights_float_oracle(a2_r2()[1]), [(0, 1), (0, 0)])
    assert close_multiset(weights_float_oracle(heisenberg()[1]), [(0, 0, 0)] * 3)
    Z = Representation(LieAlgebra.abelian(1), [Matrix.zeros(2, 2)])
    assert close_multiset(weights_float_oracle(Z), [(0,), (0,)])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dual_of_random_rep_is_valid_and_weights_annihilate_derived(seed):
    L, R = random_solvable(random.Random(seed))
    assert validate_rep(dual_rep(R)).ok
    for w in weights_float_oracle(R):
        assert annihilates_derived(L, w)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_commutative_weights_match_taylor(seed):
    mats = random_commuting(random.Random(seed))
    R = Representation(LieAlgebra.abelian(len(mats)), mats)
    weights = set(weights_float_oracle(R))
    assert same_points(list(weights), to_float_points(taylor_oracle(mats)), "float", tol=1e-5)
