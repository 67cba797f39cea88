import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import a2, heisenberg, random_solvable
from liespectra.exterior import (
    epsilon_matrix,
    parity_matrix,
    rho_matrix,
    sort_sign,
    theta_matrix,
    verify_identities,
    verify_product_laws,
    wedge_basis,
)
from liespectra.lie_algebra import LieAlgebra, adapted_basis
from liespectra.linalg import Matrix, rank
from liespectra.scalars import GaussianRational as G


def test_wedge_basis():
    assert wedge_basis(3, 2) == ((0, 1), (0, 2), (1, 2))
    assert wedge_basis(4, 0) == ((),)
    with pytest.raises(ValueError):
        wedge_basis(2, 3)


def test_sort_sign():
    assert sort_sign((1, 0)) == (-1, (0, 1))
    assert sort_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert sort_sign((1, 1)) == (0, None)


def test_theta_a2():
    L = a2()
    assert theta_matrix(L, 1, 1) == Matrix([[1, 0], [0, 0]])
    assert theta_matrix(L, 1, 2) == Matrix([[1]])
    for p in range(3):
        assert theta_matrix(LieAlgebra.abelian(2), 0, p).is_zero()


def test_rho_small_cases():
    assert rho_matrix(2, 0) == Matrix([[1]])
    # contraction of the top form by y1 ^ y2: <y_empty, iota(y1^y2) x1^x2> = <y1^y2, x1^x2> = 1
    assert rho_matrix(2, 2) == Matrix([[1]])
    assert rho_matrix(1, 1) == Matrix([[1]])
    assert rho_matrix(2, 1) == Matrix([[0, -1], [1, 0]])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rho_invertible(n):
    from math import comb
    for p in range(n + 1):
        assert rank(rho_matrix(n, p)) == comb(n, p)


def test_parity():
    assert parity_matrix(3, 2) == Matrix.identity(3)
    assert parity_matrix(3, 1) == -Matrix.identity(3)
    W = parity_matrix(4, 3)
    assert W @ W == Matrix.identity(4)


def test_epsilon_lands_in_higher_degree():
    E = epsilon_matrix(3, (0,), 1)
    assert E.shape == (3, 3)
    assert epsilon_matrix(2, (0, 1), 1).shape == (0, 2)


@pytest.mark.parametrize("make,i", [(a2, 1), (a2, 0), (lambda: LieAlgebra.abelian(3), 2), (lambda: heisenberg()[0], 2)])
def test_identities(make, i):
    assert verify_identities(make(), i).ok


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_product_laws(n):
    rep = verify_product_laws(n)
    assert rep.ok and rep.checked > 0


def test_theta_top_form_is_trace():
    L = a2()
    assert theta_matrix(L, 1, 2) == Matrix([[G(1)]])


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_identities_random(seed):
    L = adapted_basis(random_solvable(random.Random(seed))[0]).algebra
    for i in range(L.dim):
        assert verify_identities(L, i).ok
