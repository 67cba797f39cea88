import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import a2_r2, heisenberg, one_dim, random_character, random_solvable
from liespectra.errors import ChainConditionFailed, NotACharacter, NotAnIdeal
from liespectra.koszul import (
    LEFT,
    adjoint_complex,
    adjoint_homology_dims,
    build_complex,
    chain_basis,
    differential,
    homology_dims,
    rho_diagram_check,
    ses_maps,
    split_operator,
    verify_ses,
    verify_split,
)
from liespectra.lie_algebra import LieAlgebra, adapted_basis
from liespectra.linalg import Matrix, rank
from liespectra.representation import Representation
from liespectra.scalars import GaussianRational as G


def test_chain_basis():
    assert chain_basis(2, 2, 1) == [(0, (0,)), (1, (0,)), (0, (1,)), (1, (1,))]
    assert chain_basis(2, 3, 0) == [(0, ()), (1, ()), (2, ())]
    assert len(chain_basis(3, 2, 3)) == 2


def test_one_generator():
    L, R = one_dim((1, 2))
    assert differential(L, R, (G(1),), 1) == Matrix.diag([G(0), G(1)])
    C = build_complex(L, R, (G(1),))
    assert homology_dims(C).dims == (1, 1)


def test_zero_abelian():
    L = LieAlgebra.abelian(2)
    R = Representation(L, [Matrix.zeros(2, 2)] * 2)
    C = build_complex(L, R, (G(0), G(0)))
    assert all(C.d(p).is_zero() for p in range(1, 3))
    assert homology_dims(C).dims == tuple(2 * comb(2, p) for p in range(3))


def test_shapes():
    L, R = a2_r2()
    C = build_complex(L, R, (G(0), G(1)))
    assert C.shapes() == [(2, 4), (4, 2)]
    L, R = heisenberg()
    C = build_complex(L, R, (G(0),) * 3)
    assert C.shapes() == [(3, 9), (9, 9), (9, 3)]
    assert C.d(0).shape == (0, 3) and C.d(4).shape == (3, 0)


def test_a2_golden_profiles():
    L, R = a2_r2()
    # golden values: d_1 at f2 = 0 is checked entrywise below, the rest by rank-nullity
    got = {f2: homology_dims(build_complex(L, R, (G(0), G(f2)))).dims for f2 in (0, 1, -1, 2)}
    assert got == {0: (0, 0, 0), 1: (1, 1, 0), -1: (0, 1, 1), 2: (0, 0, 0)}


def test_a2_d1_by_hand():
    L, R = a2_r2()
    # columns: e1<x1>, e2<x1>, e1<x2>, e2<x2>; right action e.x = e M_x
    d1 = differential(L, R, (G(0), G(0)), 1)
    assert d1 == Matrix([[0, 0, 1, 0], [1, 0, 0, 0]])


def test_heisenberg_profile():
    L, R = heisenberg()
    assert homology_dims(build_complex(L, R, (G(0),) * 3)).dims == (1, 2, 2, 1)


def test_non_character_rejected():
    L, R = a2_r2()
    with pytest.raises(NotACharacter):
        build_complex(L, R, (G(1), G(0)))


def test_left_reading_breaks_chain_condition():
    L, R = a2_r2()
    with pytest.raises(ChainConditionFailed):
        build_complex(L, R, (G(0), G(0)), action=LEFT)


def test_float_backend_matches():
    L, R = heisenberg()
    C = build_complex(L, R, (0j, 0j, 0j), backend="float")
    assert homology_dims(C).dims == (1, 2, 2, 1)


def test_adjoint():
    L, R = a2_r2()
    C = build_complex(L, R, (G(0), G(1)))
    adj = adjoint_complex(C)
    for p in range(1, 3):
        assert adj[p].shape == tuple(reversed(C.d(p).shape))
        assert rank(adj[p]) == rank(C.d(p))
    assert (adj[2] @ adj[1]).is_zero()
    assert adjoint_homology_dims(C) == homology_dims(C)


def test_split_examples():
    L, R = a2_r2()
    f = (G(0), G(3))
    L1 = split_operator(L, R, f, 1)
    assert L1 == -(R.mats[1].T - Matrix.identity(2).scale(G(3)))
    assert verify_split(L, R, f).ok
    A = LieAlgebra.abelian(2)
    RA = Representation(A, [Matrix.diag([G(1), G(2)]), Matrix.diag([G(3), G(5)])])
    for p in (1, 2):
        expected = -(RA.mats[1].T - Matrix.identity(2).scale(G(1)))
        got = split_operator(A, RA, (G(0), G(1)), p)
        assert got == expected


def test_split_needs_ideal():
    # (x2, x1) ordering: span of the first vector is not an ideal
    L = LieAlgebra.from_brackets(2, {(0, 1): {1: 1}})
    R = Representation(L, [[[1, 0], [0, 0]], [[0, 1], [0, 0]]])
    with pytest.raises(NotAnIdeal):
        split_operator(L, R, (G(0), G(0)), 1)
    with pytest.raises(NotAnIdeal):
        ses_maps(L, R, (G(0), G(0)))


@pytest.mark.parametrize("f2", [0, 1, -1])
def test_ses_a2(f2):
    L, R = a2_r2()
    f = (G(0), G(f2))
    assert verify_ses(L, R, f).ok
    maps = ses_maps(L, R, f)
    for k, (i_k, p_k) in maps.items():
        if i_k.cols and p_k.rows:
            assert (p_k @ i_k).is_zero()


@pytest.mark.parametrize("f2", [0, 1, 3])
def test_rho_diagram_a2(f2):
    L, R = a2_r2()
    assert rho_diagram_check(L, R, (G(0), G(f2))).ok


def test_rho_diagram_nilpotent_and_abelian():
    L, R = heisenberg()
    assert rho_diagram_check(L, R, (G(0),) * 3).ok
    A = LieAlgebra.abelian(2)
    RA = Representation(A, [Matrix.diag([G(1), G(2)]), Matrix([[0, 1], [0, 0]])])
    assert rho_diagram_check(A, RA, (G(1), G(0))).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_complexes(seed):
    rng = random.Random(seed)
    L0, R0 = random_solvable(rng)
    ab = adapted_basis(L0)
    L, R = ab.algebra, R0.change_basis(ab.B, ab.algebra)
    f = random_character(rng, L)
    C = build_complex(L, R, f)
    for p in range(2, L.dim + 1):
        assert (C.d(p - 1) @ C.d(p)).is_zero()
    prof = homology_dims(C)
    assert prof.euler() == 0
    assert adjoint_homology_dims(C) == prof
    if L.dim >= 2:
        assert verify_split(L, R, f).ok
        assert verify_ses(L, R, f).ok
    assert rho_diagram_check(L, R, f).ok
    if not L.is_abelian():
        with pytest.raises(NotACharacter):
            build_complex(L, R, random_character(rng, L, on_derived=True))
