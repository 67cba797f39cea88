"""Deterministic test corpus: named examples plus seeded random generators."""

from __future__ import annotations

import random

from liespectra.lie_algebra import LieAlgebra, ad_matrix
from liespectra.linalg import Matrix, kernel_basis, solve_coordinates, span_basis
from liespectra.representation import Representation
from liespectra.scalars import GaussianRational as G


def unit_matrix(m, i, j):
    return [[1 if (a, b) == (i, j) else 0 for b in range(m)] for a in range(m)]


def a2():
    return LieAlgebra.from_brackets(2, {(1, 0): {0: 1}}, ["x1", "x2"])


def a2_r2():
    L = a2()
    return L, Representation(L, [[[0, 1], [0, 0]], [[1, 0], [0, 0]]])


def a2_reps():
    """R2, the adjoint representation, a 3-dim chain and a shifted 4-dim sum."""
    L = a2()
    c = G(1, 2) + G(0, 1)
    chain = Representation(L, [
        [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
        [[2, 0, 0], [0, 1, 0], [0, 0, 0]],
    ])
    shifted = Representation(L, [
        Matrix([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]]),
        Matrix.diag([G(1), G(0), c + 1, c]),
    ])
    return [
        ("R2", a2_r2()[1]),
        ("adjoint", Representation(L, [ad_matrix(L, 0), ad_matrix(L, 1)])),
        ("chain3", chain),
        ("shifted4", shifted),
    ]


def heisenberg():
    L = LieAlgebra.from_brackets(3, {(2, 1): {0: 1}}, ["z", "x", "y"])
    R = Representation(L, [unit_matrix(3, 0, 2), unit_matrix(3, 1, 2), unit_matrix(3, 0, 1)])
    return L, R


def abelian_diag():
    L = LieAlgebra.abelian(2)
    return L, Representation(L, [[[1, 0], [0, 2]], [[3, 0], [0, 4]]])


def one_dim(diag=(1, 2)):
    L = LieAlgebra.abelian(1)
    return L, Representation(L, [Matrix.diag([G(x) for x in diag])])


# ---------------------------------------------------------------- random matrix Lie algebras

def _comm(A, B):
    return A @ B - B @ A


def _flat(M):
    return [x for row in M.to_lists() for x in row]


def matrix_lie_algebra(gens, max_dim):
    """Span of ``gens`` closed under commutators, or None if it exceeds max_dim."""
    m = gens[0].rows
    mats = []

    def add(M):
        vecs = [_flat(X) for X in mats] + [_flat(M)]
        if len(span_basis(vecs, m * m)) > len(mats):
            mats.append(M)
            return True
        return False

    for g in gens:
        add(g)
    changed = True
    while changed:
        changed = False
        if len(mats) > max_dim:
            return None
        for A in list(mats):
            for B in list(mats):
                if add(_comm(A, B)):
                    changed = True
                    if len(mats) > max_dim:
                        return None
    if not mats:
        return None
    flats = [_flat(X) for X in mats]
    n = len(mats)
    c = [[solve_coordinates(flats, _flat(_comm(mats[i], mats[j]))) for j in range(n)] for i in range(n)]
    L = LieAlgebra(c)
    return L, Representation(L, mats)


def _rand_upper(rng, m, strict=False, lo=-2, hi=2):
    rows = []
    for a in range(m):
        row = []
        for b in range(m):
            if b > a or (b == a and not strict):
                row.append(rng.randint(lo, hi))
            else:
                row.append(0)
        rows.append(row)
    return Matrix(rows)


def random_solvable(rng, max_dim=4, m_choices=(2, 3), nilpotent=False, tries=200):
    """A random solvable (or nilpotent) matrix Lie algebra with its defining representation."""
    for _ in range(tries):
        m = rng.choice(m_choices)
        k = rng.randint(1, 3)
        gens = [_rand_upper(rng, m, strict=nilpotent) for _ in range(k)]
        if all(g.is_zero() for g in gens):
            continue
        got = matrix_lie_algebra([g for g in gens if not g.is_zero()], max_dim)
        if got is not None and not (nilpotent is False and got[0].is_abelian() and rng.random() < 0.7):
            return got
    raise RuntimeError("could not generate a random algebra")


def random_character(rng, L, on_derived=False):
    """A random f with f(L^2) = 0, or a functional violating it when ``on_derived``."""
    n = L.dim
    rows = [list(L.c[i][j]) for i in range(n) for j in range(i + 1, n)]
    ann = kernel_basis(Matrix(rows, cols=n)) if rows else [[G(int(a == i)) for a in range(n)] for i in range(n)]
    f = [G(0)] * n
    for v in ann:
        coef = G(rng.randint(-3, 3), rng.randint(-1, 1))
        f = [a + coef * b for a, b in zip(f, v)]
    if on_derived:
        # push off the annihilator along a bracket direction
        nz = next(r for r in rows if any(r))
        h = next(i for i, x in enumerate(nz) if x)
        bump = [G(0)] * n
        bump[h] = G(1)
        f = [a + b for a, b in zip(f, bump)]
    return tuple(f)


def random_commuting(rng, count=None, dim=None):
    """2-3 commuting rational matrices: polynomials in one upper-triangular matrix, conjugated."""
    d = dim or rng.randint(2, 5)
    count = count or rng.randint(2, 3)
    T = _rand_upper(rng, d, lo=-2, hi=2)
    # a few repeated diagonal entries make Jordan structure likely
    mats = []
    for _ in range(count):
        coeffs = [rng.randint(-2, 2) for _ in range(3)]
        P = Matrix.identity(d).scale(G(coeffs[0])) + T.scale(G(coeffs[1])) + (T @ T).scale(G(coeffs[2]))
        mats.append(P)
    # conjugate by a unimodular lower-times-upper matrix
    U = Matrix([[1 if a == b else (rng.randint(-1, 1) if b > a else 0) for b in range(d)] for a in range(d)])
    Lw = Matrix([[1 if a == b else (rng.randint(-1, 1) if b < a else 0) for b in range(d)] for a in range(d)])
    S = Lw @ U
    from liespectra.linalg import inverse
    Si = inverse(S)
    return [S @ M @ Si for M in mats]


def corpus(seed=2024, random_count=4):
    """Named instances used by the cross-cutting acceptance checks."""
    rng = random.Random(seed)
    out = [("A2/R2", *a2_r2())]
    for name, R in a2_reps()[1:]:
        out.append((f"A2/{name}", R.algebra, R))
    out.append(("Heisenberg", *heisenberg()))
    out.append(("abelian-diag", *abelian_diag()))
    out.append(("one-dim", *one_dim()))
    for i in range(random_count):
        out.append((f"random-solvable-{i}", *random_solvable(rng)))
    for i in range(2):
        out.append((f"random-nilpotent-{i}", *random_solvable(rng, nilpotent=True, m_choices=(3, 4))))
    return out
