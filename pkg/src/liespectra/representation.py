"""Matrix representations of a Lie algebra and their duals.

Matrices follow the homomorphism law ``[M_x, M_y] = M_[x,y]``.  The chain
complexes read them as *right* operators on row vectors, ``e.x = e M_x``;
see :mod:`liespectra.complex` for why that is the reading that closes up.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidRepresentation, NoCommonEigenvector
from .lie_algebra import LieAlgebra, opposite
from .linalg import Matrix, cluster_values
from .scalars import EXACT


class Representation:
    def __init__(self, algebra: LieAlgebra, mats):
        mats = [m if isinstance(m, Matrix) else Matrix(m, backend=EXACT) for m in mats]
        if len(mats) != algebra.dim:
            raise InvalidRepresentation(f"need {algebra.dim} matrices, got {len(mats)}")
        m = mats[0].rows
        if any(M.shape != (m, m) for M in mats):
            raise InvalidRepresentation("representation matrices must all be square of one size")
        if m < 1:
            raise InvalidRepresentation("representation space must be nonzero")
        self.algebra = algebra
        self.mats = tuple(mats)
        self.dim = m

    def mats_in(self, backend):
        if backend == EXACT:
            return self.mats
        return tuple(M.to_float() for M in self.mats)

    def combination(self, coeffs) -> Matrix:
        """Matrix of the algebra element sum_i coeffs[i] x_i."""
        acc = Matrix.zeros(self.dim, self.dim)
        for a, M in zip(coeffs, self.mats):
            if a:
                acc = acc + M.scale(a)
        return acc

    def change_basis(self, B: Matrix, algebra: LieAlgebra | None = None) -> Representation:
        n = self.algebra.dim
        L = algebra if algebra is not None else self.algebra.change_basis(B)
        return Representation(L, [self.combination(B.column(i)) for i in range(n)])

    def restrict(self, basis, subalgebra: LieAlgebra) -> Representation:
        return Representation(subalgebra, [self.combination(v) for v in basis])

    def __eq__(self, other):
        return isinstance(other, Representation) and self.algebra == other.algebra and self.mats == other.mats

    def __repr__(self):
        return f"Representation(dim_L={self.algebra.dim}, dim_E={self.dim})"


@dataclass
class RepValidity:
    violations: list = field(default_factory=list)  # 1-based (i, j)

    @property
    def ok(self):
        return not self.violations


def validate_rep(R: Representation) -> RepValidity:
    """Pairs (i, j) where M_i M_j - M_j M_i differs from sum_h c^h_ij M_h."""
    L = R.algebra
    rep = RepValidity()
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = R.mats[i] @ R.mats[j] - R.mats[j] @ R.mats[i]
            if lhs != R.combination(L.c[i][j]):
                rep.violations.append((i + 1, j + 1))
    return rep


def dual_rep(R: Representation) -> Representation:
    """Transposed matrices acting on E*, as a representation of the opposite algebra."""
    return Representation(opposite(R.algebra), [M.T for M in R.mats])


# ---------------------------------------------------------------- float weights oracle

def _null_vectors(A, tol):
    if A.shape[0] == 0:
        return np.eye(A.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(A)
    scale = max(s[0] if s.size else 0.0, 1.0)
    s_full = np.concatenate([s, np.zeros(A.shape[1] - s.size)])
    keep = [k for k in range(A.shape[1]) if s_full[k] <= tol * scale]
    if not keep:
        keep = [A.shape[1] - 1]
    return vh[keep].conj().T


def _float_common_eigenvector(mats, tol):
    d = mats[0].shape[0]
    comms = [a @ b - b @ a for i, a in enumerate(mats) for b in mats[i + 1:]]
    comms = [c for c in comms if np.max(np.abs(c)) > tol]
    W = _null_vectors(np.vstack(comms), tol) if comms else np.eye(d, dtype=complex)
    for T in mats:
        X = np.linalg.lstsq(W, T @ W, rcond=None)[0]
        lam = cluster_values(list(np.linalg.eigvals(X)))[0]
        W = W @ _null_vectors(X - lam * np.eye(X.shape[0]), tol)
        W, _ = np.linalg.qr(W)
    v = W[:, 0]
    v = v / np.linalg.norm(v)
    for T in mats:
        Tv = T @ v
        lam = np.vdot(v, Tv)
        if np.linalg.norm(Tv - lam * v) > 1e-6 * max(1.0, np.linalg.norm(T)):
            raise NoCommonEigenvector("numerical common eigenvector search did not converge")
    return v


def weights_float_oracle(R: Representation, tol=1e-7):
    """Diagonal weights of a numerical simultaneous triangularization.

    Returns one tuple (f(x_1), ..., f(x_n)) of complex floats per basis vector
    of E, i.e. the weights with multiplicity.
    """
    mats = [M.to_numpy() for M in R.mats]
    weights = []
    while mats[0].shape[0] > 0:
        v = _float_common_eigenvector(mats, tol)
        weights.append(tuple(complex(np.vdot(v, T @ v)) for T in mats))
        # pass to the quotient by span(v): orthonormal complement coordinates
        q, _ = np.linalg.qr(np.column_stack([v, np.eye(len(v), dtype=complex)]))
        Q = q[:, 1:len(v)]
        mats = [Q.conj().T @ T @ Q for T in mats]
    return weights


def annihilates_derived(L: LieAlgebra, weight, tol=1e-7):
    for ci in L.c:
        for cij in ci:
            if abs(sum(complex(x) * w for x, w in zip(cij, weight))) > tol * max(1.0, max(map(abs, weight))):
                return False
    return True
