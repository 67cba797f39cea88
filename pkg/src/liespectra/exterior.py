"""Exterior algebra over L and L*: wedge bases and the operators on them.

Multi-indices are 0-based sorted tuples.  ``y_I`` denotes the basis of
``wedge^p L*`` dual to ``x_I`` under the determinant pairing, so the dual
of an operator is the transpose of its matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

from .lie_algebra import LieAlgebra, ad_matrix, opposite
from .linalg import Matrix
from .scalars import EXACT, to_backend


@lru_cache(maxsize=None)
def wedge_basis(n: int, p: int):
    """All p-subsets of range(n) in lexicographic order."""
    if not 0 <= p <= n:
        raise ValueError(f"wedge degree {p} out of range 0..{n}")
    return tuple(combinations(range(n), p))


@lru_cache(maxsize=None)
def wedge_index(n: int, p: int):
    return {I: k for k, I in enumerate(wedge_basis(n, p))}


def sort_sign(word):
    """(sign, sorted tuple) of a wedge word; (0, None) if an index repeats."""
    word = list(word)
    if len(set(word)) != len(word):
        return 0, None
    sign = 1
    # insertion sort, counting transpositions
    for a in range(1, len(word)):
        b = a
        while b > 0 and word[b - 1] > word[b]:
            word[b - 1], word[b] = word[b], word[b - 1]
            sign = -sign
            b -= 1
    return sign, tuple(word)


@dataclass
class ExteriorOperator:
    source: int
    target: int
    matrix: Matrix


def _empty(n, p, q, backend):
    return Matrix.zeros(comb(n, q), comb(n, p), backend).to_lists()


def theta_matrix(L: LieAlgebra, i: int, p: int, backend=EXACT) -> Matrix:
    """Derivation of wedge^p L extending ad(x_i)."""
    n = L.dim
    out = _empty(n, p, p, backend)
    idx = wedge_index(n, p)
    ci = L.constants(backend)[i]
    for col, J in enumerate(wedge_basis(n, p)):
        for t, j in enumerate(J):
            for h, coeff in enumerate(ci[j]):
                if not coeff:
                    continue
                sign, K = sort_sign(J[:t] + (h,) + J[t + 1:])
                if sign:
                    row = idx[K]
                    out[row][col] = out[row][col] + (coeff if sign > 0 else -coeff)
    return Matrix(out, backend=backend)


def epsilon_matrix(n: int, U, p: int, backend=EXACT) -> Matrix:
    """Left multiplication x_J -> x_U ^ x_J from degree p to p + |U|."""
    q = p + len(U)
    out = _empty(n, p, q, backend)
    if q > n:
        return Matrix.zeros(0, comb(n, p), backend)
    idx = wedge_index(n, q)
    o = to_backend(1, backend)
    for col, J in enumerate(wedge_basis(n, p)):
        sign, K = sort_sign(tuple(U) + J)
        if sign:
            out[idx[K]][col] = o if sign > 0 else -o
    return Matrix(out, backend=backend, cols=comb(n, p))


def iota_matrix(n: int, A, q: int, backend=EXACT) -> Matrix:
    """Contraction by y_A on wedge^q L, the dual of left multiplication by y_A.

    <y_B, iota(y_A) x_J> = <y_A ^ y_B, x_J>.
    """
    return epsilon_matrix(n, A, q - len(A), backend).T


def rho_matrix(n: int, p: int, backend=EXACT) -> Matrix:
    """rho(a) = iota(a) applied to the top form x_1 ^ ... ^ x_n, wedge^p L* -> wedge^(n-p) L."""
    cols = []
    for I in wedge_basis(n, p):
        # iota(y_I) maps wedge^n -> wedge^(n-p); apply it to the single top vector
        cols.append(iota_matrix(n, I, n, backend).column(0))
    return Matrix.from_columns(cols, backend=backend) if cols else Matrix.zeros(comb(n, n - p), 0, backend)


def parity_matrix(n: int, p: int, backend=EXACT) -> Matrix:
    """(-1)^p times the identity on wedge^p."""
    ident = Matrix.identity(comb(n, p), backend)
    return ident if p % 2 == 0 else -ident


def wedge_product_of(n, a_word, b_word):
    """x_A ^ x_B as (sign, K)."""
    return sort_sign(tuple(a_word) + tuple(b_word))


@dataclass
class IdentityReport:
    failures: list = field(default_factory=list)   # (label, degree)
    checked: int = 0

    @property
    def ok(self):
        return not self.failures


def _epsilon_of_vector(n, vec, p, q, backend):
    """Left multiplication by sum_K vec[K] x_K (vec in degree p) from degree q."""
    acc = Matrix.zeros(comb(n, min(p + q, n)) if p + q <= n else 0, comb(n, q), backend)
    for K, coeff in zip(wedge_basis(n, p), vec):
        if coeff:
            acc = acc + epsilon_matrix(n, K, q, backend).scale(coeff)
    return acc


def verify_identities(L: LieAlgebra, i: int, backend=EXACT) -> IdentityReport:
    """Check Leibniz, theta/parity commutation and the two rho-intertwining laws.

    Every identity is assembled side by side as exact matrices in every degree.
    """
    n = L.dim
    rep = IdentityReport()
    thetas = [theta_matrix(L, i, p, backend) for p in range(n + 1)]
    thetas_opp = [theta_matrix(opposite(L), i, p, backend) for p in range(n + 1)]
    tr = to_backend(ad_matrix(L, i).trace(), backend)

    # Leibniz: theta(a ^ b) = theta(a) ^ b + a ^ theta(b)
    for p in range(n + 1):
        for q in range(n + 1 - p):
            for a_col, A in enumerate(wedge_basis(n, p)):
                lhs = thetas[p + q] @ epsilon_matrix(n, A, q, backend)
                ta = thetas[p].column(a_col)
                rhs = _epsilon_of_vector(n, ta, p, q, backend) + epsilon_matrix(n, A, q, backend) @ thetas[q]
                rep.checked += 1
                if lhs != rhs:
                    rep.failures.append(("leibniz", (p, q)))
                    break

    for p in range(n + 1):
        w = parity_matrix(n, p, backend)
        rep.checked += 1
        if thetas[p] @ w != w @ thetas[p]:
            rep.failures.append(("theta-parity", p))

        rho = rho_matrix(n, p, backend)
        theta_star = -thetas[p].T
        lhs = rho @ theta_star
        rep.checked += 1
        if lhs != thetas[n - p] @ rho - rho.scale(tr):
            rep.failures.append(("rho-theta", p))
        rep.checked += 1
        if lhs != -((thetas_opp[n - p] @ rho) + rho.scale(tr)):
            rep.failures.append(("rho-theta-opposite", p))

    top = thetas[n]
    rep.checked += 1
    if top != Matrix.identity(1, backend).scale(tr):
        rep.failures.append(("theta-top-form", n))
    return rep


def verify_product_laws(n: int, backend=EXACT) -> IdentityReport:
    """epsilon(u ^ v) = epsilon(u) epsilon(v) and its dual iota(u ^ v) = iota(v) iota(u)."""
    rep = IdentityReport()
    for pu in range(n + 1):
        for pv in range(n + 1 - pu):
            for U in wedge_basis(n, pu):
                for V in wedge_basis(n, pv):
                    sign, K = sort_sign(U + V)
                    for q in range(n + 1 - pu - pv):
                        lhs = epsilon_matrix(n, K, q, backend).scale(sign) if sign else \
                            Matrix.zeros(comb(n, q + pu + pv), comb(n, q), backend)
                        rhs = epsilon_matrix(n, U, q + pv, backend) @ epsilon_matrix(n, V, q, backend)
                        rep.checked += 1
                        if lhs != rhs:
                            rep.failures.append(("epsilon", (U, V, q)))
                        r = q + pu + pv
                        ilhs = iota_matrix(n, K, r, backend).scale(sign) if sign else \
                            Matrix.zeros(comb(n, q), comb(n, r), backend)
                        irhs = iota_matrix(n, V, r - pu, backend) @ iota_matrix(n, U, r, backend)
                        rep.checked += 1
                        if ilhs != irhs:
                            rep.failures.append(("iota", (U, V, r)))
    return rep
