"""The twisted Chevalley-Eilenberg chain complex (E (x) wedge L, d(f)).

Chain bases are ordered multi-index-major: the basis vector ``e_a (x) x_I``
of degree p sits at position ``index(I) * m + a``.

Action convention: E is a space of row vectors and ``x`` acts on the right,
``e.x = e M_x`` (``action="right"``, the default).  With matrices obeying
``[M_x, M_y] = M_[x,y]`` this is a right module, which is exactly what makes
d o d = 0.  ``action="left"`` (``e.x = M_x e`` on columns) is kept for the
calibration test, which shows it fails the chain condition on A2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import ChainConditionFailed, NotAnIdeal
from .exterior import rho_matrix, sort_sign, wedge_basis, wedge_index
from .lie_algebra import LieAlgebra, check_character, is_ideal, opposite, trace_vector
from .linalg import DEFAULT_TOL, Matrix, rank
from .representation import Representation, dual_rep
from .scalars import EXACT, GaussianRational, to_backend, zero

RIGHT = "right"
LEFT = "left"


def chain_basis(n: int, m: int, p: int):
    """Basis of E (x) wedge^p L as (vector index, multi-index) pairs."""
    return [(a, I) for I in wedge_basis(n, p) for a in range(m)]


def chain_dim(n, m, p):
    return m * comb(n, p) if 0 <= p <= n else 0


def _character(L, f, backend):
    f = tuple(to_backend(x, backend) for x in f)
    check_character(L, f)
    return f


def _action_entries(M, action):
    """Yield (a, b, coeff) with e_a . x = sum_b coeff e_b."""
    rows = M.to_lists()
    m = len(rows)
    for a in range(m):
        for b in range(m):
            x = rows[a][b] if action == RIGHT else rows[b][a]
            if x:
                yield a, b, x


def differential(L: LieAlgebra, R: Representation, f, p: int, backend=EXACT, action=RIGHT,
                 check=True) -> Matrix:
    """Matrix of d_p(f): E (x) wedge^p L -> E (x) wedge^(p-1) L."""
    n, m = L.dim, R.dim
    if check:
        f = _character(L, f, backend)
    else:
        f = tuple(to_backend(x, backend) for x in f)
    rows_out, cols_out = chain_dim(n, m, p - 1), chain_dim(n, m, p)
    if p <= 0 or p > n:
        return Matrix.zeros(rows_out, cols_out, backend)
    z = zero(backend)
    out = [[z] * cols_out for _ in range(rows_out)]
    src = wedge_basis(n, p)
    tgt = wedge_index(n, p - 1)
    mats = R.mats_in(backend)
    acts = [list(_action_entries(M, action)) for M in mats]
    c = L.constants(backend)
    for col_I, I in enumerate(src):
        # sum_k (-1)^(k+1) e (x_k - f(x_k)) <... x_k omitted ...>
        for k, ik in enumerate(I):
            J = tgt[I[:k] + I[k + 1:]]
            sgn = 1 if k % 2 == 0 else -1
            fk = f[ik]
            for a in range(m):
                col = col_I * m + a
                if fk:
                    r = out[J * m + a]
                    r[col] = r[col] - fk if sgn > 0 else r[col] + fk
            for a, b, x in acts[ik]:
                col = col_I * m + a
                r = out[J * m + b]
                r[col] = r[col] + x if sgn > 0 else r[col] - x
        # sum_{k<l} (-1)^(k+l) e <[x_k, x_l] ^ ... both omitted ...>
        for k in range(p):
            for l in range(k + 1, p):
                rest = I[:k] + I[k + 1:l] + I[l + 1:]
                base_sign = 1 if (k + l) % 2 == 0 else -1
                for h, coeff in enumerate(c[I[k]][I[l]]):
                    if not coeff:
                        continue
                    s, K = sort_sign((h,) + rest)
                    if not s:
                        continue
                    row_K = tgt[K]
                    v = coeff if s * base_sign > 0 else -coeff
                    for a in range(m):
                        r = out[row_K * m + a]
                        col = col_I * m + a
                        r[col] = r[col] + v
    return Matrix(out, backend=backend, cols=cols_out) if backend != EXACT else Matrix._raw(out, rows_out, cols_out, backend)


@dataclass
class HomologyProfile:
    dims: tuple

    @property
    def nonzero(self):
        return any(self.dims)

    def euler(self):
        return sum((-1) ** p * d for p, d in enumerate(self.dims))


@dataclass
class ChainComplex:
    n: int
    m: int
    f: tuple
    backend: str
    differentials: dict = field(repr=False)   # p -> Matrix, p = 1..n
    tol: float = DEFAULT_TOL

    def d(self, p):
        if 1 <= p <= self.n:
            return self.differentials[p]
        return Matrix.zeros(chain_dim(self.n, self.m, p - 1), chain_dim(self.n, self.m, p), self.backend)

    def shapes(self):
        return [self.d(p).shape for p in range(1, self.n + 1)]

    def ranks(self):
        if not hasattr(self, "_ranks"):
            self._ranks = {p: rank(self.d(p), self.tol) for p in range(1, self.n + 1)}
        return self._ranks


def _is_zero(M, backend, tol, scale=1.0):
    if backend == EXACT:
        return M.is_zero()
    return M.is_zero(tol * max(1.0, scale) * 10)


def build_complex(L, R, f, backend=EXACT, action=RIGHT, tol=DEFAULT_TOL) -> ChainComplex:
    """All differentials of (E (x) wedge L, d(f)), with d_(p-1) d_p = 0 enforced."""
    f = _character(L, f, backend)
    ds = {p: differential(L, R, f, p, backend, action, check=False) for p in range(1, L.dim + 1)}
    for p in range(2, L.dim + 1):
        prod = ds[p - 1] @ ds[p]
        scale = 1.0
        if backend != EXACT:
            a, b = ds[p - 1].to_numpy(), ds[p].to_numpy()
            scale = (np.abs(a).max() if a.size else 0) * (np.abs(b).max() if b.size else 0)
        if not _is_zero(prod, backend, tol, scale):
            raise ChainConditionFailed(f"d_{p - 1} d_{p} != 0 ({action} action)")
    return ChainComplex(L.dim, R.dim, f, backend, ds, tol)


def homology_dims(C: ChainComplex) -> HomologyProfile:
    """dim H_p = (dim C_p - rank d_p) - rank d_(p+1), p = 0..n."""
    rk = C.ranks()
    dims = []
    for p in range(C.n + 1):
        r_out = rk.get(p, 0)
        r_in = rk.get(p + 1, 0)
        dims.append(chain_dim(C.n, C.m, p) - r_out - r_in)
    return HomologyProfile(tuple(dims))


def adjoint_complex(C: ChainComplex):
    """Transposes d*_p of every differential; d*_p maps degree p-1 to degree p."""
    return {p: C.d(p).T for p in range(1, C.n + 1)}


def adjoint_homology_dims(C: ChainComplex) -> HomologyProfile:
    """Cohomology of the adjoint (cochain) complex, by ranks of the transposes."""
    adj = adjoint_complex(C)
    rk = {p: rank(M, C.tol) for p, M in adj.items()}
    dims = []
    for p in range(C.n + 1):
        # H^p = ker d*_(p+1) / im d*_p
        dims.append(chain_dim(C.n, C.m, p) - rk.get(p + 1, 0) - rk.get(p, 0))
    return HomologyProfile(tuple(dims))


# ---------------------------------------------------------------- split form

def _hyperplane(L):
    n = L.dim
    return [[int(a == i) for a in range(n)] for i in range(n - 1)]


def codim_one_ideal(L: LieAlgebra):
    """Subalgebra spanned by x_1..x_(n-1); raises NotAnIdeal if it is not an ideal."""
    if L.dim < 2:
        raise NotAnIdeal("no codimension-one ideal in a one-dimensional algebra")
    basis = [[GaussianRational(x) for x in v] for v in _hyperplane(L)]
    if not is_ideal(L, basis):
        raise NotAnIdeal("span(x_1..x_(n-1)) is not an ideal")
    n = L.dim
    c = [[list(L.c[i][j][: n - 1]) for j in range(n - 1)] for i in range(n - 1)]
    return LieAlgebra(c, L.names[: n - 1])


def restrict_rep_to_hyperplane(R: Representation, sub: LieAlgebra) -> Representation:
    return Representation(sub, R.mats[: sub.dim])


def _embed_index(n, p):
    """Positions of wedge^p L_(n-1) (indices < n-1) and of wedge^(p-1) L_(n-1) ^ x_n in wedge^p L."""
    idx = wedge_index(n, p)
    inner = [idx[I] for I in wedge_basis(n - 1, p)] if p <= n - 1 else []
    outer = [idx[I + (n - 1,)] for I in wedge_basis(n - 1, p - 1)] if p >= 1 else []
    return inner, outer


def _expand(positions, m):
    return [pos * m + a for pos in positions for a in range(m)]


def split_operator(L, R, f, p, backend=EXACT):
    """L_p on E (x) wedge^(p-1) L_(n-1): minus the twisted action of x_n plus theta(x_n)."""
    codim_one_ideal(L)
    f = _character(L, f, backend)
    n, m = L.dim, R.dim
    last = n - 1
    q = p - 1
    size = chain_dim(n - 1, m, q)
    z = zero(backend)
    out = [[z] * size for _ in range(size)]
    idx = wedge_index(n - 1, q)
    Mn = R.mats_in(backend)[last]
    fn = f[last]
    c = L.constants(backend)
    for col_I, I in enumerate(wedge_basis(n - 1, q)):
        for a in range(m):
            col = col_I * m + a
            out[col][col] = out[col][col] + fn
        for a, b, x in _action_entries(Mn, RIGHT):
            r = out[col_I * m + b]
            r[col_I * m + a] = r[col_I * m + a] - x
        # theta(x_n) on the wedge factor
        for t, j in enumerate(I):
            for h, coeff in enumerate(c[last][j]):
                if not coeff:
                    continue
                s, K = sort_sign(I[:t] + (h,) + I[t + 1:])
                if not s:
                    continue
                v = coeff if s > 0 else -coeff
                for a in range(m):
                    r = out[idx[K] * m + a]
                    r[col_I * m + a] = r[col_I * m + a] + v
    return Matrix(out, backend=backend, cols=size) if size else Matrix.zeros(0, 0, backend)


@dataclass
class CheckReport:
    failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self):
        return not self.failures


def verify_split(L, R, f, backend=EXACT) -> CheckReport:
    """Block checks of the split form of d_p(f) against the full differential.

    On E (x) wedge^p L_(n-1): d_p(f) equals the ideal's own differential.
    On a ^ x_n: d_p(f)(a ^ x_n) = (-1)^p L_p(a) + (d~_(p-1)(a)) ^ x_n.
    """
    sub = codim_one_ideal(L)
    Rs = restrict_rep_to_hyperplane(R, sub)
    n, m = L.dim, R.dim
    fs = tuple(f[: n - 1])
    rep = CheckReport()
    for p in range(1, n + 1):
        D = differential(L, R, f, p, backend)
        in_src, out_src = _embed_index(n, p)
        in_tgt, out_tgt = _embed_index(n, p - 1)
        in_src, out_src, in_tgt, out_tgt = (_expand(x, m) for x in (in_src, out_src, in_tgt, out_tgt))
        # inner block and its vanishing component along ... ^ x_n
        Dsub = differential(sub, Rs, fs, p, backend)
        rep.checked += 1
        if in_src and (D.submatrix(in_tgt, in_src) != Dsub or
                       (out_tgt and not D.submatrix(out_tgt, in_src).is_zero())):
            rep.failures.append(("restriction", p))
        # outer block
        Lp = split_operator(L, R, f, p, backend)
        sign = 1 if p % 2 == 0 else -1
        rep.checked += 1
        if D.submatrix(in_tgt, out_src) != (Lp if sign > 0 else -Lp):
            rep.failures.append(("split-Lp", p))
        if p >= 2:
            Dsub_prev = differential(sub, Rs, fs, p - 1, backend)
            rep.checked += 1
            if D.submatrix(out_tgt, out_src) != Dsub_prev:
                rep.failures.append(("split-tail", p))
    return rep


def ses_maps(L, R, f, backend=EXACT):
    """Inclusion i_k and projection p_k of the short exact sequence, per degree k.

    i_k: E (x) wedge^k L_(n-1) -> E (x) wedge^k L;
    p_k: E (x) wedge^k L -> E (x) wedge^(k-1) L_(n-1),
    p(e <x_I ^ x_n>) = (-1)^(k-1) e <x_I>, zero on the L_(n-1) part.
    """
    codim_one_ideal(L)
    n, m = L.dim, R.dim
    one = to_backend(1, backend)
    maps = {}
    for k in range(n + 1):
        inner, outer = _embed_index(n, k)
        inner, outer = _expand(inner, m), _expand(outer, m)
        big = chain_dim(n, m, k)
        i_rows = [[zero(backend)] * len(inner) for _ in range(big)]
        for col, pos in enumerate(inner):
            i_rows[pos][col] = one
        s = one if (k - 1) % 2 == 0 else -one
        p_rows = [[zero(backend)] * big for _ in range(len(outer))]
        for row, pos in enumerate(outer):
            p_rows[row][pos] = s
        i_mat = Matrix(i_rows, backend=backend, cols=len(inner)) if big else Matrix.zeros(0, len(inner), backend)
        p_mat = Matrix(p_rows, backend=backend, cols=big) if outer else Matrix.zeros(0, big, backend)
        maps[k] = (i_mat, p_mat)
    return maps


def verify_ses(L, R, f, backend=EXACT) -> CheckReport:
    """Degreewise exactness and the chain-map squares of the short exact sequence.

    The projection lands in the quotient complex shifted down one degree,
    whose differential is -d~; so the square reads p d = -d~ p.
    """
    sub = codim_one_ideal(L)
    Rs = restrict_rep_to_hyperplane(R, sub)
    n = L.dim
    fs = tuple(f[: n - 1])
    maps = ses_maps(L, R, f, backend)
    rep = CheckReport()
    for k in range(n + 1):
        i_k, p_k = maps[k]
        mid = chain_dim(n, R.dim, k)
        rep.checked += 1
        if rank(i_k) + rank(p_k) != mid or rank(i_k) != i_k.cols or rank(p_k) != p_k.rows:
            rep.failures.append(("exactness-dims", k))
        if i_k.cols and p_k.rows:
            rep.checked += 1
            if not (p_k @ i_k).is_zero():
                rep.failures.append(("p-after-i", k))
        if k >= 1:
            d = differential(L, R, f, k, backend)
            ds = differential(sub, Rs, fs, k, backend)
            rep.checked += 1
            if i_k.cols and d @ i_k != maps[k - 1][0] @ ds:
                rep.failures.append(("i-chain-map", k))
            ds_prev = differential(sub, Rs, fs, k - 1, backend)
            lhs = maps[k - 1][1] @ d
            rhs = -(ds_prev @ p_k)
            rep.checked += 1
            if lhs != rhs:
                rep.failures.append(("p-chain-map", k))
    return rep


# ---------------------------------------------------------------- rho diagram

def _kron_identity(A: Matrix, m: int) -> Matrix:
    """A (x) 1_m in the multi-index-major ordering."""
    z = zero(A.backend)
    out = [[z] * (A.cols * m) for _ in range(A.rows * m)]
    for i in range(A.rows):
        for j in range(A.cols):
            x = A[i, j]
            if x:
                for a in range(m):
                    out[i * m + a][j * m + a] = x
    return Matrix(out, backend=A.backend, cols=A.cols * m) if A.rows * m else Matrix.zeros(0, A.cols * m, A.backend)


def rho_diagram_check(L, R, f, backend=EXACT) -> CheckReport:
    """d'_(n-p)(g) rho w = rho d*_(p+1)(f) for every p, with g = f + trace vector.

    ``L`` must be in an adapted basis.  The primed side is the complex of the
    opposite algebra acting on E* through the transposed matrices.
    """
    n, m = L.dim, R.dim
    f = _character(L, f, backend)
    tv = tuple(to_backend(x, backend) for x in trace_vector(L))
    g = tuple(a + b for a, b in zip(f, tv))
    Lp, Rp = opposite(L), dual_rep(R)
    rep = CheckReport()
    rhos = [_kron_identity(rho_matrix(n, p, backend), m) for p in range(n + 1)]
    for p in range(n):
        d_star = differential(L, R, f, p + 1, backend).T
        d_prime = differential(Lp, Rp, g, n - p, backend)
        w = 1 if p % 2 == 0 else -1
        lhs = d_prime @ (rhos[p] if w > 0 else -rhos[p])
        rhs = rhos[p + 1] @ d_star
        rep.checked += 1
        ok = lhs == rhs if backend == EXACT else lhs.allclose(rhs)
        if not ok:
            rep.failures.append(("rho-diagram", p))
    return rep
