"""Dense matrices over either backend: rank, kernels, eigenvalues.

Exact ranks use fraction-free (Bareiss) elimination over the Gaussian
integers after clearing denominators row by row; float ranks use the SVD.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import BackendMismatch, IrrationalSpectrum
from .scalars import EXACT, FLOAT, ZERO, GaussianRational, backend_of, one, to_backend, zero

DEFAULT_TOL = 1e-9


class Matrix:
    """Immutable dense matrix whose entries all live in one backend."""

    __slots__ = ("rows", "cols", "backend", "_a")

    def __init__(self, rows, backend=None, cols=None):
        data = [list(r) for r in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix rows")
        if backend is None:
            backend = _infer_backend(data)
        data = [[_lift(x, backend) for x in r] for r in data]
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "_a", data)

    @classmethod
    def _raw(cls, data, rows, cols, backend):
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "backend", backend)
        object.__setattr__(m, "_a", data)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, rows, cols, backend=EXACT):
        z = zero(backend)
        return cls._raw([[z] * cols for _ in range(rows)], rows, cols, backend)

    @classmethod
    def identity(cls, n, backend=EXACT):
        z, o = zero(backend), one(backend)
        return cls._raw([[o if i == j else z for j in range(n)] for i in range(n)], n, n, backend)

    @classmethod
    def diag(cls, values, backend=EXACT):
        n = len(values)
        z = zero(backend)
        data = [[to_backend(values[i], backend) if i == j else z for j in range(n)] for i in range(n)]
        return cls._raw(data, n, n, backend)

    @classmethod
    def from_columns(cls, columns, nrows=None, backend=None):
        columns = [list(c) for c in columns]
        if not columns:
            return cls.zeros(nrows or 0, 0, backend or EXACT)
        return cls([list(r) for r in zip(*columns)], backend=backend)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        """Row-major tuple of entries."""
        return tuple(x for r in self._a for x in r)

    def __getitem__(self, idx):
        i, j = idx
        return self._a[i][j]

    def row(self, i):
        return list(self._a[i])

    def column(self, j):
        return [r[j] for r in self._a]

    def to_lists(self):
        return [list(r) for r in self._a]

    def to_numpy(self):
        return np.array([[complex(x) for x in r] for r in self._a], dtype=complex).reshape(self.rows, self.cols)

    def to_float(self):
        if self.backend == FLOAT:
            return self
        return Matrix._raw([[complex(x) for x in r] for r in self._a], self.rows, self.cols, FLOAT)

    def transpose(self):
        data = [list(c) for c in zip(*self._a)] if self.rows else [[] for _ in range(self.cols)]
        return Matrix._raw(data, self.cols, self.rows, self.backend)

    @property
    def T(self):
        return self.transpose()

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.backend != self.backend:
            raise BackendMismatch(f"{self.backend} matrix combined with {other.backend} matrix")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw([[x + y for x, y in zip(r, s)] for r, s in zip(self._a, other._a)],
                           self.rows, self.cols, self.backend)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix._raw([[x - y for x, y in zip(r, s)] for r, s in zip(self._a, other._a)],
                           self.rows, self.cols, self.backend)

    def __neg__(self):
        return Matrix._raw([[-x for x in r] for r in self._a], self.rows, self.cols, self.backend)

    def scale(self, c):
        c = to_backend(c, self.backend) if not isinstance(c, (GaussianRational, complex)) else c
        if backend_of(c) != self.backend:
            raise BackendMismatch("scalar and matrix backends differ")
        return Matrix._raw([[c * x for x in r] for r in self._a], self.rows, self.cols, self.backend)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = zero(self.backend)
        cols = list(zip(*other._a)) if other.rows else [() for _ in range(other.cols)]
        out = []
        for r in self._a:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for c in cols:
                s = z
                for k, x in nz:
                    y = c[k]
                    if y:
                        s = s + x * y
                row.append(s)
            out.append(row)
        return Matrix._raw(out, self.rows, other.cols, self.backend)

    def apply(self, vec):
        """Matrix times column vector given as a list."""
        z = zero(self.backend)
        out = []
        for r in self._a:
            s = z
            for x, y in zip(r, vec):
                if x and y:
                    s = s + x * y
            out.append(s)
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        return self.shape == other.shape and self._a == other._a

    def __hash__(self):
        return hash((self.shape, self.entries))

    def is_zero(self, tol=None):
        if self.backend == EXACT:
            return not any(x for r in self._a for x in r)
        a = self.to_numpy()
        if a.size == 0:
            return True
        tol = DEFAULT_TOL if tol is None else tol
        return float(np.max(np.abs(a))) <= tol

    def allclose(self, other, tol=DEFAULT_TOL):
        if self.shape != other.shape:
            return False
        if self.backend == EXACT and other.backend == EXACT:
            return self == other
        a, b = self.to_numpy(), other.to_numpy()
        if a.size == 0:
            return True
        scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
        return float(np.max(np.abs(a - b))) <= tol * scale

    def submatrix(self, row_idx, col_idx):
        return Matrix._raw([[self._a[i][j] for j in col_idx] for i in row_idx],
                           len(row_idx), len(col_idx), self.backend)

    def trace(self):
        s = zero(self.backend)
        for i in range(min(self.rows, self.cols)):
            s = s + self._a[i][i]
        return s

    def rank(self, tol=DEFAULT_TOL) -> int:
        return rank(self, tol)

    def kernel_basis(self, tol=DEFAULT_TOL):
        return kernel_basis(self, tol)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.backend})"

    def __str__(self):
        from .scalars import format_scalar

        return "[" + ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self._a) + "]"


def _infer_backend(data):
    for r in data:
        for x in r:
            if isinstance(x, (complex, float)):
                return FLOAT
    return EXACT


def _lift(x, backend):
    if backend == EXACT:
        if isinstance(x, (complex, float)):
            raise BackendMismatch("floating entry in an exact matrix")
        return GaussianRational.coerce(x)
    if isinstance(x, GaussianRational):
        raise BackendMismatch("exact entry in a float matrix")
    return to_backend(x, FLOAT)


def block(blocks, backend=None):
    """Assemble a matrix from a 2-D list of blocks (``None`` = zero block)."""
    row_h = []
    col_w = [None] * len(blocks[0])
    for br in blocks:
        h = None
        for j, b in enumerate(br):
            if b is not None:
                h = b.rows
                col_w[j] = b.cols
                backend = backend or b.backend
        row_h.append(h)
    if None in row_h or None in col_w:
        raise ValueError("every block row and column needs one explicit block")
    backend = backend or EXACT
    out = Matrix.zeros(sum(row_h), sum(col_w), backend).to_lists()
    r0 = 0
    for bi, br in enumerate(blocks):
        c0 = 0
        for bj, b in enumerate(br):
            if b is not None:
                if b.backend != backend:
                    raise BackendMismatch("blocks from different backends")
                for i in range(b.rows):
                    out[r0 + i][c0:c0 + b.cols] = b._a[i]
            c0 += col_w[bj]
        r0 += row_h[bi]
    return Matrix._raw(out, sum(row_h), sum(col_w), backend)


# ---------------------------------------------------------------- exact rank

def _row_to_gaussian_ints(row):
    den = 1
    for x in row:
        den = math.lcm(den, x.re.denominator, x.im.denominator)
    re = [int(x.re * den) for x in row]
    im = [int(x.im * den) for x in row]
    return re, im


def _bareiss_rank_int(a, ncols):
    nrows = len(a)
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r]
        pc = p[c]
        for i in range(r + 1, nrows):
            q = a[i]
            qc = q[c]
            if qc:
                a[i] = [0] * (c + 1) + [(pc * q[j] - qc * p[j]) // prev for j in range(c + 1, ncols)]
            elif pc != prev:
                a[i] = [0] * (c + 1) + [(pc * q[j]) // prev for j in range(c + 1, ncols)]
        prev = pc
        r += 1
        if r == nrows:
            break
    return r


def _gdiv(xr, xi, yr, yi, n):
    # exact Gaussian-integer quotient (xr + xi i) / (yr + yi i); n = yr^2 + yi^2
    return (xr * yr + xi * yi) // n, (xi * yr - xr * yi) // n


def _bareiss_rank_gauss(re, im, ncols):
    nrows = len(re)
    r = 0
    pr, pi = 1, 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if re[i][c] or im[i][c]), None)
        if piv is None:
            continue
        re[r], re[piv] = re[piv], re[r]
        im[r], im[piv] = im[piv], im[r]
        ar, ai = re[r], im[r]
        cr, ci = ar[c], ai[c]
        n = pr * pr + pi * pi
        for i in range(r + 1, nrows):
            br, bi = re[i], im[i]
            qr, qi = br[c], bi[c]
            nr = [0] * (c + 1)
            ni = [0] * (c + 1)
            for j in range(c + 1, ncols):
                # p*b_j - q*a_j
                xr = cr * br[j] - ci * bi[j] - (qr * ar[j] - qi * ai[j])
                xi = cr * bi[j] + ci * br[j] - (qr * ai[j] + qi * ar[j])
                if pi:
                    xr, xi = _gdiv(xr, xi, pr, pi, n)
                else:
                    xr //= pr
                    xi //= pr
                nr.append(xr)
                ni.append(xi)
            re[i], im[i] = nr, ni
        pr, pi = cr, ci
        r += 1
        if r == nrows:
            break
    return r


def rank(M: Matrix, tol=DEFAULT_TOL) -> int:
    """Exact rank (fraction-free elimination) or numerical rank (SVD).

    Numerical rank counts singular values above ``tol * s_max * max(rows, cols)``.
    """
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.backend == FLOAT:
        s = np.linalg.svd(M.to_numpy(), compute_uv=False)
        if s.size == 0 or s[0] == 0:
            return 0
        return int(np.sum(s > tol * s[0] * max(M.rows, M.cols)))
    rows = [r for r in M._a if any(r)]
    if not rows:
        return 0
    # eliminate along the shorter dimension
    if len(rows) > M.cols:
        rows = [list(c) for c in zip(*rows)]
    ncols = len(rows[0])
    re, im = zip(*(_row_to_gaussian_ints(r) for r in rows))
    re, im = list(re), list(im)
    if not any(any(r) for r in im):
        return _bareiss_rank_int(re, ncols)
    return _bareiss_rank_gauss(re, im, ncols)


# ---------------------------------------------------------------- exact RREF

def rref(M: Matrix):
    """Reduced row echelon form over Q(i); returns (rows as lists, pivot columns)."""
    if M.backend != EXACT:
        raise BackendMismatch("rref is exact-only; use the SVD routines for floats")
    a = M.to_lists()
    nrows, ncols = M.rows, M.cols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv if x else x for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def kernel_basis(M: Matrix, tol=DEFAULT_TOL):
    """Basis of {v : M v = 0} as a list of column vectors (lists).

    Exact: one vector per free column of the RREF, with a 1 in that column.
    Float: right singular vectors for the numerically zero singular values.
    """
    if M.backend == FLOAT:
        if M.cols == 0:
            return []
        if M.rows == 0:
            return [[1 + 0j if i == j else 0j for i in range(M.cols)] for j in range(M.cols)]
        _, s, vh = np.linalg.svd(M.to_numpy())
        r = int(np.sum(s > tol * (s[0] if s.size else 0) * max(M.rows, M.cols))) if s.size and s[0] else 0
        return [[complex(x) for x in vh[k].conj()] for k in range(r, M.cols)]
    rows, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [ZERO] * M.cols
        v[fcol] = GaussianRational(1)
        for row, pc in zip(rows, pivots):
            if row[fcol]:
                v[pc] = -row[fcol]
        basis.append(v)
    return basis


def span_basis(vectors, n, backend=EXACT):
    """Row-reduced basis (list of vectors) of the span of ``vectors`` in dimension n."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    if backend == FLOAT:
        a = np.array([[complex(x) for x in v] for v in vectors])
        _, s, vh = np.linalg.svd(a)
        r = int(np.sum(s > DEFAULT_TOL * s[0] * max(a.shape))) if s.size and s[0] else 0
        return [[complex(x) for x in vh[k]] for k in range(r)]
    rows, _ = rref(Matrix(vectors, backend=EXACT, cols=n))
    return rows


def solve_coordinates(basis, vec):
    """Coordinates of ``vec`` in the independent exact vectors ``basis``; None if outside the span."""
    if not basis:
        return [] if not any(vec) else None
    n = len(vec)
    k = len(basis)
    aug = Matrix([[basis[j][i] for j in range(k)] + [vec[i]] for i in range(n)], backend=EXACT)
    rows, pivots = rref(aug)
    if k in pivots:
        return None
    coords = [ZERO] * k
    for row, pc in zip(rows, pivots):
        coords[pc] = row[k]
    return coords


def inverse(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise ValueError("inverse of a non-square matrix")
    if M.backend == FLOAT:
        return Matrix(np.linalg.inv(M.to_numpy()).tolist(), backend=FLOAT)
    n = M.rows
    aug = block([[M, Matrix.identity(n)]])
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("singular matrix")
    return Matrix([r[n:] for r in rows], backend=EXACT)


# ---------------------------------------------------------------- eigenvalues

def charpoly(M: Matrix):
    """Coefficients [c_0, ..., c_n] of det(t I - M) (monic, c_n = 1), Faddeev-LeVerrier."""
    if M.rows != M.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.rows
    be = M.backend
    coeffs = [zero(be)] * (n + 1)
    coeffs[n] = one(be)
    Mk = Matrix.zeros(n, n, be)
    ident = Matrix.identity(n, be)
    for k in range(1, n + 1):
        Mk = M @ Mk + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(M @ Mk).trace() / k if be == FLOAT else -(M @ Mk).trace() * GaussianRational(Fraction(1, k))
    return coeffs


def _poly_eval(coeffs, x):
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_divmod(num, den):
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    q = [ZERO] * max(len(num) - dd, 1)
    for k in range(len(num) - 1 - dd, -1, -1):
        c = num[k + dd] / lead
        q[k] = c
        if c:
            for j in range(dd + 1):
                num[k + j] = num[k + j] - c * den[j]
    rem = num[:dd] if dd else [ZERO]
    return q, rem


def _trim(p):
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, _trim(r)
    lead = a[-1]
    return [c / lead for c in a]


def _deflate(coeffs, root):
    # synthetic division by (t - root); assumes root is a root
    n = len(coeffs) - 1
    out = [ZERO] * n
    acc = ZERO
    for k in range(n, 0, -1):
        acc = acc * root + coeffs[k]
        out[k - 1] = acc
    return out


def _gaussian_divisors(re, im, limit=10**6):
    """All Gaussian integers dividing re+im*i, or None if the norm is too large to enumerate."""
    norm = re * re + im * im
    if norm > limit:
        return None
    out = []
    r = math.isqrt(norm)
    for a, b in product(range(-r, r + 1), repeat=2):
        nn = a * a + b * b
        if nn and norm % nn == 0:
            # (re + im i)/(a + b i) is a Gaussian integer?
            xr = re * a + im * b
            xi = im * a - re * b
            if xr % nn == 0 and xi % nn == 0:
                out.append(GaussianRational(a, b))
    return out


def gaussian_integer_roots(coeffs):
    """Gaussian-integer roots, with multiplicity, of a monic polynomial over Z[i].

    Returns ``(roots, residual)``; ``residual`` is the cofactor left after all
    linear factors are removed (degree 0 when the roots account for the full degree).
    """
    p = _trim(coeffs)
    roots = []
    # zero roots
    while len(p) > 1 and not p[0]:
        roots.append(ZERO)
        p = p[1:]
    while len(p) > 1:
        deriv = [c * k for k, c in enumerate(p)][1:]
        g = _poly_gcd(p, deriv)
        sf, _ = _poly_divmod(p, g) if len(g) > 1 else (p, None)
        lead = sf[-1]
        sf = [c / lead for c in sf]
        approx = np.roots([complex(c) for c in reversed(sf)]) if len(sf) > 1 else []
        found = None
        for z in approx:
            zr, zi = round(z.real), round(z.imag)
            for dr, di in ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)):
                cand = GaussianRational(zr + dr, zi + di)
                if not _poly_eval(p, cand):
                    found = cand
                    break
            if found is not None:
                break
        if found is None:
            # certify: no divisor of the constant term is a root
            c0 = p[0]
            divs = _gaussian_divisors(int(c0.re), int(c0.im)) if c0.is_gaussian_integer() else None
            if divs is not None:
                found = next((d for d in divs if not _poly_eval(p, d)), None)
            if found is None:
                break
        while len(p) > 1 and not _poly_eval(p, found):
            roots.append(found)
            p = _deflate(p, found)
    return roots, p


def _scale_to_gaussian_integers(M: Matrix):
    den = 1
    for x in M.entries:
        den = math.lcm(den, x.re.denominator, x.im.denominator)
    return M.scale(GaussianRational(den)), den


def eigenvalues_exact(M: Matrix, allow_partial=False):
    """Gaussian-rational eigenvalues of M with multiplicity, sorted.

    Raises :class:`IrrationalSpectrum` when the linear factors found do not
    account for the full degree, unless ``allow_partial`` (then returns
    ``(values, complete)``).
    """
    if M.backend != EXACT:
        raise BackendMismatch("eigenvalues_exact needs an exact matrix")
    if M.rows != M.cols:
        raise ValueError("eigenvalues of a non-square matrix")
    A, den = _scale_to_gaussian_integers(M)
    roots, residual = gaussian_integer_roots(charpoly(A))
    d = GaussianRational(den)
    values = sorted((r / d for r in roots), key=GaussianRational.sort_key)
    complete = len(residual) == 1
    if allow_partial:
        return values, complete
    if not complete:
        raise IrrationalSpectrum(
            f"characteristic polynomial has a degree-{len(residual) - 1} factor without Gaussian-rational roots"
        )
    return values


def eigenvalues_float(M: Matrix, cluster_tol=1e-3):
    """Floating eigenvalues, with near-coincident values merged to their mean.

    Defective eigenvalues scatter by roughly eps**(1/k); averaging a cluster
    recovers the eigenvalue to near machine precision.
    """
    vals = np.linalg.eigvals(M.to_numpy()) if M.rows else np.array([])
    return cluster_values(list(vals), cluster_tol)


def cluster_values(values, cluster_tol=1e-3):
    """Single-linkage clusters (relative radius ``cluster_tol``) replaced by their means."""
    values = [complex(z) for z in values]
    k = len(values)
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(k):
        for b in range(a + 1, k):
            if abs(values[a] - values[b]) <= cluster_tol * max(1.0, abs(values[a]), abs(values[b])):
                parent[find(a)] = find(b)
    groups = {}
    for a in range(k):
        groups.setdefault(find(a), []).append(values[a])
    out = []
    for g in groups.values():
        c = sum(g) / len(g)
        out.extend([c] * len(g))
    return sorted(out, key=lambda z: (round(z.real, 9), round(z.imag, 9)))
