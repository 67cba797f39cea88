"""Joint spectra Sp, Sigma_p and the Slodkowski families on a finite candidate set.

Characters are coefficient tuples in the dual of the working basis, whose
leading ``k = dim L^2`` vectors span L^2.  A character f can only have
nonzero homology if the trivial weight occurs in the L-module
``E (x) C_(-f) (x) wedge^p L`` (L acts trivially on homology), so every
point of Sp is ``lambda +/- (alpha_i1 + ... + alpha_ip)`` with lambda a joint
weight of E and alpha the joint weights of the adjoint action.  That finite
set is the candidate universe; membership is decided by exact homology.
"""

from __future__ import annotations

from dataclasses import dataclass, field


from .errors import (
    AdaptationFailed,
    BasisNotAdapted,
    CandidateGridIncomplete,
    EmptySpectrum,
    IrrationalSpectrum,
    NotAnIdeal,
    NotCommuting,
)
from .koszul import RIGHT, HomologyProfile, build_complex, homology_dims
from .lie_algebra import (
    LieAlgebra,
    _common_eigenvector,
    _complement,
    _leading_spans_derived,
    _unit,
    ad_matrix,
    adapted_basis,
    derived_algebra,
    is_ideal,
)
from .linalg import DEFAULT_TOL, Matrix, eigenvalues_exact, inverse, kernel_basis, solve_coordinates, span_basis
from .representation import Representation, weights_float_oracle
from .scalars import EXACT, FLOAT, ZERO, GaussianRational, to_backend

DELTA = "delta"
PI = "pi"
FAMILIES = (DELTA, PI)

# candidate coordinates closer than this (relative) are merged in the float backend
MERGE_TOL = 1e-6
# numerical weights must land this close to an exact candidate
GRID_TOL = 1e-4


def point_key(f):
    """Deterministic sort key for exact or float characters."""
    out = []
    for x in f:
        if isinstance(x, GaussianRational):
            out.append((float(x.re), float(x.im), x.sort_key()))
        else:
            z = complex(x)
            out.append((round(z.real, 9), round(z.imag, 9), ()))
    return tuple(out)


def _sorted_points(points):
    return tuple(sorted(points, key=point_key))


def _close(f, g, tol):
    return len(f) == len(g) and all(abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(a))) for a, b in zip(f, g))


def _dedupe_float(points, tol=MERGE_TOL):
    out = []
    for f in points:
        if not any(_close(f, g, tol) for g in out):
            out.append(f)
    return out


def same_points(A, B, backend=EXACT, tol=MERGE_TOL) -> bool:
    """Set equality; exact comparison or tolerance pairing in both directions."""
    if backend == EXACT and all(isinstance(x, GaussianRational) for f in list(A) + list(B) for x in f):
        return set(A) == set(B)
    return all(any(_close(f, g, tol) for g in B) for f in A) and all(any(_close(g, f, tol) for f in A) for g in B)


def translate(points, v, sign=1):
    return [tuple(a + b if sign > 0 else a - b for a, b in zip(f, v)) for f in points]


# ---------------------------------------------------------------- joint weights

def _restrict_family(mats, W):
    """Matrices of the family restricted to the invariant span of W (exact)."""
    out = []
    for T in mats:
        cols = [solve_coordinates(W, T.apply(w)) for w in W]
        out.append(Matrix.from_columns(cols, backend=EXACT))
    return out


def joint_weights_exact(mats, dim):
    """Diagonal of an exact simultaneous triangularization, with multiplicity.

    Peels off one common eigenvector at a time and passes to the quotient.
    """
    if dim == 0:
        return []
    weights = []
    cur = list(mats)
    d = dim
    while d > 0:
        try:
            v = _common_eigenvector(cur, d)
        except AdaptationFailed as exc:
            raise IrrationalSpectrum(str(exc)) from exc
        lam = []
        for T in cur:
            Tv = T.apply(v)
            piv = next(i for i, x in enumerate(v) if x)
            lam.append(Tv[piv] / v[piv])
        weights.append(tuple(lam))
        # quotient by span(v): coordinates on a complement chosen from unit vectors
        units = [_unit(d, i) for i in range(d)]
        comp = _complement([v], units, d)
        base = [v] + comp
        nxt = []
        for T in cur:
            cols = [solve_coordinates(base, T.apply(u))[1:] for u in comp]
            nxt.append(Matrix.from_columns(cols, nrows=d - 1, backend=EXACT) if cols else Matrix.zeros(0, 0))
        cur = nxt
        d -= 1
    return weights


def _weights(mats_exact, dim, algebra, backend, tol):
    if backend == EXACT:
        return joint_weights_exact(mats_exact, dim)
    return weights_float_oracle(Representation(algebra, list(mats_exact)), tol=max(tol, 1e-7))


def _subset_sums(alphas, n, backend):
    sums = {tuple(to_backend(0, backend) for _ in range(n))}
    for a in alphas:
        sums |= {tuple(x + y for x, y in zip(s, a)) for s in sums}
        if backend != EXACT:
            sums = set(_dedupe_float(sorted(sums, key=point_key)))
    return sums


def _check_leading(L: LieAlgebra):
    k = len(derived_algebra(L))
    if not _leading_spans_derived(L, k):
        raise BasisNotAdapted("working basis must list a basis of L^2 first")
    return k


def candidate_characters(L: LieAlgebra, R: Representation, backend=EXACT, tol=DEFAULT_TOL):
    """Sorted finite set containing every possible point of Sp(L, E)."""
    n = L.dim
    k = _check_leading(L)
    lam = _weights(R.mats, R.dim, L, backend, tol)
    ads = [ad_matrix(L, i) for i in range(n)]
    alphas = _weights(ads, n, L, backend, tol)
    sums = _subset_sums(alphas, n, backend)
    cands = set()
    for w in lam:
        for s in sums:
            for sign in (1, -1):
                f = [a + b if sign > 0 else a - b for a, b in zip(w, s)]
                # weights vanish on L^2; pin the leading block to an exact zero
                for i in range(k):
                    f[i] = to_backend(0, backend)
                cands.add(tuple(f))
    if backend != EXACT:
        cands = _dedupe_float(sorted(cands, key=point_key))
    return _sorted_points(cands)


def check_grid_complete(R: Representation, candidates, tol=GRID_TOL):
    """Every numerically computed weight of E must sit on the candidate grid."""
    for w in weights_float_oracle(R):
        if not any(_close(w, c, tol) for c in candidates):
            raise CandidateGridIncomplete(f"weight {w} is outside the candidate grid")


# ---------------------------------------------------------------- spectra

@dataclass
class SpectrumResult:
    algebra: LieAlgebra
    rep: Representation
    backend: str
    label: str
    points: tuple
    profiles: dict = field(repr=False)
    candidate_universe: tuple = field(repr=False, default=())
    closed_range_clause: str = "trivially satisfied"

    def __len__(self):
        return len(self.points)

    def __contains__(self, f):
        if self.backend == EXACT:
            return tuple(f) in set(self.points)
        return any(_close(tuple(f), g, MERGE_TOL) for g in self.points)


@dataclass(frozen=True)
class SlodkowskiQuery:
    family: str
    k: int

    def validate(self, n):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not isinstance(self.k, int) or not 0 <= self.k <= n:
            raise ValueError(f"level k={self.k} out of range 0..{n}")

    def degrees(self, n):
        return range(0, self.k + 1) if self.family == DELTA else range(self.k, n + 1)


class SpectralData:
    """Homology profile of every candidate character; all spectra derive from it."""

    def __init__(self, L, R, backend=EXACT, tol=DEFAULT_TOL, check_grid=True, action=RIGHT):
        self.algebra = L
        self.rep = R
        self.backend = backend
        self.tol = tol
        self.candidates = candidate_characters(L, R, backend, tol)
        if check_grid:
            check_grid_complete(R, self.candidates)
        self.profiles = {f: profile_at(L, R, f, backend, tol, action) for f in self.candidates}

    @property
    def n(self):
        return self.algebra.dim

    def union(self, degrees):
        degrees = [p for p in degrees if 0 <= p <= self.n]
        return _sorted_points(f for f, prof in self.profiles.items() if any(prof.dims[p] for p in degrees))

    def _result(self, label, points, allow_empty=False):
        if not points and not allow_empty:
            raise EmptySpectrum(f"{label} came out empty: candidate generation is incomplete")
        return SpectrumResult(self.algebra, self.rep, self.backend, label, points,
                              {f: self.profiles[f] for f in points}, self.candidates)

    def sp(self):
        return self._result("Sp", self.union(range(self.n + 1)))

    def sigma(self, p, allow_empty=True):
        return self._result(f"Sigma_{p}", self.union([p]), allow_empty)

    def slodkowski(self, family, k, allow_empty=False):
        q = SlodkowskiQuery(family, k)
        q.validate(self.n)
        return self._result(f"sigma_{family},{k}", self.union(q.degrees(self.n)), allow_empty)


def profile_at(L, R, f, backend=EXACT, tol=DEFAULT_TOL, action=RIGHT) -> HomologyProfile:
    return homology_dims(build_complex(L, R, f, backend, action=action, tol=tol))


def sigma_p_member(L, R, f, p, backend=EXACT, tol=DEFAULT_TOL) -> bool:
    if not 0 <= p <= L.dim:
        return False
    return profile_at(L, R, f, backend, tol).dims[p] > 0


def sp(L, R, backend=EXACT, tol=DEFAULT_TOL) -> SpectrumResult:
    return SpectralData(L, R, backend, tol).sp()


def slodkowski(L, R, family, k, backend=EXACT, tol=DEFAULT_TOL) -> SpectrumResult:
    SlodkowskiQuery(family, k).validate(L.dim)
    return SpectralData(L, R, backend, tol).slodkowski(family, k)


# ---------------------------------------------------------------- projection

def _independent(L, basis):
    basis = [[GaussianRational.coerce(x) for x in v] for v in basis]
    if any(len(v) != L.dim for v in basis):
        raise ValueError(f"ideal vectors need {L.dim} coordinates")
    if len(span_basis(basis, L.dim)) != len(basis):
        raise ValueError("ideal basis vectors are linearly dependent")
    return basis


def restrict_character(f, basis):
    """Values of f on the given vectors (coordinates in the working basis)."""
    out = []
    for v in basis:
        acc = None
        for a, x in zip(v, f):
            if a:
                term = to_backend(a, FLOAT) * x if not isinstance(x, GaussianRational) else a * x
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else (ZERO if all(isinstance(x, GaussianRational) for x in f) else 0j))
    return tuple(out)


def project_spectrum(S: SpectrumResult, ideal_basis):
    L = S.algebra
    basis = _independent(L, ideal_basis)
    if not is_ideal(L, basis):
        raise NotAnIdeal("subspace is not an ideal; the projection property does not apply")
    pts = {restrict_character(f, basis) for f in S.points}
    if S.backend != EXACT:
        pts = _dedupe_float(sorted(pts, key=point_key))
    return _sorted_points(pts)


@dataclass
class ProjectionReport:
    ideal_dim: int
    checked: list = field(default_factory=list)     # (label, level_L, level_I)
    mismatches: list = field(default_factory=list)  # (label, level_L, projected, independent)

    @property
    def ok(self):
        return not self.mismatches


def ideal_spectral_data(L, R, basis, backend=EXACT, tol=DEFAULT_TOL):
    """Spectra of the ideal computed on their own, returned in ``basis`` coordinates.

    The ideal is re-adapted internally; points are mapped back through the
    transpose-inverse of that base change.
    """
    sub = L.subalgebra(basis)
    Rs = R.restrict(basis, sub)
    ab = adapted_basis(sub)
    data = SpectralData(ab.algebra, Rs.change_basis(ab.B, ab.algebra), backend, tol)
    Binv = inverse(ab.B)
    r = sub.dim
    back = {}
    for f in data.candidates:
        back[f] = tuple(_dot([Binv[j, i] for j in range(r)], f) for i in range(r))
    return data, back


def _dot(coeffs, f):
    acc = None
    for a, x in zip(coeffs, f):
        if not a:
            continue
        term = a * x if isinstance(x, GaussianRational) else complex(a) * x
        acc = term if acc is None else acc + term
    if acc is None:
        return ZERO if all(isinstance(x, GaussianRational) for x in f) else 0j
    return acc


def projection_check(L, R, ideal_basis, backend=EXACT, tol=DEFAULT_TOL, data=None) -> ProjectionReport:
    """Compare pi(spectrum of L) with the independently computed spectrum of the ideal.

    delta levels carry over unchanged (clamped to dim I); pi levels drop by
    codim I, since top-degree homology of L sits codim I degrees above that of I.
    """
    basis = _independent(L, ideal_basis)
    if not is_ideal(L, basis):
        raise NotAnIdeal("subspace is not an ideal; the projection property does not apply")
    n, r = L.dim, len(basis)
    data = data or SpectralData(L, R, backend, tol)
    report = ProjectionReport(r)

    def proj(points):
        pts = {restrict_character(f, basis) for f in points}
        if backend != EXACT:
            pts = _dedupe_float(sorted(pts, key=point_key))
        return _sorted_points(pts)

    if r == 0:
        sub_union = lambda degrees: ((),) if 0 in degrees else ()
    else:
        dI, back = ideal_spectral_data(L, R, basis, backend, tol)
        sub_union = lambda degrees: _sorted_points(back[f] for f in dI.union(degrees))

    def compare(label, level, pts_L, degrees_I, level_I):
        left = proj(pts_L)
        right = sub_union([p for p in degrees_I if 0 <= p <= r])
        report.checked.append((label, level, level_I))
        if not same_points(left, right, backend):
            report.mismatches.append((label, level, left, right))

    compare("Sp", None, data.union(range(n + 1)), range(r + 1), None)
    for k in range(n + 1):
        kd = min(k, r)
        compare(DELTA, k, data.union(range(k + 1)), range(kd + 1), kd)
        kp = max(k - (n - r), 0)
        compare(PI, k, data.union(range(k, n + 1)), range(kp, r + 1), kp)
    return report


# ---------------------------------------------------------------- codimension-one containment

@dataclass
class ContainmentReport:
    checked: int = 0
    failures: list = field(default_factory=list)   # (f, p)

    @property
    def ok(self):
        return not self.failures


def containment_check(L, R, backend=EXACT, tol=DEFAULT_TOL, data=None) -> ContainmentReport:
    """f in Sigma_p(L) implies f restricted to L_(n-1) lies in Sigma_(p-1) or Sigma_p there.

    L_(n-1) is the span of the first n-1 working basis vectors, which must be an ideal.
    """
    n = L.dim
    report = ContainmentReport()
    if n < 2:
        return report
    basis = [_unit(n, i) for i in range(n - 1)]
    if not is_ideal(L, basis):
        raise NotAnIdeal("first n-1 basis vectors do not span an ideal")
    sub = L.subalgebra(basis)
    Rs = R.restrict(basis, sub)
    data = data or SpectralData(L, R, backend, tol)
    for f, prof in data.profiles.items():
        ps = [p for p in range(n + 1) if prof.dims[p]]
        if not ps:
            continue
        sub_dims = profile_at(sub, Rs, f[: n - 1], backend, tol).dims
        for p in ps:
            report.checked += 1
            below = sub_dims[p - 1] if 1 <= p <= n else 0
            here = sub_dims[p] if p <= n - 1 else 0
            if not (below or here):
                report.failures.append((f, p))
    return report


# ---------------------------------------------------------------- commutative oracle

def taylor_oracle(mats):
    """Joint eigenvalue tuples of pairwise commuting exact matrices.

    Splits the space into joint generalized eigenspaces one matrix at a time.
    """
    mats = [m if isinstance(m, Matrix) else Matrix(m, backend=EXACT) for m in mats]
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if mats[a] @ mats[b] != mats[b] @ mats[a]:
                raise NotCommuting(f"matrices {a + 1} and {b + 1} do not commute")
    d = mats[0].rows
    pieces = [((), [_unit(d, i) for i in range(d)])]
    for T in mats:
        nxt = []
        for lam, W in pieces:
            X = _restrict_family([T], W)[0]
            for mu in sorted(set(eigenvalues_exact(X)), key=GaussianRational.sort_key):
                shifted = X - Matrix.identity(len(W)).scale(mu)
                P = Matrix.identity(len(W))
                for _ in range(len(W)):
                    P = P @ shifted
                ker = kernel_basis(P)
                sub = [[sum((kv * w[i] for kv, w in zip(kk, W)), ZERO) for i in range(d)] for kk in ker]
                nxt.append((lam + (mu,), sub))
        pieces = nxt
    return _sorted_points({lam for lam, W in pieces if W})


def to_float_points(points):
    return [tuple(complex(x) for x in f) for f in points]
