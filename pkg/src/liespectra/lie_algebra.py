"""Lie algebras given by structure constants.

``c[i][j][h]`` is the coefficient of ``x_h`` in ``[x_i, x_j]`` (0-based).
Everything here is exact; float complexes convert the constants on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import AdaptationFailed, BasisNotAdapted, InvalidAlgebra, IrrationalSpectrum, NotACharacter, NotSolvable
from .linalg import Matrix, eigenvalues_exact, inverse, kernel_basis, rref, solve_coordinates, span_basis
from .scalars import EXACT, ZERO, GaussianRational, to_backend


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q(i) in a fixed basis."""

    def __init__(self, c, names=None):
        n = len(c)
        if n < 1:
            raise InvalidAlgebra("dimension must be at least 1")
        self.dim = n
        self.c = tuple(
            tuple(tuple(GaussianRational.coerce(x) for x in c[i][j]) for j in range(n)) for i in range(n)
        )
        if any(len(c[i]) != n or any(len(c[i][j]) != n for j in range(n)) for i in range(n)):
            raise InvalidAlgebra("structure constants must form an n x n x n tensor")
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise InvalidAlgebra("one basis name per dimension")

    @classmethod
    def from_brackets(cls, n, brackets, names=None):
        """Build from ``{(i, j): {h: coeff}}`` (0-based), completing by antisymmetry.

        Conflicting entries for (i, j) and (j, i) raise :class:`InvalidAlgebra`.
        """
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        seen = {}
        for (i, j), coeffs in brackets.items():
            vec = [ZERO] * n
            for h, v in coeffs.items():
                vec[h] = GaussianRational.coerce(v)
            if i == j:
                if any(vec):
                    raise InvalidAlgebra(f"[x{i + 1}, x{i + 1}] must vanish")
                continue
            for key, v in (((i, j), vec), ((j, i), [-x for x in vec])):
                if key in seen and seen[key] != v:
                    raise InvalidAlgebra(f"conflicting brackets for ({key[0] + 1}, {key[1] + 1})")
                seen[key] = v
                c[key[0]][key[1]] = v
        return cls(c, names)

    @classmethod
    def abelian(cls, n):
        return cls.from_brackets(n, {})

    def bracket_basis(self, i, j):
        return list(self.c[i][j])

    def bracket(self, u, v):
        """Bracket of two coordinate vectors."""
        n = self.dim
        out = [ZERO] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not v[j]:
                    continue
                s = u[i] * v[j]
                for h, x in enumerate(self.c[i][j]):
                    if x:
                        out[h] = out[h] + s * x
        return out

    def constants(self, backend=EXACT):
        if backend == EXACT:
            return self.c
        return tuple(tuple(tuple(to_backend(x, backend) for x in cij) for cij in ci) for ci in self.c)

    def is_abelian(self):
        return not any(x for ci in self.c for cij in ci for x in cij)

    def change_basis(self, B: Matrix, names=None) -> LieAlgebra:
        """Constants in the basis given by the columns of B."""
        n = self.dim
        Binv = inverse(B)
        cols = [B.column(j) for j in range(n)]
        c = [[Binv.apply(self.bracket(cols[i], cols[j])) for j in range(n)] for i in range(n)]
        return LieAlgebra(c, names or [f"b{i + 1}" for i in range(n)])

    def subalgebra(self, basis, names=None) -> LieAlgebra:
        """Constants of the subalgebra spanned by ``basis`` (raises if not closed)."""
        k = len(basis)
        c = [[None] * k for _ in range(k)]
        for a in range(k):
            for b in range(k):
                coords = solve_coordinates(basis, self.bracket(basis[a], basis[b]))
                if coords is None:
                    raise InvalidAlgebra("subspace is not closed under the bracket")
                c[a][b] = coords
        if k == 0:
            raise InvalidAlgebra("zero subalgebra has no structure constants")
        return LieAlgebra(c, names)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, names={self.names})"


@dataclass
class ValidityReport:
    antisymmetry: list = field(default_factory=list)   # (i, j) 1-based
    jacobi: list = field(default_factory=list)         # (i, j, k) 1-based

    @property
    def ok(self):
        return not self.antisymmetry and not self.jacobi


def validate(L: LieAlgebra) -> ValidityReport:
    n = L.dim
    rep = ValidityReport()
    for i in range(n):
        for j in range(i, n):
            if any(a + b for a, b in zip(L.c[i][j], L.c[j][i])):
                rep.antisymmetry.append((i + 1, j + 1))
    e = [[GaussianRational(int(a == b)) for b in range(n)] for a in range(n)]
    for i, j, k in combinations(range(n), 3):
        t1 = L.bracket(e[i], L.c[j][k])
        t2 = L.bracket(e[j], L.c[k][i])
        t3 = L.bracket(e[k], L.c[i][j])
        if any(a + b + d for a, b, d in zip(t1, t2, t3)):
            rep.jacobi.append((i + 1, j + 1, k + 1))
    return rep


def _unit(n, i):
    return [GaussianRational(int(a == i)) for a in range(n)]


def bracket_span(L, U, V):
    """Basis (RREF rows) of span{[u, v] : u in U, v in V}."""
    vecs = [L.bracket(u, v) for u in U for v in V]
    return span_basis([v for v in vecs if any(v)], L.dim)


def full_basis(L):
    return [_unit(L.dim, i) for i in range(L.dim)]


@dataclass
class SubspaceFlag:
    members: list   # list of bases (lists of coordinate vectors), decreasing

    @property
    def dims(self):
        return [len(m) for m in self.members]


def derived_series(L: LieAlgebra):
    """L, L^2, (L^2)^2, ... until it stabilizes; returns (flag, is_solvable)."""
    members = [full_basis(L)]
    while True:
        cur = members[-1]
        nxt = bracket_span(L, cur, cur)
        if len(nxt) == len(cur):
            break
        members.append(nxt)
        if not nxt:
            break
    return SubspaceFlag(members), not members[-1]


def lower_central_series(L: LieAlgebra):
    """L, [L,L], [L,[L,L]], ... until it stabilizes; returns (flag, is_nilpotent)."""
    top = full_basis(L)
    members = [top]
    while True:
        cur = members[-1]
        nxt = bracket_span(L, top, cur)
        if len(nxt) == len(cur):
            break
        members.append(nxt)
        if not nxt:
            break
    return SubspaceFlag(members), not members[-1]


def derived_algebra(L):
    return bracket_span(L, full_basis(L), full_basis(L))


def is_solvable(L):
    return derived_series(L)[1]


def is_nilpotent(L):
    return lower_central_series(L)[1]


def is_ideal(L, basis):
    for v in basis:
        for i in range(L.dim):
            if solve_coordinates(basis, L.bracket(_unit(L.dim, i), v)) is None:
                return False
    return True


def ad_matrix(L: LieAlgebra, i: int) -> Matrix:
    """Matrix of y -> [x_i, y]; column j holds [x_i, x_j]."""
    if not 0 <= i < L.dim:
        raise IndexError(f"basis index {i} out of range for dimension {L.dim}")
    n = L.dim
    return Matrix([[L.c[i][j][h] for j in range(n)] for h in range(n)], backend=EXACT)


def opposite(L: LieAlgebra) -> LieAlgebra:
    """Same space, negated bracket."""
    n = L.dim
    return LieAlgebra([[[-x for x in L.c[i][j]] for j in range(n)] for i in range(n)], L.names)


# ---------------------------------------------------------------- characters

def is_character(L, f):
    return not any(sum((fh * x for fh, x in zip(f, cij)), ZERO) for ci in L.c for cij in ci)


def check_character(L, f):
    if len(f) != L.dim:
        raise NotACharacter(f"character needs {L.dim} coefficients, got {len(f)}")
    if not all(isinstance(x, GaussianRational) for x in f):
        # float characters: compare against zero with a tolerance
        bad = max((abs(sum(complex(fh) * complex(x) for fh, x in zip(f, cij))) for ci in L.c for cij in ci),
                  default=0.0)
        if bad > 1e-8 * max(1.0, max(abs(complex(x)) for x in f)):
            raise NotACharacter(f"functional does not vanish on L^2 (residual {bad:.3g})")
        return
    if not is_character(L, f):
        raise NotACharacter("functional does not vanish on the derived algebra L^2")


# ---------------------------------------------------------------- adapted basis

def _common_eigenvector(mats, dim):
    """Common eigenvector of a solvable family of exact dim x dim matrices.

    Elements of the derived algebra act nilpotently, so their common kernel W is
    nonzero and invariant; on W the family commutes and successive eigenspaces
    shrink W to common eigenvectors.  Returns the RREF-first vector of the final
    space with leading coordinate 1.
    """
    comms = []
    for a, b in combinations(mats, 2):
        cm = a @ b - b @ a
        if not cm.is_zero():
            comms.append(cm)
    if comms:
        stacked = Matrix([r for cm in comms for r in cm.to_lists()], backend=EXACT, cols=dim)
        W = kernel_basis(stacked)
    else:
        W = [_unit(dim, i) for i in range(dim)]
    if not W:
        raise AdaptationFailed("derived algebra does not act nilpotently (family not solvable)")
    for T in mats:
        # T restricted to span(W): T w_j = sum_k X[k][j] w_k
        images = [T.apply(w) for w in W]
        X = Matrix.from_columns([solve_coordinates(W, y) for y in images], backend=EXACT)
        if X.is_zero():
            lam = ZERO
        else:
            try:
                lam = eigenvalues_exact(X)[0]
            except IrrationalSpectrum as exc:
                raise AdaptationFailed(str(exc)) from exc
        shifted = X - Matrix.identity(len(W)).scale(lam)
        ker = kernel_basis(shifted)
        W = [[sum((kv * w[i] for kv, w in zip(k, W)), ZERO) for i in range(dim)] for k in ker]
    rows, _ = rref(Matrix(W, backend=EXACT, cols=dim))
    return rows[0]


def _complement(sub, amb, n):
    """Vectors of ``amb`` (in order) completing ``sub`` to a basis of span(amb)."""
    chosen = []
    cur = list(sub)
    for v in amb:
        trial = span_basis(cur + [v], n)
        if len(trial) > len(cur):
            cur = cur + [v]
            chosen.append(v)
    return chosen


@dataclass
class AdaptedBasis:
    B: Matrix          # columns are the new basis vectors in old coordinates
    derived_dim: int   # k = dim L^2; the first k new vectors span L^2
    algebra: LieAlgebra  # constants expressed in the new basis


def is_adapted_shape(L: LieAlgebra) -> bool:
    """[x_j, x_i] in span(x_1..x_i) for all i < j (every span(x_1..x_i) is an ideal)."""
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            if any(L.c[j][i][h] for h in range(i + 1, n)):
                return False
    return True


def _leading_spans_derived(L: LieAlgebra, k: int) -> bool:
    d = derived_algebra(L)
    return len(d) == k and len(span_basis(d + [_unit(L.dim, i) for i in range(k)], L.dim)) == k


def adapted_basis(L: LieAlgebra) -> AdaptedBasis:
    """Basis realising a full flag of ideals whose first k members span L^2.

    Refines L > L^2 > [L, L^2] > ... > 0 by extracting a common eigenvector of
    the induced adjoint action on each quotient layer.
    """
    flag, solvable = derived_series(L)
    if not solvable:
        raise NotSolvable("derived series does not reach zero")
    n = L.dim
    top = full_basis(L)
    chain = [top]
    cur = derived_algebra(L)
    while cur and len(cur) < len(chain[-1]):
        chain.append(cur)
        cur = bracket_span(L, top, cur)
    chain.append([])
    chain.reverse()   # 0 = A_0 < A_1 < ... < L, all ideals

    ads = [ad_matrix(L, i) for i in range(n)]
    new = []
    for lower, upper in zip(chain, chain[1:]):
        while len(span_basis(new, n)) < len(upper):
            U = _complement(new, upper, n)
            # induced action on upper / span(new) in U-coordinates
            base = new + U
            induced = []
            for ad in ads:
                cols = []
                for u in U:
                    coords = solve_coordinates(base, ad.apply(u))
                    cols.append(coords[len(new):])
                induced.append(Matrix.from_columns(cols, backend=EXACT))
            v = _common_eigenvector(induced, len(U))
            vec = [sum((vk * u[i] for vk, u in zip(v, U)), ZERO) for i in range(n)]
            new.append(vec)
    B = Matrix.from_columns(new, backend=EXACT)
    k = len(derived_algebra(L))
    LB = L.change_basis(B, names=L.names if B == Matrix.identity(n) else None)
    if not is_adapted_shape(LB) or not _leading_spans_derived(LB, k):
        raise AdaptationFailed("refined flag failed the adapted-basis postcondition")
    return AdaptedBasis(B, k, LB)


def adapted_from_user(L: LieAlgebra, B: Matrix) -> AdaptedBasis:
    """Accept a caller-supplied adapted basis after checking it."""
    if B.shape != (L.dim, L.dim) or len(span_basis([B.column(j) for j in range(L.dim)], L.dim)) < L.dim:
        raise BasisNotAdapted("adapted basis must be an invertible n x n matrix")
    LB = L.change_basis(B)
    k = len(derived_algebra(L))
    if not is_adapted_shape(LB):
        raise BasisNotAdapted("supplied basis does not give a flag of ideals")
    if not _leading_spans_derived(LB, k):
        raise BasisNotAdapted("first dim L^2 vectors of the supplied basis do not span L^2")
    return AdaptedBasis(B, k, LB)


def trace_vector(L: LieAlgebra, adapted: AdaptedBasis | None = None):
    """(trace of ad(x_i) restricted to span(x_1..x_i))_i in an adapted basis."""
    if adapted is not None:
        L = adapted.algebra
    if not is_adapted_shape(L):
        raise BasisNotAdapted("trace vector needs an adapted basis")
    n = L.dim
    return tuple(sum((L.c[i][h][h] for h in range(i + 1)), ZERO) for i in range(n))


def ad_trace_form(L: LieAlgebra):
    """x_i -> trace ad(x_i) on all of L (basis-free version of the trace vector)."""
    return tuple(ad_matrix(L, i).trace() for i in range(L.dim))
