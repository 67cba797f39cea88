"""Dual-property checks: Sp(L', E*) against Sp(L, E) shifted by the trace vector.

All comparisons happen in an adapted working basis.  L' is the opposite
algebra and E* carries the transposed matrices.

Calibration
-----------
Which way the translation goes depends on how matrices act on E.  The
convention is fixed once, on A2 = <x1, x2> with [x2, x1] = x1 acting on C^2
by M1 = [[0,1],[0,0]] and M2 = diag(1,0).  Under the right-action reading
d o d = 0 and Sp(L', E*) = Sp(L, E) + (0, 1), so the sign is +1.  The
left-action reading fails the chain condition outright.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ChainConditionFailed, NotNilpotent
from .koszul import LEFT, RIGHT
from .lie_algebra import AdaptedBasis, LieAlgebra, adapted_basis, is_nilpotent, opposite, trace_vector
from .linalg import DEFAULT_TOL
from .representation import Representation, dual_rep
from .spectra import DELTA, PI, SpectralData, same_points, translate
from .scalars import EXACT, to_backend

CALIBRATION_SIGN = 1


def working_problem(L: LieAlgebra, R: Representation, adapted: AdaptedBasis | None = None):
    """(adapted basis, algebra, representation) in the adapted working basis."""
    ab = adapted if adapted is not None else adapted_basis(L)
    return ab, ab.algebra, R.change_basis(ab.B, ab.algebra)


def a2_example():
    L = LieAlgebra.from_brackets(2, {(1, 0): {0: 1}})
    return L, Representation(L, [[[0, 1], [0, 0]], [[1, 0], [0, 0]]])


@dataclass
class Calibration:
    action: str
    sign: int
    rejected: dict = field(default_factory=dict)   # action -> reason


def calibrate() -> Calibration:
    """Determine the action convention and translation sign from the A2 example."""
    L, R = a2_example()
    shift = (to_backend(0, EXACT), to_backend(1, EXACT))
    found, rejected = [], {}
    for action in (RIGHT, LEFT):
        try:
            prim = SpectralData(L, R, action=action).union(range(3))
            dual = SpectralData(opposite(L), dual_rep(R), action=action).union(range(3))
        except ChainConditionFailed as exc:
            rejected[action] = f"chain condition fails: {exc}"
            continue
        for sign in (1, -1):
            if prim and same_points(translate(prim, shift, sign), dual):
                found.append((action, sign))
        if not any(a == action for a, _ in found):
            rejected[action] = "worked example fails for both signs"
    if len(found) != 1:
        raise RuntimeError(f"calibration is ambiguous or impossible: {found}")
    action, sign = found[0]
    return Calibration(action, sign, rejected)


@dataclass
class SlodkowskiDuality:
    k: int
    first: bool          # sigma_delta,k(L) + tr = sigma_pi,n-k(L', E*)
    first_literal: bool  # same with sigma_pi,k on the right, as printed
    second: bool         # sigma_pi,k(L) = sigma_delta,n-k(L', E*) - tr

    @property
    def ok(self):
        return self.first and self.second


@dataclass
class DualityReport:
    trace_vector: tuple
    sp_primal: object
    sp_dual: object
    translation_verified: bool
    slodkowski: list
    calibration_sign: int = CALIBRATION_SIGN
    adapted: AdaptedBasis | None = None

    @property
    def ok(self):
        return self.translation_verified and all(s.ok for s in self.slodkowski)


def _duality_levels(prim, dual, tr, backend):
    n = prim.n
    out = []
    for k in range(n + 1):
        d_k = prim.union(range(k + 1))
        p_k = prim.union(range(k, n + 1))
        first = same_points(translate(d_k, tr, CALIBRATION_SIGN), dual.union(range(n - k, n + 1)), backend)
        literal = same_points(translate(d_k, tr, CALIBRATION_SIGN), dual.union(range(k, n + 1)), backend)
        second = same_points(p_k, translate(dual.union(range(n - k + 1)), tr, -CALIBRATION_SIGN), backend)
        out.append(SlodkowskiDuality(k, first, literal, second))
    return out


def dual_spectrum_check(L, R, adapted=None, backend=EXACT, tol=DEFAULT_TOL) -> DualityReport:
    ab, Lw, Rw = working_problem(L, R, adapted)
    tr = tuple(to_backend(x, backend) for x in trace_vector(Lw))
    prim = SpectralData(Lw, Rw, backend, tol)
    dual = SpectralData(opposite(Lw), dual_rep(Rw), backend, tol)
    sp_p, sp_d = prim.sp(), dual.sp()
    verified = same_points(translate(sp_p.points, tr, CALIBRATION_SIGN), sp_d.points, backend)
    return DualityReport(tr, sp_p, sp_d, verified, _duality_levels(prim, dual, tr, backend), CALIBRATION_SIGN, ab)


def nilpotent_check(L, R, adapted=None, backend=EXACT, tol=DEFAULT_TOL) -> bool:
    """Zero trace vector and Sp(L, E) = Sp(L', E*), for nilpotent L only."""
    if not is_nilpotent(L):
        raise NotNilpotent("lower central series does not reach zero")
    rep = dual_spectrum_check(L, R, adapted, backend, tol)
    zero_trace = not any(rep.trace_vector)
    return zero_trace and same_points(rep.sp_primal.points, rep.sp_dual.points, backend)


def slodkowski_duality_check(L, R, k, adapted=None, backend=EXACT, tol=DEFAULT_TOL) -> SlodkowskiDuality:
    if not 0 <= k <= L.dim:
        raise ValueError(f"level k={k} out of range 0..{L.dim}")
    return dual_spectrum_check(L, R, adapted, backend, tol).slodkowski[k]


__all__ = [
    "CALIBRATION_SIGN", "Calibration", "DualityReport", "SlodkowskiDuality", "a2_example", "calibrate",
    "dual_spectrum_check", "nilpotent_check", "slodkowski_duality_check", "working_problem", "DELTA", "PI",
]
