"""Joint spectra of solvable Lie algebras of matrices via the twisted Chevalley-Eilenberg complex."""

from .duality import calibrate, dual_spectrum_check, nilpotent_check, slodkowski_duality_check  # noqa: F401
from .errors import *  # noqa: F401,F403
from .koszul import build_complex, homology_dims, rho_diagram_check  # noqa: F401
from .lie_algebra import LieAlgebra, adapted_basis, opposite, trace_vector, validate  # noqa: F401
from .linalg import Matrix, eigenvalues_exact, kernel_basis, rank  # noqa: F401
from .representation import Representation, dual_rep, validate_rep, weights_float_oracle  # noqa: F401
from .scalars import EXACT, FLOAT, GaussianRational, format_scalar, parse_scalar  # noqa: F401
from .spectra import SpectralData, candidate_characters, projection_check, slodkowski, sp, taylor_oracle  # noqa: F401

__version__ = "0.1.0"
