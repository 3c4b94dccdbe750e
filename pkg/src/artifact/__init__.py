"""Two finite symmetric orthogonal polynomial families, their Fourier-transformed
function families, and a quadrature oracle that checks every relation numerically."""

from .errors import (
    ArtifactError,
    ConstraintError,
    ConvergenceError,
    DegenerateError,
    DomainError,
    NonConvergence,
    ParityViolation,
    PoleError,
    SingularParamError,
)
from .fourier import FnASpec, FnBSpec, PairingParams, fn_a, fn_b, theorem1_rhs, theorem2_rhs
from .quad import Integrand, QuadResult, TransformValue, fourier_numeric, integrate_line, integrate_semi
from .specfun import HyperSeries, beta, gamma, hyp, log_gamma, pochhammer
from .sympoly import FamilyAParams, FamilyBParams, SymParams, SymPoly, family_a, family_b

__version__ = "0.1.0"
