"""Sard-optimal quadrature for Fourier integrals in W2^(1,0)."""

from .coefficients import (
    CoefficientSet,
    cosine_coefficients,
    optimal_coefficients,
    optimal_coefficients_unit,
    sine_coefficients,
    trapezoid_coefficients,
)
from .error_norm import (
    ErrorNormReport,
    error_norm_report,
    norm_squared_asymptotic,
    norm_squared_bruteforce,
    norm_squared_closed,
)
from .errors import ConvergenceError, SampleError, SingularSystemError
from .grid import FourierWeight, UniformGrid
from .quadrature import (
    BUILTINS,
    QuadratureResult,
    SampledFunction,
    apply,
    integrate_fourier,
    seminorm_w210,
)

__version__ = "0.1.0"
