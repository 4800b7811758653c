"""Numerical verification of identities built on skew-harmonic numbers.

The package evaluates H_n, H_n^- and H_n^(2), the real di- and
trilogarithm, accelerated alternating sums and quadratures, and checks a
registry of closed-form identities along independent numerical routes.
"""

__version__ = "0.1.0"

from .errors import (ConvergenceError, DomainError, QuadratureError,  # noqa: E402
                     SkewHarmonicError, UsageError)
from .realcore import (CATALAN, LN2, PI, ZETA3, ClosedForm, PreciseValue,  # noqa: E402
                       compensated_sum, constant, eval_closed_form)
from .harmonic import HarmonicCursor, harmonic_stream, inner_sum  # noqa: E402
from .polylog import li2, li3, log_square_integral  # noqa: E402
from .accel import SeriesSpec, sum_cvz, sum_direct  # noqa: E402
from .quad import gl_nodes, integrate_1d, integrate_unit_square  # noqa: E402
from .identities import Route, evaluate, registry, verify_all  # noqa: E402

__all__ = [
    "__version__", "SkewHarmonicError", "UsageError", "DomainError", "ConvergenceError",
    "QuadratureError", "PreciseValue", "ClosedForm", "PI", "LN2", "ZETA3", "CATALAN",
    "compensated_sum", "constant", "eval_closed_form", "HarmonicCursor",
    "harmonic_stream", "inner_sum", "li2", "li3", "log_square_integral", "SeriesSpec",
    "sum_cvz", "sum_direct", "gl_nodes", "integrate_1d", "integrate_unit_square",
    "Route", "evaluate", "registry", "verify_all",
]
