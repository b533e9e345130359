"""Multiple sine/cosine special values, Dirichlet series, log-trigonometric
integral identities and rational approximation certificates."""

__version__ = "0.1.0"

from .numerics import ExtReal, QuadratureResult, integrate, rational_to_ext  # noqa: E402
from .dirichlet import SpecialValue, beta_fn, catalan, eta, lambda_fn, zeta  # noqa: E402
from .multifun import log_Pr, log_multicos, log_multisin  # noqa: E402
from .poly import RationalPoly, derivative_at  # noqa: E402
from .approx import ApproxCertificate, ApproxTarget, certify  # noqa: E402

__all__ = [
    "ExtReal", "QuadratureResult", "integrate", "rational_to_ext",
    "SpecialValue", "zeta", "eta", "lambda_fn", "beta_fn", "catalan",
    "log_Pr", "log_multicos", "log_multisin",
    "RationalPoly", "derivative_at",
    "ApproxTarget", "ApproxCertificate", "certify",
]
