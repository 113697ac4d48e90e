"""Spherical clothoid: closed-form evaluation in confluent hypergeometric
functions, Humbert double series, RK4 oracles and identity checks."""
from ._backend import BACKEND
from .curve import (CurveParams, CurveSample, eval_derivatives, eval_position, frenet,
                    mehlum_xz, mehlum_y, project_point, stereographic, stereographic_pcf)
from .errors import (ConvergenceError, DomainError, NonFiniteError, PoleError,
                     SingularityError, SpheroError, SpheroOverflowError)
from .humbert import phi1, phi2, xi1
from .special import EvalResult, SeriesControl, gamma, hyp1f1, hyp2f1, ln_gamma, pochhammer

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CurveParams", "CurveSample", "eval_derivatives", "eval_position", "frenet",
    "mehlum_xz", "mehlum_y", "project_point", "stereographic", "stereographic_pcf",
    "ConvergenceError", "DomainError", "NonFiniteError", "PoleError", "SingularityError",
    "SpheroError", "SpheroOverflowError", "phi1", "phi2", "xi1", "EvalResult",
    "SeriesControl", "gamma", "hyp1f1", "hyp2f1", "ln_gamma", "pochhammer",
]
