"""Birnbaum-Saunders power series lifetime distributions.

Evaluation, sampling, maximum-likelihood fitting with asymptotic inference,
and goodness-of-fit diagnostics for the compound family obtained by taking
the minimum of a power-series-distributed number of Birnbaum-Saunders draws.
"""

from .bs import BirnbaumSaunders
from .errors import (
    BoundaryWarning,
    BspsError,
    ConvergenceError,
    ConvergenceWarning,
    DomainError,
    IntegrationError,
    MismatchError,
    NestingError,
    NonFiniteError,
    NumericalWarning,
    ParseError,
    SingularityError,
    SingularityWarning,
)
from .families import Binomial, Geometric, Logarithmic, Poisson, PowerSeriesFamily, parse_family
from .gof import GofReport, bootstrap_pvalues, compare, cvm_ad, gof_report, ks_statistic
from .mle import (
    DataSet,
    FitOptions,
    FitResult,
    confidence_intervals,
    fit,
    info_cross_check,
    log_likelihood,
    lr_test,
    observed_info,
    score,
)
from .model import BSPowerSeries

__version__ = "0.1.0"

__all__ = [
    "BirnbaumSaunders",
    "BSPowerSeries",
    "PowerSeriesFamily",
    "Geometric",
    "Poisson",
    "Logarithmic",
    "Binomial",
    "parse_family",
    "DataSet",
    "FitOptions",
    "FitResult",
    "fit",
    "log_likelihood",
    "score",
    "observed_info",
    "info_cross_check",
    "confidence_intervals",
    "lr_test",
    "GofReport",
    "ks_statistic",
    "cvm_ad",
    "bootstrap_pvalues",
    "gof_report",
    "compare",
    "BspsError",
    "DomainError",
    "ParseError",
    "IntegrationError",
    "ConvergenceError",
    "NonFiniteError",
    "SingularityError",
    "NestingError",
    "MismatchError",
    "ConvergenceWarning",
    "SingularityWarning",
    "BoundaryWarning",
    "NumericalWarning",
    "__version__",
]
