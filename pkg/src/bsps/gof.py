"""Goodness-of-fit statistics and model comparison.

The Cramer-von Mises and Anderson-Darling statistics follow the
Chen-Balakrishnan construction for composite hypotheses: fitted cdf values
are pushed to normal scores, standardized, and mapped back through the
normal cdf before the classical statistics (with their small-sample
corrections) are computed.  P-values come from a parametric bootstrap.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import ConvergenceError, DomainError, MismatchError, NumericalWarning
from .mle import DataSet, FitOptions, FitResult, fit

__all__ = [
    "GofReport",
    "ks_statistic",
    "cvm_ad",
    "bootstrap_statistics",
    "bootstrap_pvalues",
    "gof_report",
    "compare",
    "ModelRanking",
]

_V_CLIP = 1e-12


@dataclass
class GofReport:
    ks: float
    cvm: float
    ad: float
    p_cvm: float
    p_ad: float
    p_method: str = "bootstrap"
    n_boot: int = 0


def _fitted_u(model, data: DataSet) -> np.ndarray:
    if not data.fully_observed:
        raise DomainError("goodness-of-fit statistics require uncensored data")
    x = np.sort(data.values)
    return np.asarray(model.cdf(x))


def ks_statistic(model, data: DataSet) -> float:
    """Sup distance between the empirical cdf and the fitted cdf."""
    u = _fitted_u(model, data)
    n = u.size
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(i / n - u, u - (i - 1) / n)))


def cvm_ad(model, data: DataSet):
    """Cramer-von Mises and Anderson-Darling statistics, small-sample corrected.

    Returns the pair (W^2, A^2) after the normality transform of the fitted
    cdf values.  Transformed values are clipped away from {0, 1} with a
    warning if they degenerate.
    """
    u = _fitted_u(model, data)
    n = u.size
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        warnings.warn(
            "fitted cdf values hit 0 or 1; clipping before the normal transform",
            NumericalWarning,
            stacklevel=2,
        )
        u = np.clip(u, _V_CLIP, 1.0 - _V_CLIP)
    y = ndtri(u)
    v = ndtr((y - y.mean()) / y.std(ddof=1))
    if np.any(v <= 0.0) or np.any(v >= 1.0):
        warnings.warn(
            "standardized transform degenerated to 0 or 1; clipping",
            NumericalWarning,
            stacklevel=2,
        )
        v = np.clip(v, _V_CLIP, 1.0 - _V_CLIP)
    i = np.arange(1, n + 1)
    w2 = float(np.sum((v - (2.0 * i - 1.0) / (2.0 * n)) ** 2) + 1.0 / (12.0 * n))
    a2 = float(-n - np.sum((2.0 * i - 1.0) * (np.log(v) + np.log(1.0 - v[::-1]))) / n)
    w2 *= 1.0 + 0.5 / n
    a2 *= 1.0 + 0.75 / n + 2.25 / n**2
    return w2, a2


def bootstrap_statistics(family, data: DataSet, result: FitResult, n_boot: int, rng):
    """Simulate-and-refit statistics for the parametric bootstrap.

    Each replicate draws a dataset of the observed size from the fitted
    model (one spawned rng substream per replicate, so results do not depend
    on execution order), refits the same family warm-started at the parent
    estimates, and records (W^2, A^2).  Failed refits are dropped; more than
    5% drops is an error.
    """
    n = data.n
    warm = FitOptions(start=tuple(result.params))
    cvm_stats = []
    ad_stats = []
    dropped = 0
    for child in rng.spawn(n_boot):
        sim = DataSet(_simulate(result.model, n, child))
        try:
            refit = fit(family, sim, options=warm)
            b_cvm, b_ad = cvm_ad(refit.model, sim)
        except (ConvergenceError, DomainError, np.linalg.LinAlgError):
            dropped += 1
            continue
        cvm_stats.append(b_cvm)
        ad_stats.append(b_ad)
    if dropped > 0.05 * n_boot:
        raise ConvergenceError(
            "%d of %d bootstrap refits failed; p-values unreliable" % (dropped, n_boot)
        )
    return np.array(cvm_stats), np.array(ad_stats), dropped


def bootstrap_pvalues(family, data: DataSet, result: FitResult, n_boot: int, rng):
    """Parametric-bootstrap p-values for the (W^2, A^2) pair.

    p = proportion of simulated statistics at or above the observed ones;
    deterministic under a seeded generator.
    """
    if n_boot < 200:
        raise DomainError("n_boot must be at least 200")
    obs_cvm, obs_ad = cvm_ad(result.model, data)
    cvm_stats, ad_stats, _ = bootstrap_statistics(family, data, result, n_boot, rng)
    return float(np.mean(cvm_stats >= obs_cvm)), float(np.mean(ad_stats >= obs_ad))


def _simulate(model, n, rng):
    if hasattr(model, "sample_inverse"):
        return model.sample_inverse(rng, size=n)
    return model.sample(rng, size=n)


def gof_report(family, data: DataSet, result: FitResult, n_boot: int, rng) -> GofReport:
    """Assemble the full goodness-of-fit report for one fitted model."""
    ks = ks_statistic(result.model, data)
    cvm, ad = cvm_ad(result.model, data)
    p_cvm, p_ad = bootstrap_pvalues(family, data, result, n_boot, rng)
    return GofReport(ks=ks, cvm=cvm, ad=ad, p_cvm=p_cvm, p_ad=p_ad, n_boot=n_boot)


@dataclass
class ModelRanking:
    """Fits sorted by AIC (ties: BIC, then fewer parameters)."""

    fits: list
    best_aic: int
    best_bic: int

    def labels(self):
        return [f.label() for f in self.fits]


def compare(fits) -> ModelRanking:
    """Rank fits of different models to the same data by information criteria."""
    fits = list(fits)
    if not fits:
        raise DomainError("nothing to compare")
    base = fits[0].data
    for f in fits[1:]:
        if f.data is None or base is None or not f.data.same_as(base):
            raise MismatchError("fits being compared were made on different datasets")
    order = sorted(range(len(fits)), key=lambda j: (fits[j].aic, fits[j].bic, fits[j].n_params))
    ranked = [fits[j] for j in order]
    best_bic = min(range(len(ranked)), key=lambda j: (ranked[j].bic, ranked[j].n_params))
    return ModelRanking(fits=ranked, best_aic=0, best_bic=best_bic)
