"""Compound lifetime law: minimum of N iid Birnbaum-Saunders draws.

N follows a zero-truncated power series family with parameter theta, giving
the three-parameter model with survival C(theta * Phi(-upsilon)) / C(theta).
The geometric, Poisson and logarithmic specializations evaluate through the
family's closed-form ratios; the same code path serves the binomial family.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import log_ndtr, ndtr, ndtri

from .bs import BirnbaumSaunders, _check_positive
from .errors import ConvergenceWarning, DomainError, IntegrationError
from .families import PowerSeriesFamily

__all__ = ["BSPowerSeries"]


@dataclass(frozen=True)
class BSPowerSeries:
    """Immutable model triple (family, theta, base Birnbaum-Saunders law)."""

    family: PowerSeriesFamily
    theta: float
    bs: BirnbaumSaunders

    def __post_init__(self):
        self.family._check_theta(self.theta)

    @classmethod
    def of(cls, family: PowerSeriesFamily, theta: float, alpha: float, beta: float):
        return cls(family, theta, BirnbaumSaunders(alpha, beta))

    @property
    def alpha(self) -> float:
        return self.bs.alpha

    @property
    def beta(self) -> float:
        return self.bs.beta

    def label(self) -> str:
        return "BS-%s" % self.family.label()

    # -- evaluation --------------------------------------------------------

    def survival(self, x):
        q = self.bs.survival(x)
        out = self.family.c_ratio(self.theta, np.asarray(q))
        return out if np.ndim(out) else float(out)

    def cdf(self, x):
        out = 1.0 - np.asarray(self.survival(x))
        return out if out.ndim else float(out)

    def log_survival(self, x):
        """Stable even where the base survival underflows (far right tail)."""
        lq = log_ndtr(-np.asarray(self.bs.standardized(x)))
        out = self.family.log_c_from_log_arg(math.log(self.theta) + lq) - self.family.log_c(
            self.theta
        )
        return out if np.ndim(out) else float(out)

    def logpdf(self, x):
        q = np.asarray(self.bs.survival(x))
        out = self.bs.logpdf(x) + self.family.log_pdf_factor(self.theta, q)
        return out if np.ndim(out) else float(out)

    def pdf(self, x):
        out = np.exp(self.logpdf(x))
        return out if np.ndim(out) else float(out)

    def hazard(self, x):
        """Base hazard times w C'(w)/C(w) at w = theta * Phi(-upsilon)."""
        lq = log_ndtr(-np.asarray(self.bs.standardized(x)))
        w = self.theta * np.exp(lq)
        out = self.bs.hazard(x) * self.family.hazard_factor(w)
        return out if np.ndim(out) else float(out)

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if u.size and (np.any(u <= 0.0) or np.any(u >= 1.0)):
            raise DomainError("quantile argument must lie in (0, 1)")
        c_theta = self.family.c(self.theta)
        delta = -ndtri(np.asarray(self.family.c_inverse((1.0 - u) * c_theta)) / self.theta)
        out = self.beta * np.exp(2.0 * np.arcsinh(0.5 * self.alpha * delta))
        return out if out.ndim else float(out)

    # -- sampling ------------------------------------------------------------

    def sample_inverse(self, rng: np.random.Generator, size=None):
        """Inverse-cdf route: push uniforms through the quantile function."""
        u = rng.random(1 if size is None else size)
        out = self.quantile(u)
        return float(out[0]) if size is None else out

    def sample_compound(self, rng: np.random.Generator, size=None):
        """Constructive route: draw N, then the minimum of N base draws."""
        counts = self.family.sample_count(self.theta, rng, size=1 if size is None else size)
        draws = self.bs.sample(rng, size=int(counts.sum()))
        starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        mins = np.minimum.reduceat(draws, starts)
        return float(mins[0]) if size is None else mins

    # -- moments -----------------------------------------------------------

    def moment(self, s: int, n_max: int = 200) -> float:
        """E(X^s) by the alternating double series over count-weighted PWMs.

        Blocks are added for n = 1, 2, ... until one contributes less than
        1e-12 of the running sum (hard cap ``n_max``); a ConvergenceWarning
        reports the last block when it still exceeds 1e-8 relative.
        """
        if s < 1:
            raise DomainError("moment order s must be a positive integer")
        if n_max < 1:
            raise DomainError("n_max must be >= 1")
        limit = n_max
        if self.family.support_max is not None:
            limit = min(limit, self.family.support_max)
        taus: list[float] = []  # taus[k] = pwm(s, k)
        total = 0.0
        block = 0.0
        for n in range(1, limit + 1):
            while len(taus) < n:
                taus.append(self.bs.pwm(s, len(taus)))
            p_n = self.family.pmf(self.theta, n)
            inner = 0.0
            for k in range(n):
                inner += (-1.0) ** k * math.comb(n - 1, k) * taus[k]
            block = n * p_n * inner
            total += block
            if abs(block) < 1e-12 * max(abs(total), 1e-300):
                break
        if abs(block) > 1e-8 * max(abs(total), 1e-300):
            warnings.warn(
                "moment series truncated at n=%d with last block %.3e (%.2e of sum)"
                % (n, block, abs(block) / max(abs(total), 1e-300)),
                ConvergenceWarning,
                stacklevel=2,
            )
        return total

    # -- order statistics ----------------------------------------------------

    def order_stat_pdf(self, i: int, m: int, x):
        """Density of the i-th order statistic of an iid sample of size m."""
        self._check_order(i, m)
        x = _check_positive(x)
        lead = math.lgamma(m + 1) - math.lgamma(i) - math.lgamma(m - i + 1)
        f = np.asarray(self.pdf(x))
        big_f = np.asarray(self.cdf(x))
        surv = np.asarray(self.survival(x))
        out = math.exp(lead) * f * big_f ** (i - 1) * surv ** (m - i)
        return out if out.ndim else float(out)

    def order_stat_moment(self, i: int, m: int, s: int) -> float:
        """E(X_{i:m}^s) via the finite alternating sum of survival-power integrals."""
        self._check_order(i, m)
        if s < 1:
            raise DomainError("moment order s must be a positive integer")
        total = 0.0
        for j in range(m - i + 1, m + 1):
            coef = (
                (-1.0) ** (j - m + i - 1)
                * math.comb(j - 1, m - i)
                * math.comb(m, j)
            )
            total += coef * self._survival_power_integral(s, j)
        return s * total

    def _survival_power_integral(self, s: int, j: int) -> float:
        """integral of x^{s-1} S(x)^j dx on (0, inf), via x = beta e^y."""

        def integrand(y):
            x = self.beta * math.exp(y)
            return math.exp(s * math.log(x) + j * self.log_survival(x))

        val, err = quad(integrand, -40.0, 40.0, epsabs=1e-12, epsrel=1e-9, limit=300)
        if not math.isfinite(val) or err > 1e-7 * max(abs(val), 1e-12):
            raise IntegrationError(
                "survival-power quadrature failed: value=%r, error=%r" % (val, err)
            )
        return val

    @staticmethod
    def _check_order(i: int, m: int) -> None:
        if not (1 <= i <= m):
            raise DomainError("order statistic indices need 1 <= i <= m, got i=%d m=%d" % (i, m))
