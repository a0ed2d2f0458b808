"""Zero-truncated power series count distributions.

Each family is determined by its series function C(theta) = sum_{n>=1} a_n theta^n
on an open parameter interval.  The latent count N has mass
P(N = n) = a_n theta^n / C(theta), and everything the compound lifetime model
needs can be phrased in terms of C, its first two derivatives, and its inverse.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .errors import DomainError

__all__ = [
    "PowerSeriesFamily",
    "Geometric",
    "Poisson",
    "Logarithmic",
    "Binomial",
    "parse_family",
]

# below this, C(w) is replaced by its leading term a_1 * w in log space
_LOG_TINY_ARG = -60.0


def _check_image(u):
    u = np.asarray(u, dtype=float)
    if u.size and np.any(u <= 0.0):
        raise DomainError("argument of C^{-1} must be strictly positive")
    return u


class PowerSeriesFamily:
    """Base class for the zero-truncated power series families.

    Subclasses fill in the coefficient rule a_n, the series function C and
    its derivatives, the inverse of C, and the admissible open interval for
    theta.  All methods accept scalars; the vectorized ones (`pmf`,
    `sample_count`) also accept arrays.
    """

    name: str = ""
    theta_low: float = 0.0
    theta_high: float = 1.0
    support_max: int | None = None  # largest n with a_n > 0; None = unbounded
    a1: float = 1.0

    # -- series function -------------------------------------------------

    def c(self, theta: float) -> float:
        raise NotImplementedError

    def c_prime(self, theta: float) -> float:
        raise NotImplementedError

    def c_double_prime(self, theta: float) -> float:
        raise NotImplementedError

    def c_inverse(self, u: float) -> float:
        raise NotImplementedError

    def log_a(self, n):
        """log a_n for n >= 1 (elementwise)."""
        raise NotImplementedError

    def log_c(self, theta: float) -> float:
        self._check_theta(theta)
        return math.log(self.c(theta))

    def log_c_from_log_arg(self, log_w):
        """log C(exp(log_w)) for 0 < w < theta_high, stable for tiny w.

        Used by the censored likelihood where w = theta * Phi(-upsilon) can
        underflow; C(w) ~ a_1 w as w -> 0.
        """
        log_w = np.asarray(log_w, dtype=float)
        out = np.where(
            log_w < _LOG_TINY_ARG,
            math.log(self.a1) + log_w,
            self._log_c_clipped(np.exp(np.minimum(log_w, 700.0))),
        )
        return out if out.ndim else float(out)

    def _log_c_clipped(self, w):
        # elementwise log C(w); w already guaranteed representable
        w = np.maximum(w, 1e-300)
        return np.log(self._c_array(w))

    def _c_array(self, w):
        raise NotImplementedError

    # -- ratios used by the compound model --------------------------------

    def c_ratio(self, theta: float, q) -> float:
        """C(theta*q)/C(theta) for q in [0, 1] (the compound survival)."""
        raise NotImplementedError

    def pdf_factor(self, theta: float, q):
        """theta * C'(theta*q) / C(theta) (the compound density multiplier)."""
        raise NotImplementedError

    def log_pdf_factor(self, theta: float, q):
        """log of `pdf_factor`; stable when q underflows to 0."""
        raise NotImplementedError

    def hazard_factor(self, w):
        """w * C'(w) / C(w); tends to 1 as w -> 0."""
        raise NotImplementedError

    def c_curve_ratio(self, w):
        """C''(w)/C'(w), elementwise, for w inside [0, theta_high)."""
        raise NotImplementedError

    # raw derivative evaluations without a domain check; the information-matrix
    # transcription evaluates them at negative arguments
    def c_prime_raw(self, w):
        raise NotImplementedError

    def c_double_prime_raw(self, w):
        raise NotImplementedError

    def c_triple_prime_raw(self, w):
        raise NotImplementedError

    # -- count distribution ------------------------------------------------

    def pmf(self, theta: float, n):
        """P(N = n) = a_n theta^n / C(theta) for integer n >= 1."""
        self._check_theta(theta)
        n_arr = np.asarray(n)
        if np.any(n_arr < 1) or not np.issubdtype(n_arr.dtype, np.integer):
            raise DomainError("count n must be an integer >= 1, got %r" % (n,))
        if self.support_max is not None:
            inside = n_arr <= self.support_max
        else:
            inside = np.ones(n_arr.shape, dtype=bool)
        logp = np.where(
            inside,
            self.log_a(np.where(inside, n_arr, 1)) + n_arr * math.log(theta) - self.log_c(theta),
            -np.inf,
        )
        out = np.exp(logp)
        return out if out.ndim else float(out)

    def mean_count(self, theta: float) -> float:
        """E(N) = theta C'(theta) / C(theta)."""
        self._check_theta(theta)
        return theta * self.c_prime(theta) / self.c(theta)

    def sample_count(self, theta: float, rng: np.random.Generator, size=None):
        """Draw latent counts by sequential inversion of the pmf cdf.

        Returns an int for ``size=None``, otherwise an int64 array.
        Deterministic given the generator state.
        """
        self._check_theta(theta)
        scalar = size is None
        u = rng.random(1 if scalar else size)
        out = np.ones(u.shape, dtype=np.int64)
        p = self.pmf(theta, 1)
        cum = p
        pending = u > cum
        n = 1
        while pending.any():
            n += 1
            if self.support_max is not None and n > self.support_max:
                out[pending] = self.support_max  # numerical leftovers
                break
            p *= self._pmf_ratio(theta, n - 1)
            cum += p
            out[pending] = n
            pending &= u > cum
            if p == 0.0 or n > 50_000_000:
                out[pending] = n  # tail exhausted in double precision
                break
        return int(out[0]) if scalar else out

    def _pmf_ratio(self, theta: float, n: int) -> float:
        """p_{n+1} / p_n."""
        raise NotImplementedError

    # -- plumbing ----------------------------------------------------------

    def _check_theta(self, theta: float) -> None:
        if not (self.theta_low < theta < self.theta_high):
            raise DomainError(
                "theta=%g outside open interval (%g, %g) for the %s family"
                % (theta, self.theta_low, self.theta_high, self.name)
            )

    def label(self) -> str:
        return self.name

    def __repr__(self):
        return "%s()" % type(self).__name__

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self))


class Geometric(PowerSeriesFamily):
    """a_n = 1, C(theta) = theta / (1 - theta), theta in (0, 1)."""

    name = "geometric"
    theta_high = 1.0

    def c(self, theta):
        self._check_theta(theta)
        return theta / (1.0 - theta)

    def _c_array(self, w):
        return w / (1.0 - w)

    def c_prime(self, theta):
        self._check_theta(theta)
        return (1.0 - theta) ** -2

    def c_double_prime(self, theta):
        self._check_theta(theta)
        return 2.0 * (1.0 - theta) ** -3

    def c_inverse(self, u):
        u = _check_image(u)
        out = u / (1.0 + u)
        return out if out.ndim else float(out)

    def log_c(self, theta):
        self._check_theta(theta)
        return math.log(theta) - math.log1p(-theta)

    def log_a(self, n):
        return np.zeros(np.shape(n))

    def c_ratio(self, theta, q):
        return (1.0 - theta) * q / (1.0 - theta * q)

    def pdf_factor(self, theta, q):
        return (1.0 - theta) / (1.0 - theta * q) ** 2

    def log_pdf_factor(self, theta, q):
        return math.log1p(-theta) - 2.0 * np.log1p(-theta * q)

    def hazard_factor(self, w):
        return 1.0 / (1.0 - w)

    def c_curve_ratio(self, w):
        return 2.0 / (1.0 - np.asarray(w, dtype=float))

    def c_prime_raw(self, w):
        return (1.0 - np.asarray(w, dtype=float)) ** -2

    def c_double_prime_raw(self, w):
        return 2.0 * (1.0 - np.asarray(w, dtype=float)) ** -3

    def c_triple_prime_raw(self, w):
        return 6.0 * (1.0 - np.asarray(w, dtype=float)) ** -4

    def _pmf_ratio(self, theta, n):
        return theta


class Poisson(PowerSeriesFamily):
    """a_n = 1/n!, C(theta) = e^theta - 1, theta in (0, inf)."""

    name = "poisson"
    theta_high = math.inf

    def c(self, theta):
        self._check_theta(theta)
        return math.expm1(theta)

    def _c_array(self, w):
        return np.expm1(w)

    def c_prime(self, theta):
        self._check_theta(theta)
        return math.exp(theta)

    def c_double_prime(self, theta):
        self._check_theta(theta)
        return math.exp(theta)

    def c_inverse(self, u):
        u = _check_image(u)
        out = np.log1p(u)
        return out if out.ndim else float(out)

    def log_c(self, theta):
        self._check_theta(theta)
        return math.log(math.expm1(theta))

    def log_a(self, n):
        return -gammaln(np.asarray(n) + 1.0)

    def c_ratio(self, theta, q):
        return np.expm1(theta * q) / math.expm1(theta)

    def pdf_factor(self, theta, q):
        return theta * np.exp(theta * q) / math.expm1(theta)

    def log_pdf_factor(self, theta, q):
        return math.log(theta) + theta * q - self.log_c(theta)

    def hazard_factor(self, w):
        w = np.asarray(w, dtype=float)
        out = np.where(w > 0.0, w * np.exp(w) / np.expm1(np.where(w > 0.0, w, 1.0)), 1.0)
        return out if out.ndim else float(out)

    def c_curve_ratio(self, w):
        return np.ones(np.shape(w))

    def c_prime_raw(self, w):
        return np.exp(np.asarray(w, dtype=float))

    def c_double_prime_raw(self, w):
        return np.exp(np.asarray(w, dtype=float))

    def c_triple_prime_raw(self, w):
        return np.exp(np.asarray(w, dtype=float))

    def _pmf_ratio(self, theta, n):
        return theta / (n + 1.0)


class Logarithmic(PowerSeriesFamily):
    """a_n = 1/n, C(theta) = -log(1 - theta), theta in (0, 1)."""

    name = "logarithmic"
    theta_high = 1.0

    def c(self, theta):
        self._check_theta(theta)
        return -math.log1p(-theta)

    def _c_array(self, w):
        return -np.log1p(-w)

    def c_prime(self, theta):
        self._check_theta(theta)
        return 1.0 / (1.0 - theta)

    def c_double_prime(self, theta):
        self._check_theta(theta)
        return (1.0 - theta) ** -2

    def c_inverse(self, u):
        u = _check_image(u)
        out = -np.expm1(-u)
        return out if out.ndim else float(out)

    def log_a(self, n):
        return -np.log(np.asarray(n, dtype=float))

    def c_ratio(self, theta, q):
        return np.log1p(-theta * q) / math.log1p(-theta)

    def pdf_factor(self, theta, q):
        return theta / ((1.0 - theta * q) * -math.log1p(-theta))

    def log_pdf_factor(self, theta, q):
        return math.log(theta) - np.log1p(-theta * q) - math.log(-math.log1p(-theta))

    def hazard_factor(self, w):
        w = np.asarray(w, dtype=float)
        safe = np.where(w > 0.0, w, 0.5)
        out = np.where(w > 0.0, -safe / ((1.0 - safe) * np.log1p(-safe)), 1.0)
        return out if out.ndim else float(out)

    def c_curve_ratio(self, w):
        return 1.0 / (1.0 - np.asarray(w, dtype=float))

    def c_prime_raw(self, w):
        return (1.0 - np.asarray(w, dtype=float)) ** -1

    def c_double_prime_raw(self, w):
        return (1.0 - np.asarray(w, dtype=float)) ** -2

    def c_triple_prime_raw(self, w):
        return 2.0 * (1.0 - np.asarray(w, dtype=float)) ** -3

    def _pmf_ratio(self, theta, n):
        return theta * n / (n + 1.0)


class Binomial(PowerSeriesFamily):
    """a_n = binom(m, n), C(theta) = (theta + 1)^m - 1, theta in (0, 1).

    The number of trials m is a fixed model constant, never estimated.
    """

    name = "binomial"
    theta_high = 1.0

    def __init__(self, m: int):
        if not isinstance(m, int) or m < 1:
            raise DomainError("binomial trial count m must be a positive integer")
        self.m = m
        self.support_max = m
        self.a1 = float(m)

    def c(self, theta):
        self._check_theta(theta)
        return math.expm1(self.m * math.log1p(theta))

    def _c_array(self, w):
        return np.expm1(self.m * np.log1p(w))

    def c_prime(self, theta):
        self._check_theta(theta)
        return self.m * (1.0 + theta) ** (self.m - 1)

    def c_double_prime(self, theta):
        self._check_theta(theta)
        return self.m * (self.m - 1) * (1.0 + theta) ** (self.m - 2)

    def c_inverse(self, u):
        u = _check_image(u)
        if np.any(u >= self.c_at_upper()):
            raise DomainError("u exceeds the image endpoint C(1) = %g" % self.c_at_upper())
        out = np.expm1(np.log1p(u) / self.m)
        return out if out.ndim else float(out)

    def c_at_upper(self) -> float:
        return 2.0**self.m - 1.0

    def log_a(self, n):
        n = np.asarray(n)
        return gammaln(self.m + 1.0) - gammaln(n + 1.0) - gammaln(self.m - n + 1.0)

    def c_ratio(self, theta, q):
        return np.expm1(self.m * np.log1p(theta * q)) / self.c(theta)

    def pdf_factor(self, theta, q):
        return theta * self.m * (1.0 + theta * q) ** (self.m - 1) / self.c(theta)

    def log_pdf_factor(self, theta, q):
        return (
            math.log(theta)
            + math.log(self.m)
            + (self.m - 1) * np.log1p(theta * q)
            - self.log_c(theta)
        )

    def hazard_factor(self, w):
        w = np.asarray(w, dtype=float)
        safe = np.where(w > 0.0, w, 0.5)
        out = np.where(
            w > 0.0,
            safe * self.m * (1.0 + safe) ** (self.m - 1) / np.expm1(self.m * np.log1p(safe)),
            1.0,
        )
        return out if out.ndim else float(out)

    def c_curve_ratio(self, w):
        return (self.m - 1.0) / (1.0 + np.asarray(w, dtype=float))

    def c_prime_raw(self, w):
        return self.m * (1.0 + np.asarray(w, dtype=float)) ** (self.m - 1)

    def c_double_prime_raw(self, w):
        return self.m * (self.m - 1) * (1.0 + np.asarray(w, dtype=float)) ** (self.m - 2)

    def c_triple_prime_raw(self, w):
        m = self.m
        return m * (m - 1) * (m - 2) * (1.0 + np.asarray(w, dtype=float)) ** (m - 3)

    def _pmf_ratio(self, theta, n):
        return theta * (self.m - n) / (n + 1.0)

    def label(self):
        return "binomial(%d)" % self.m

    def __repr__(self):
        return "Binomial(m=%d)" % self.m

    def __eq__(self, other):
        return isinstance(other, Binomial) and other.m == self.m

    def __hash__(self):
        return hash(("binomial", self.m))


def parse_family(spec: str) -> PowerSeriesFamily:
    """Build a family from its CLI name: geometric | poisson | logarithmic | binomial:<m>."""
    token = spec.strip().lower()
    if token == "geometric":
        return Geometric()
    if token == "poisson":
        return Poisson()
    if token == "logarithmic":
        return Logarithmic()
    if token.startswith("binomial:"):
        try:
            m = int(token.split(":", 1)[1])
        except ValueError:
            raise DomainError("bad binomial trial count in %r" % spec) from None
        return Binomial(m)
    raise DomainError(
        "unknown family %r (expected geometric | poisson | logarithmic | binomial:<m>)" % spec
    )
