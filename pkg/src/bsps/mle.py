"""Maximum-likelihood fitting with asymptotic inference.

Fits either the three-parameter compound model (theta, alpha, beta) or the
plain two-parameter base law (alpha, beta) to possibly right-censored data.
The optimizer works in unconstrained coordinates (logit/log of theta, log of
alpha and beta) with a quasi-Newton search from several starts and a final
Newton polish on the numeric Hessian.  Standard errors come from the observed
information matrix, computed by central differences of the analytic score.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.special import expit, log_ndtr, logit, ndtr, ndtri
from scipy.stats import chi2

from .bs import BirnbaumSaunders
from .errors import (
    BoundaryWarning,
    ConvergenceError,
    DomainError,
    MismatchError,
    NestingError,
    NonFiniteError,
    SingularityError,
    SingularityWarning,
)
from .families import PowerSeriesFamily
from .model import BSPowerSeries

__all__ = [
    "DataSet",
    "FitOptions",
    "FitResult",
    "log_likelihood",
    "score",
    "observed_info",
    "closed_form_info",
    "info_cross_check",
    "fit",
    "confidence_intervals",
    "lr_test",
]

_BOUNDARY_TOL = 1e-4


class DataSet:
    """Positive observations with event indicators (1 = failure observed,
    0 = right-censored).  Treated as immutable once constructed."""

    def __init__(self, values, censored=None, name: str = ""):
        self.values = np.atleast_1d(np.asarray(values, dtype=float))
        if self.values.ndim != 1 or self.values.size == 0:
            raise DomainError("values must be a non-empty one-dimensional sequence")
        if np.any(self.values <= 0.0) or not np.all(np.isfinite(self.values)):
            raise DomainError("all observation values must be finite and > 0")
        if censored is None:
            self.censored = np.ones(self.values.shape, dtype=np.int64)
        else:
            self.censored = np.atleast_1d(np.asarray(censored, dtype=np.int64))
            if self.censored.shape != self.values.shape:
                raise DomainError("values and censoring indicators differ in length")
            if np.any((self.censored != 0) & (self.censored != 1)):
                raise DomainError("censoring indicators must be 0 or 1")
        self.name = name

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def n_events(self) -> int:
        return int(self.censored.sum())

    @property
    def fully_observed(self) -> bool:
        return bool(np.all(self.censored == 1))

    def scaled(self, k: float) -> "DataSet":
        return DataSet(self.values * k, self.censored, self.name)

    def same_as(self, other: "DataSet") -> bool:
        return np.array_equal(self.values, other.values) and np.array_equal(
            self.censored, other.censored
        )

    def __repr__(self):
        return "DataSet(n=%d, events=%d, name=%r)" % (self.n, self.n_events, self.name)


@dataclass
class FitOptions:
    multistart: int | None = None  # cap on the number of starts; None = full grid
    gtol: float = 1e-6  # sup-norm gradient tolerance, transformed space
    step_tol: float = 1e-10
    max_iter: int = 500
    theta_starts: tuple | None = None
    start: tuple | None = None  # explicit (theta, alpha, beta) / (alpha, beta) warm start


@dataclass
class FitResult:
    model: object  # BSPowerSeries or BirnbaumSaunders at the estimates
    family: PowerSeriesFamily | None
    params: np.ndarray
    param_names: tuple
    stderr: np.ndarray
    loglik: float
    neg2loglik: float
    info_matrix: np.ndarray
    aic: float
    bic: float
    converged: bool
    grad_norm: float
    boundary_flag: bool
    n_obs: int
    data: DataSet = field(repr=False, default=None)

    @property
    def n_params(self) -> int:
        return len(self.params)

    def label(self) -> str:
        return "BS" if self.family is None else "BS-%s" % self.family.label()


# ---------------------------------------------------------------------------
# likelihood and analytic score
# ---------------------------------------------------------------------------


def log_likelihood(model, data: DataSet) -> float:
    """Sum of log density over events plus log survival over censored points."""
    x = data.values
    d = data.censored
    terms = np.empty(x.shape)
    ev = d == 1
    if ev.any():
        terms[ev] = model.logpdf(x[ev])
    if (~ev).any():
        terms[~ev] = model.log_survival(x[~ev])
    bad = ~np.isfinite(terms)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NonFiniteError(
            "log-likelihood term %d is %r at x=%g" % (i, terms[i], x[i])
        )
    return float(terms.sum())


def _score_pieces(model: BSPowerSeries, x: np.ndarray):
    bs = model.bs
    ups = np.asarray(bs.standardized(x))
    q = ndtr(-ups)
    phi = np.exp(-0.5 * ups**2) / math.sqrt(2.0 * math.pi)
    s = np.sqrt(x / bs.beta)
    return ups, q, phi, s


def score(model, data: DataSet) -> np.ndarray:
    """Analytic gradient of the log-likelihood.

    Defined for fully observed data; censored fits fall back to numeric
    gradients inside `fit`.
    Returns (d/dtheta, d/dalpha, d/dbeta) for the compound model and
    (d/dalpha, d/dbeta) for the base law.
    """
    if not data.fully_observed:
        raise DomainError("analytic score requires fully observed data")
    x = data.values
    n = x.size
    if isinstance(model, BirnbaumSaunders):
        alpha, beta = model.alpha, model.beta
        tau = x / beta + beta / x
        u_alpha = -n / alpha - 2.0 * n / alpha**3 + tau.sum() / alpha**3
        u_beta = (
            -n / (2.0 * beta)
            + np.sum(1.0 / (x + beta))
            + np.sum(x / beta - beta / x) / (2.0 * alpha**2 * beta)
        )
        return np.array([u_alpha, u_beta])

    fam, theta = model.family, model.theta
    alpha, beta = model.alpha, model.beta
    ups, q, phi, s = _score_pieces(model, x)
    tau = x / beta + beta / x
    ratio = fam.c_curve_ratio(theta * q)  # C''(w)/C'(w)
    u_theta = (
        n / theta
        - n * fam.c_prime(theta) / fam.c(theta)
        + np.sum(q * ratio)
    )
    u_alpha = (
        -n / alpha
        - 2.0 * n / alpha**3
        + tau.sum() / alpha**3
        + np.sum(ratio * theta * phi * ups / alpha)
    )
    u_beta = (
        -n / (2.0 * beta)
        + np.sum(1.0 / (x + beta))
        + np.sum(x / beta - beta / x) / (2.0 * alpha**2 * beta)
        + np.sum(ratio * theta * phi * (s + 1.0 / s) / (2.0 * alpha * beta))
    )
    return np.array([u_theta, u_alpha, u_beta])


# ---------------------------------------------------------------------------
# observed information
# ---------------------------------------------------------------------------


def _params_of(model) -> np.ndarray:
    if isinstance(model, BirnbaumSaunders):
        return np.array([model.alpha, model.beta])
    return np.array([model.theta, model.alpha, model.beta])


def _rebuild(model, params: np.ndarray):
    if isinstance(model, BirnbaumSaunders):
        return BirnbaumSaunders(params[0], params[1])
    return BSPowerSeries.of(model.family, params[0], params[1], params[2])


def _param_bounds(model):
    if isinstance(model, BirnbaumSaunders):
        return [(0.0, math.inf), (0.0, math.inf)]
    fam = model.family
    return [(fam.theta_low, fam.theta_high), (0.0, math.inf), (0.0, math.inf)]


def _fd_steps(params, bounds, scale=1e-5, floor=1e-7):
    steps = np.maximum(scale * np.abs(params), floor)
    for j, (lo, hi) in enumerate(bounds):
        room = min(params[j] - lo, hi - params[j]) if math.isfinite(hi) else params[j] - lo
        if room > 0:
            steps[j] = min(steps[j], 0.45 * room)
    return steps


def _grad_at(model, data, params):
    if data.fully_observed:
        return score(_rebuild(model, params), data)
    # numeric gradient of the censored log-likelihood
    bounds = _param_bounds(model)
    h = _fd_steps(params, bounds, scale=1e-6, floor=1e-8)
    g = np.empty(len(params))
    for j in range(len(params)):
        up = params.copy()
        dn = params.copy()
        up[j] += h[j]
        dn[j] -= h[j]
        g[j] = (
            log_likelihood(_rebuild(model, up), data)
            - log_likelihood(_rebuild(model, dn), data)
        ) / (2.0 * h[j])
    return g


def observed_info(model, data: DataSet) -> np.ndarray:
    """Observed information: numeric Hessian of -loglik, symmetrized.

    Central differences of the analytic score (numeric gradient for censored
    data) with steps max(1e-5 |param|, 1e-7), shrunk to stay inside the
    parameter domain.
    """
    params = _params_of(model)
    bounds = _param_bounds(model)
    h = _fd_steps(params, bounds)
    k = len(params)
    jac = np.empty((k, k))
    for j in range(k):
        up = params.copy()
        dn = params.copy()
        up[j] += h[j]
        dn[j] -= h[j]
        jac[j] = (_grad_at(model, data, up) - _grad_at(model, data, dn)) / (2.0 * h[j])
    info = -0.5 * (jac + jac.T)
    cond = np.linalg.cond(info)
    if not np.isfinite(cond) or cond > 1e12:
        warnings.warn(
            "observed information is near singular (condition number %.3g)" % cond,
            SingularityWarning,
            stacklevel=2,
        )
    return info


def closed_form_info(model: BSPowerSeries, data: DataSet) -> np.ndarray:
    """Closed-form observed-information elements for the compound model.

    Transcribed from published second-derivative expressions whose argument
    conventions are internally inconsistent; kept only as a cross-check and
    expected to disagree with the numeric Hessian for some families.  Use
    `observed_info` for inference.
    """
    if isinstance(model, BirnbaumSaunders):
        raise DomainError("closed-form elements exist only for the compound model")
    fam, theta = model.family, model.theta
    alpha, beta = model.alpha, model.beta
    x = data.values
    n = x.size
    ups, q, phi, s = _score_pieces(model, x)
    tau = x / beta + beta / x
    tau_s = s + 1.0 / s  # tau(sqrt(x/beta))
    rho = s - 1.0 / s
    rho_s = np.sqrt(s) - 1.0 / np.sqrt(s)  # rho(sqrt(x/beta))

    a_arg = -theta * q  # the printed argument of every C-derivative
    cp = fam.c_prime_raw(a_arg)
    cpp = fam.c_double_prime_raw(a_arg)
    cppp = fam.c_triple_prime_raw(a_arg)

    # partials of the printed argument with respect to the parameters
    q_a = phi * ups / alpha
    q_b = phi * tau_s / (2.0 * alpha * beta)
    a_t = -q
    a_a = -theta * q_a
    a_b = -theta * q_b
    q_aa = -phi * ups * (2.0 - ups**2) / alpha**2
    q_ab = -phi * (1.0 - ups**2) * tau_s / (2.0 * alpha**2 * beta)
    q_bb = (
        phi * ups * tau_s**2 / (4.0 * alpha**2 * beta**2)
        - phi * ups / (4.0 * beta**2)
        - phi * tau_s / (2.0 * alpha * beta**2)
    )
    a_aa = -theta * q_aa
    a_ab = -theta * q_ab
    a_bb = -theta * q_bb
    a_tb = -q_b

    cp_a = cpp * a_a  # C'_alpha at the printed argument
    cp_b = cpp * a_b
    cp_aa = cppp * a_a * a_a + cpp * a_aa
    cp_ab = cppp * a_a * a_b + cpp * a_ab
    cp_bb = cppp * a_b * a_b + cpp * a_bb
    cp_tb = cppp * a_t * a_b + cpp * a_tb

    c_t = fam.c(theta)
    cp_t = fam.c_prime(theta)
    cpp_t = fam.c_double_prime(theta)

    u_tt = (
        -n / theta**2
        - n * (cpp_t / c_t - (cp_t / c_t) ** 2)
        - np.sum(q**2 * (cpp / cp) ** 2)
    )
    u_ta = (
        np.sum(phi * rho * cp_a / cp) / alpha**2
        + theta / alpha**2 * np.sum(phi * tau_s * cp_ab / cp)
        - theta / alpha**2 * np.sum(phi * q * tau_s * cp_a / cp)
    )
    u_tb = (
        -np.sum(cp_b / cp) / (2.0 * alpha * beta)
        - theta / (2.0 * alpha * beta) * np.sum(cp_tb / cp)
        + theta / (2.0 * alpha * beta) * np.sum(q * cp_a * cpp / cp)
    )
    u_aa = (
        -n / alpha**2 * (1.0 + 6.0 / alpha**2)
        - 3.0 / alpha**4 * tau.sum()
        - 2.0 * theta / alpha**3 * np.sum(cp_a / cp)
        + theta / alpha**2 * np.sum(cp_aa / cp)
        - (theta / alpha**2) ** 2 * np.sum(phi * rho * cp_a * cpp / cp**2)
    )
    u_ab = (
        -np.sum(x / beta - beta / x) / (alpha**3 * beta)
        - theta / (2.0 * alpha**3 * beta) * np.sum(ups * phi * tau_s * cp_a * cpp / cp)
        + theta / alpha**2 * np.sum(cp_ab / cp)
    )
    u_bb = (
        n / (2.0 * beta**2)
        - np.sum(x / beta + beta / x) / (2.0 * alpha**2 * beta**2)
        - tau.sum() / (2.0 * alpha**2 * beta**2)
        - theta / (2.0 * alpha * beta**2) * np.sum(cp_b / cp)
        - theta**2
        / (2.0 * alpha**2 * beta)
        * np.sum(
            phi**2 * tau_s * (x / (2.0 * beta**2) / s - s / (2.0 * x)) * cp_b / cp**2
        )
        + theta / (2.0 * alpha * beta) ** 2 * np.sum(ups * phi * tau_s * tau_s * cp_b / cp)
        + theta / (4.0 * alpha * beta**2) * np.sum(phi * rho_s * cp_b / cp)
        + theta / (2.0 * alpha * beta) * np.sum(phi * tau_s * cp_bb / cp)
    )
    return np.array([[u_tt, u_ta, u_tb], [u_ta, u_aa, u_ab], [u_tb, u_ab, u_bb]])


@dataclass
class InfoCrossCheck:
    numeric: np.ndarray
    closed_form: np.ndarray
    max_abs_diff: float
    max_rel_diff: float

    @property
    def agrees(self) -> bool:
        return self.max_rel_diff < 1e-3


def info_cross_check(model: BSPowerSeries, data: DataSet) -> InfoCrossCheck:
    """Run both information computations and report their discrepancy."""
    numeric = observed_info(model, data)
    closed = closed_form_info(model, data)
    diff = np.abs(numeric - closed)
    scale = np.maximum(np.abs(numeric), 1e-8)
    return InfoCrossCheck(numeric, closed, float(diff.max()), float((diff / scale).max()))


# ---------------------------------------------------------------------------
# fitting
# ---------------------------------------------------------------------------


def _theta_transform(family: PowerSeriesFamily):
    """Map theta to/from an unconstrained coordinate; also d theta / d coord.

    The coordinate is clamped a relative margin of 1e-4 inside the open
    interval.  Some members of the class (the logarithmic one in particular)
    have likelihoods that keep improving, log-log slowly, all the way to the
    boundary, so no interior maximum exists; the clamp pins such fits at the
    margin and `fit` flags them via boundary_flag/BoundaryWarning.
    """
    if math.isfinite(family.theta_high):
        lo, hi = family.theta_low, family.theta_high
        span = hi - lo
        c_max = float(logit(1.0 - _BOUNDARY_TOL))  # ~9.21

        def fwd(theta):
            return float(logit(min(max((theta - lo) / span, _BOUNDARY_TOL), 1.0 - _BOUNDARY_TOL)))

        def back(c):
            return lo + span * float(expit(min(max(c, -c_max), c_max)))

        def dtheta(c):
            p = float(expit(min(max(c, -c_max), c_max)))
            return span * p * (1.0 - p)

    else:
        c_min = math.log(1e-8)

        def fwd(theta):
            return math.log(max(theta, 1e-8))

        def back(c):
            return math.exp(min(max(c, c_min), 700.0))

        def dtheta(c):
            return math.exp(min(max(c, c_min), 700.0))

    return fwd, back, dtheta


def _moment_start(data: DataSet):
    """Modified-moment initials for the base law: beta0 = median,
    alpha0 = sqrt(2 (mean/median - 1)), clipped to [0.05, 5]."""
    events = data.values[data.censored == 1]
    med = float(np.median(events))
    mean = float(np.mean(events))
    alpha0 = math.sqrt(max(2.0 * (mean / med - 1.0), 1e-6))
    return min(max(alpha0, 0.05), 5.0), med


def _default_starts(family, data: DataSet):
    alpha0, beta0 = _moment_start(data)
    if family is None:
        return [(alpha0, beta0), (2.0 * alpha0, beta0), (0.5 * alpha0, beta0)]
    if math.isfinite(family.theta_high):
        span = family.theta_high - family.theta_low
        # the last start sits at the clamp margin: boundary-divergent likelihoods
        # (no interior optimum) then profile (alpha, beta) at the pinned theta
        thetas = tuple(family.theta_low + f * span for f in (0.1, 0.5, 0.9, 1.0 - _BOUNDARY_TOL))
    else:
        thetas = (0.5, 2.0, 5.0)
    starts = []
    for theta0 in thetas:
        starts.append((theta0, alpha0, beta0))
        # rescale so the model median matches the sample median
        try:
            unit_med = BSPowerSeries.of(family, theta0, alpha0, 1.0).quantile(0.5)
            starts.append((theta0, alpha0, beta0 / unit_med))
        except (DomainError, FloatingPointError):
            pass
    return starts


def fit(family: PowerSeriesFamily | None, data: DataSet, options: FitOptions | None = None) -> FitResult:
    """Maximize the (censored) log-likelihood for one family (None = base law).

    Runs a quasi-Newton search from every start, polishes the best with
    Newton steps on the numeric Hessian, and packages estimates, standard
    errors from the observed information, and AIC/BIC.
    """
    opts = options or FitOptions()
    k = 2 if family is None else 3
    if data.n_events < k:
        raise DomainError(
            "need at least %d event observations to fit %d parameters" % (k, k)
        )

    if family is not None:
        t_fwd, t_back, t_dtheta = _theta_transform(family)

    def to_params(z):
        if family is None:
            return np.array([math.exp(min(z[0], 700.0)), math.exp(min(z[1], 700.0))])
        return np.array(
            [t_back(z[0]), math.exp(min(z[1], 700.0)), math.exp(min(z[2], 700.0))]
        )

    def to_internal(params):
        if family is None:
            return np.array([math.log(params[0]), math.log(params[1])])
        return np.array([t_fwd(params[0]), math.log(params[1]), math.log(params[2])])

    def build(params):
        if family is None:
            return BirnbaumSaunders(params[0], params[1])
        return BSPowerSeries.of(family, params[0], params[1], params[2])

    def nll(z):
        try:
            return -log_likelihood(build(to_params(z)), data)
        except (DomainError, NonFiniteError, OverflowError, FloatingPointError):
            return math.inf

    use_analytic = data.fully_observed

    def grad(z):
        params = to_params(z)
        try:
            u = score(build(params), data)
        except (DomainError, NonFiniteError, OverflowError, FloatingPointError):
            return np.full(k, np.nan)
        if family is None:
            chain = params  # d(alpha,beta)/d(log alpha,log beta)
        else:
            chain = np.array([t_dtheta(z[0]), params[1], params[2]])
        return -u * chain

    def num_grad(z):
        h = 1e-6
        g = np.empty(k)
        for j in range(k):
            up = z.copy()
            dn = z.copy()
            up[j] += h
            dn[j] -= h
            g[j] = (nll(up) - nll(dn)) / (2.0 * h)
        return g

    grad_fn = grad if use_analytic else num_grad

    if opts.start is not None:
        starts = [tuple(opts.start)]
    else:
        starts = _default_starts(family, data)
        if opts.theta_starts is not None and family is not None:
            alpha0, beta0 = _moment_start(data)
            starts = [(t, alpha0, beta0) for t in opts.theta_starts]
        if opts.multistart is not None:
            starts = starts[: max(opts.multistart, 1)]

    best = None
    for start in starts:
        try:
            z0 = to_internal(np.asarray(start, dtype=float))
        except (ValueError, DomainError):
            continue
        if not math.isfinite(nll(z0)):
            continue
        res = minimize(
            nll,
            z0,
            jac=grad_fn if use_analytic else None,
            method="BFGS",
            options={"gtol": 1e-8, "maxiter": opts.max_iter},
        )
        z, f = res.x, float(res.fun)
        z, f, converged, gnorm = _newton_polish(nll, grad_fn, z, f, opts)
        if math.isfinite(f) and (best is None or f < best[1]):
            best = (z, f, converged, gnorm)

    if best is None:
        raise ConvergenceError("all optimizer starts failed for %s" % (family or "BS"))

    z_hat, f_hat, converged, grad_norm = best
    params = to_params(z_hat)
    model = build(params)
    loglik = -f_hat

    boundary = False
    if family is not None:
        theta_hat = params[0]
        if math.isfinite(family.theta_high):
            span = family.theta_high - family.theta_low
            boundary = (
                min(theta_hat - family.theta_low, family.theta_high - theta_hat)
                <= _BOUNDARY_TOL * span * (1.0 + 1e-9)
            )
        else:
            boundary = theta_hat - family.theta_low <= _BOUNDARY_TOL
        if boundary:
            warnings.warn(
                "theta estimate %.6g is pinned at the edge of its interval; "
                "standard errors there are unreliable" % theta_hat,
                BoundaryWarning,
                stacklevel=2,
            )

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SingularityWarning)
        info = observed_info(model, data)
    stderr = _stderr_from_info(info, warn=not boundary)

    n = data.n
    aic = -2.0 * loglik + 2.0 * k
    bic = -2.0 * loglik + k * math.log(n)
    names = ("alpha", "beta") if family is None else ("theta", "alpha", "beta")
    return FitResult(
        model=model,
        family=family,
        params=params,
        param_names=names,
        stderr=stderr,
        loglik=loglik,
        neg2loglik=-2.0 * loglik,
        info_matrix=info,
        aic=aic,
        bic=bic,
        converged=bool(converged),
        grad_norm=grad_norm,
        boundary_flag=bool(boundary),
        n_obs=n,
        data=data,
    )


def _newton_polish(nll, grad_fn, z, f, opts: FitOptions):
    """Newton steps on the numeric Hessian until the gradient or step is tiny."""
    g = grad_fn(z)
    gnorm = float(np.max(np.abs(g))) if np.all(np.isfinite(g)) else math.inf
    converged = gnorm < opts.gtol
    for _ in range(25):
        if gnorm < opts.gtol:
            converged = True
            break
        hess = _hess_of_grad(grad_fn, z)
        try:
            step = np.linalg.solve(hess, -g)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hess, -g, rcond=None)[0]  # clamped/flat directions
        if not np.all(np.isfinite(step)):
            break
        improved = False
        for t in (1.0, 0.5, 0.25, 0.1, 0.01):
            z_try = z + t * step
            f_try = nll(z_try)
            if f_try < f:
                z, f = z_try, f_try
                improved = True
                step_size = float(np.max(np.abs(t * step)))
                break
        if not improved:
            break
        g = grad_fn(z)
        gnorm = float(np.max(np.abs(g))) if np.all(np.isfinite(g)) else math.inf
        if step_size < opts.step_tol:
            converged = True
            break
    return z, f, converged, gnorm


def _hess_of_grad(grad_fn, z, h: float = 1e-5):
    k = len(z)
    hess = np.empty((k, k))
    for j in range(k):
        up = z.copy()
        dn = z.copy()
        up[j] += h
        dn[j] -= h
        hess[j] = (grad_fn(up) - grad_fn(dn)) / (2.0 * h)
    return 0.5 * (hess + hess.T)


def _stderr_from_info(info: np.ndarray, warn: bool = True):
    k = info.shape[0]
    try:
        cov = np.linalg.inv(info)
        diag = np.diag(cov)
        if np.any(diag <= 0.0) or not np.all(np.isfinite(diag)):
            raise np.linalg.LinAlgError
        return np.sqrt(diag)
    except np.linalg.LinAlgError:
        if warn:
            warnings.warn(
                "observed information not invertible; standard errors unavailable",
                SingularityWarning,
                stacklevel=3,
            )
        return np.full(k, np.nan)


# ---------------------------------------------------------------------------
# inference
# ---------------------------------------------------------------------------


def confidence_intervals(result: FitResult, gamma: float = 0.05) -> np.ndarray:
    """Wald intervals estimate +- z_{1-gamma/2} * stderr, one row per parameter."""
    if not 0.0 < gamma < 0.5:
        raise DomainError("gamma must lie in (0, 1/2)")
    if np.any(~np.isfinite(result.stderr)):
        raise SingularityError("no invertible information matrix; intervals undefined")
    z = float(ndtri(1.0 - gamma / 2.0))
    half = z * result.stderr
    return np.column_stack([result.params - half, result.params + half])


def lr_test(full: FitResult, restricted: FitResult, k: int | None = None):
    """Likelihood-ratio statistic 2(l_full - l_restricted) and its chi^2_k p-value."""
    if k is None:
        k = full.n_params - restricted.n_params
    if k <= 0 and full.loglik != restricted.loglik:
        raise NestingError("restricted model must have fewer parameters")
    if full.loglik < restricted.loglik - 1e-6:
        raise NestingError(
            "full model has lower likelihood (%g < %g); models are not nested "
            "or the full fit did not converge" % (full.loglik, restricted.loglik)
        )
    w = max(2.0 * (full.loglik - restricted.loglik), 0.0)
    df = max(k, 1)
    p = float(chi2.sf(w, df)) if w > 0.0 else 1.0
    return w, p
