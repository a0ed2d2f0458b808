"""Compound model: evaluation identities, hazard structure, sampling, moments."""

import math
import warnings

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import ks_2samp, kstest

from bsps import (
    Binomial,
    BirnbaumSaunders,
    BSPowerSeries,
    ConvergenceWarning,
    DomainError,
    Geometric,
    Logarithmic,
    Poisson,
)

FAMILIES = [Geometric(), Poisson(), Logarithmic(), Binomial(3)]


def interior_theta(family):
    return 1.5 if family.name == "poisson" else 0.5


def series_pdf_oracle(model, x, tol=1e-15):
    """Density as the count-weighted sum of minimum densities (tail-truncated)."""
    fam, bs, theta = model.family, model.bs, model.theta
    q = bs.survival(x)
    f = bs.pdf(x)
    total = 0.0
    n = 1
    while True:
        p_n = fam.pmf(theta, n)
        total += p_n * n * f * q ** (n - 1)
        n += 1
        if fam.support_max is not None and n > fam.support_max:
            break
        if fam.support_max is None and p_n < tol and n > 5:
            break
    return total


def series_cdf_oracle(model, x, tol=1e-15):
    fam, bs, theta = model.family, model.bs, model.theta
    q = bs.survival(x)
    total = 0.0
    n = 1
    while True:
        p_n = fam.pmf(theta, n)
        total += p_n * (1.0 - q**n)
        n += 1
        if fam.support_max is not None and n > fam.support_max:
            break
        if fam.support_max is None and p_n < tol and n > 5:
            break
    return total


# ---------------------------------------------------------------------------
# cdf / pdf
# ---------------------------------------------------------------------------


def test_cdf_geometric_at_beta():
    # at x = beta the base survival is 1/2, so F = 1/(2 - theta)
    model = BSPowerSeries.of(Geometric(), 0.5, 0.8, 2.0)
    assert model.cdf(2.0) == pytest.approx(2.0 / 3.0, rel=1e-12)
    assert model.cdf(2.0) == pytest.approx(series_cdf_oracle(model, 2.0), abs=1e-12)


def test_cdf_poisson_at_beta():
    model = BSPowerSeries.of(Poisson(), 1.0, 1.0, 1.0)
    expected = 1.0 - (math.exp(0.5) - 1.0) / (math.e - 1.0)
    assert model.cdf(1.0) == pytest.approx(expected, rel=1e-12)


def test_cdf_reduces_to_base_at_tiny_theta():
    bs = BirnbaumSaunders(1.0, 1.0)
    model = BSPowerSeries(Geometric(), 1e-8, bs)
    for x in (0.5, 1.0, 2.0):
        assert abs(model.cdf(x) - bs.cdf(x)) <= 1e-6


@pytest.mark.parametrize("family", FAMILIES[:3], ids=lambda f: f.label())
def test_pdf_normalization(family):
    model = BSPowerSeries.of(family, 0.5, 1.0, 1.0)
    val, _ = quad(
        lambda y: model.pdf(math.exp(y)) * math.exp(y), -40, 40, limit=200
    )
    assert val == pytest.approx(1.0, abs=1e-8)


def test_pdf_matches_cdf_derivative():
    model = BSPowerSeries.of(Poisson(), 2.0, 0.7, 1.5)
    for x in (0.5 * 1.5, 1.5, 3.0 * 1.5):
        h = 1e-6 * x
        fd = (model.cdf(x + h) - model.cdf(x - h)) / (2.0 * h)
        assert model.pdf(x) == pytest.approx(fd, rel=1e-6)


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.label())
def test_pdf_matches_count_weighted_series(family):
    theta = interior_theta(family)
    model = BSPowerSeries.of(family, theta, 0.8, 1.2)
    for x in (0.4, 1.2, 3.0):
        assert model.pdf(x) == pytest.approx(series_pdf_oracle(model, x), abs=1e-9)


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.label())
def test_cdf_matches_count_weighted_series(family):
    theta = interior_theta(family)
    model = BSPowerSeries.of(family, theta, 0.8, 1.2)
    for x in np.linspace(0.2, 4.0, 12):
        assert model.cdf(x) == pytest.approx(series_cdf_oracle(model, x), abs=1e-10)


def test_domain_errors():
    model = BSPowerSeries.of(Geometric(), 0.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        model.cdf(0.0)
    with pytest.raises(DomainError):
        model.pdf(-1.0)
    with pytest.raises(DomainError):
        BSPowerSeries.of(Geometric(), 1.0, 1.0, 1.0)


# ---------------------------------------------------------------------------
# survival / hazard
# ---------------------------------------------------------------------------


def test_survival_complements_cdf():
    model = BSPowerSeries.of(Logarithmic(), 0.6, 0.9, 2.0)
    for x in np.linspace(0.1, 8.0, 20):
        assert model.survival(x) + model.cdf(x) == pytest.approx(1.0, abs=1e-14)


def test_geometric_hazard_identity():
    # hazard = base hazard / (1 - theta (1 - Phi(upsilon)))
    theta = 0.5
    bs = BirnbaumSaunders(0.8, 1.0)
    model = BSPowerSeries(Geometric(), theta, bs)
    for x in np.linspace(0.2, 5.0, 15):
        expected = bs.hazard(x) / (1.0 - theta * bs.survival(x))
        assert model.hazard(x) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("theta", [0.2, 0.5, 0.9])
def test_geometric_hazard_dominates_base(theta):
    bs = BirnbaumSaunders(0.8, 1.0)
    model = BSPowerSeries(Geometric(), theta, bs)
    x = np.linspace(0.05, 10.0, 60)
    assert np.all(np.asarray(model.hazard(x)) >= np.asarray(bs.hazard(x)) - 1e-12)


def test_geometric_hazard_ratio_decreasing():
    bs = BirnbaumSaunders(0.6, 1.0)
    model = BSPowerSeries(Geometric(), 0.7, bs)
    x = np.linspace(0.05, 20.0, 100)
    ratio = np.asarray(model.hazard(x)) / np.asarray(bs.hazard(x))
    assert np.all(np.diff(ratio) <= 1e-12)


def test_geometric_hazard_limit_at_infinity():
    model = BSPowerSeries.of(Geometric(), 0.7, 1.0, 1.0)
    assert model.hazard(1e6) == pytest.approx(0.5, rel=0.01)  # 1/(2 alpha^2 beta)


@pytest.mark.parametrize(
    "family,theta", [(Poisson(), 2.0), (Logarithmic(), 0.6)], ids=["poisson", "logarithmic"]
)
def test_hazard_vanishes_at_origin(family, theta):
    model = BSPowerSeries.of(family, theta, 1.0, 1.0)
    assert model.hazard(1e-8) < 1e-6


def test_base_hazard_is_theta_to_zero_limit():
    bs = BirnbaumSaunders(1.0, 1.0)
    model = BSPowerSeries(Geometric(), 1e-10, bs)
    for x in (0.5, 1.0, 2.0):
        assert model.hazard(x) == pytest.approx(bs.hazard(x), rel=1e-9)


# ---------------------------------------------------------------------------
# quantile
# ---------------------------------------------------------------------------


def test_quantile_geometric_example():
    model = BSPowerSeries.of(Geometric(), 0.5, 1.3, 2.0)
    assert model.quantile(2.0 / 3.0) == pytest.approx(2.0, rel=1e-12)


def test_quantile_support_limits():
    model = BSPowerSeries.of(Poisson(), 1.0, 1.0, 1.0)
    assert model.quantile(1e-12) < 1e-6
    assert model.quantile(1.0 - 1e-13) > 1e3


@pytest.mark.parametrize("family", FAMILIES[:3], ids=lambda f: f.label())
def test_quantile_cdf_roundtrip(family):
    theta = interior_theta(family)
    model = BSPowerSeries.of(family, theta, 0.8, 1.5)
    for u in np.linspace(0.01, 0.99, 50):
        assert model.cdf(model.quantile(u)) == pytest.approx(u, abs=1e-10)


def test_quantile_domain():
    model = BSPowerSeries.of(Geometric(), 0.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        model.quantile(0.0)
    with pytest.raises(DomainError):
        model.quantile(1.5)


# ---------------------------------------------------------------------------
# sampling routes
# ---------------------------------------------------------------------------


def test_sampling_routes_agree_in_distribution():
    model = BSPowerSeries.of(Geometric(), 0.7, 0.5, 1.0)
    rng = np.random.default_rng(42)
    a = model.sample_inverse(rng, size=100_000)
    b = model.sample_compound(rng, size=100_000)
    assert ks_2samp(a, b).pvalue > 0.001


def test_inverse_route_matches_cdf():
    model = BSPowerSeries.of(Poisson(), 2.0, 1.0, 1.0)
    rng = np.random.default_rng(43)
    draws = model.sample_inverse(rng, size=100_000)
    res = kstest(draws, lambda t: np.asarray(model.cdf(t)))
    assert res.statistic < 0.006  # DKW-style bound at this sample size


def test_compound_route_tiny_theta_is_base_law():
    bs = BirnbaumSaunders(0.5, 1.0)
    model = BSPowerSeries(Geometric(), 1e-9, bs)
    rng = np.random.default_rng(44)
    draws = model.sample_compound(rng, size=50_000)
    res = kstest(draws, lambda t: np.asarray(bs.cdf(t)))
    assert res.pvalue > 0.001


def test_sampling_scalar_and_deterministic():
    model = BSPowerSeries.of(Logarithmic(), 0.6, 0.8, 2.0)
    a = model.sample_inverse(np.random.default_rng(9))
    b = model.sample_inverse(np.random.default_rng(9))
    assert isinstance(a, float) and a == b
    c = model.sample_compound(np.random.default_rng(10))
    assert isinstance(c, float) and c > 0


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------


def test_moment_theta_to_zero_limit():
    model = BSPowerSeries.of(Geometric(), 1e-8, 1.0, 1.0)
    assert model.moment(1) == pytest.approx(1.5, abs=1e-5)


def test_moment_matches_monte_carlo():
    model = BSPowerSeries.of(Geometric(), 0.5, 0.5, 1.0)
    value = model.moment(1)
    rng = np.random.default_rng(77)
    draws = model.sample_compound(rng, size=1_000_000)
    se = draws.std() / math.sqrt(draws.size)
    assert abs(value - draws.mean()) < 3.0 * se


def test_moment_below_single_draw_mean():
    model = BSPowerSeries.of(Geometric(), 0.5, 0.5, 1.0)
    assert model.moment(1) <= model.bs.mean() + 1e-12


def test_moment_truncation_warning():
    model = BSPowerSeries.of(Geometric(), 0.9, 0.5, 1.0)
    with pytest.warns(ConvergenceWarning):
        model.moment(1, n_max=3)


def test_moment_binomial_support_cap():
    model = BSPowerSeries.of(Binomial(3), 0.5, 0.5, 1.0)
    value = model.moment(1, n_max=50)  # series is finite at m terms
    rng = np.random.default_rng(78)
    draws = model.sample_compound(rng, size=500_000)
    se = draws.std() / math.sqrt(draws.size)
    assert abs(value - draws.mean()) < 3.5 * se


# ---------------------------------------------------------------------------
# order statistics
# ---------------------------------------------------------------------------


def test_order_stat_single_is_pdf():
    model = BSPowerSeries.of(Geometric(), 0.5, 1.0, 1.0)
    for x in (0.3, 1.0, 2.5):
        assert model.order_stat_pdf(1, 1, x) == pytest.approx(model.pdf(x), abs=1e-14)


@pytest.mark.parametrize("i,m", [(1, 5), (3, 5), (5, 5)])
def test_order_stat_pdf_normalization(i, m):
    model = BSPowerSeries.of(Geometric(), 0.5, 0.8, 1.0)
    val, _ = quad(
        lambda y: model.order_stat_pdf(i, m, math.exp(y)) * math.exp(y), -30, 30, limit=200
    )
    assert val == pytest.approx(1.0, abs=1e-7)


def test_order_stat_min_matches_simulation():
    model = BSPowerSeries.of(Geometric(), 0.5, 0.8, 1.0)
    rng = np.random.default_rng(55)
    sims = model.sample_inverse(rng, size=(100_000, 3)).min(axis=1)
    # compare simulated minima with the i=1, m=3 order-statistic law
    grid = np.linspace(1e-9, 60.0, 4001)
    pdf_vals = np.asarray(model.order_stat_pdf(1, 3, grid[1:]))
    cdf_grid = np.concatenate([[0.0], np.cumsum(0.5 * (pdf_vals[1:] + pdf_vals[:-1]) * np.diff(grid[1:]))])

    def os_cdf(t):
        return np.interp(t, grid[1:], np.concatenate([[0.0], cdf_grid[:-1] + np.diff(cdf_grid)]))

    # exact order-statistic cdf for the minimum: 1 - S(t)^3
    res = kstest(sims, lambda t: 1.0 - np.asarray(model.survival(t)) ** 3)
    assert res.pvalue > 0.001


def test_order_stat_index_validation():
    model = BSPowerSeries.of(Geometric(), 0.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        model.order_stat_pdf(0, 3, 1.0)
    with pytest.raises(DomainError):
        model.order_stat_moment(4, 3, 1)


def test_order_stat_moment_collapses_to_mean():
    model = BSPowerSeries.of(Geometric(), 0.5, 0.8, 1.0)
    assert model.order_stat_moment(1, 1, 1) == pytest.approx(model.moment(1), abs=1e-6)


def test_order_stat_moment_ordering():
    model = BSPowerSeries.of(Geometric(), 0.5, 1.0, 1.0)
    means = [model.order_stat_moment(i, 3, 1) for i in (1, 2, 3)]
    assert means[0] <= means[1] <= means[2]


def test_order_stat_moment_matches_simulation():
    model = BSPowerSeries.of(Geometric(), 0.5, 0.5, 1.0)
    value = model.order_stat_moment(2, 3, 1)
    rng = np.random.default_rng(56)
    sims = np.sort(model.sample_inverse(rng, size=(100_000, 3)), axis=1)[:, 1]
    se = sims.std() / math.sqrt(sims.size)
    assert abs(value - sims.mean()) < 3.0 * se


# ---------------------------------------------------------------------------
# structural invariants
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.label())
def test_base_limit_is_monotone_in_theta(family):
    bs = BirnbaumSaunders(0.8, 1.5)
    grid = np.linspace(0.05, 8.0, 100)
    sups = []
    for theta in (0.5, 0.1, 0.01, 0.001):
        model = BSPowerSeries(family, theta, bs)
        sups.append(np.max(np.abs(np.asarray(model.cdf(grid)) - np.asarray(bs.cdf(grid)))))
    assert all(sups[k + 1] < sups[k] for k in range(3))
    assert sups[-1] < 1e-3


def test_cdf_stochastically_ordered_in_theta():
    # more components in the minimum means stochastically smaller values
    bs = BirnbaumSaunders(0.8, 1.5)
    grid = np.linspace(0.05, 8.0, 60)
    low = np.asarray(BSPowerSeries(Geometric(), 0.2, bs).cdf(grid))
    high = np.asarray(BSPowerSeries(Geometric(), 0.8, bs).cdf(grid))
    assert np.all(high >= low - 1e-14)
