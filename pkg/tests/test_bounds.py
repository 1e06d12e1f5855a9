import math

import numpy as np
import pytest

from tailsmith import (
    BoundResult,
    DomainError,
    Exponential,
    Gamma,
    Method,
    Normal,
    PreconditionError,
    Uniform,
    chebyshev_bound,
    chernoff_bound,
    iid_chernoff,
    markov_bound,
    optimize_chernoff,
    point_mass,
    tail_probability,
    three_point,
    two_point,
)
from tailsmith.bounds import chernoff_bracket, chernoff_exponent, golden_section

NONNEG = [Exponential(1.0), Gamma(2.0, 1.0), Gamma(0.5, 3.0), Uniform(0.0, 2.0), two_point(2.0, 0.3)]
ALL = NONNEG + [Normal(0.0, 1.0), Normal(2.0, 0.5), Uniform(-1.0, 3.0), three_point(1.0, 0.4)]


# -- Markov -----------------------------------------------------------------


def test_markov_examples():
    assert markov_bound(Exponential(1), 1.0).value == 1.0
    assert markov_bound(point_mass(0.0), 1.0).value == 0.0
    assert markov_bound(two_point(2.0, 0.3), 2.0).value == pytest.approx(0.3, abs=1e-15)


def test_markov_clamps():
    r = markov_bound(Exponential(1), 0.25)
    assert r.raw_value == 4.0 and r.value == 1.0


def test_markov_errors():
    with pytest.raises(PreconditionError, match="nonnegative"):
        markov_bound(Normal(0, 1), 1.0)
    for a in (0.0, -1.0, math.nan):
        with pytest.raises(DomainError):
            markov_bound(Exponential(1), a)


# -- Chebyshev --------------------------------------------------------------


def test_chebyshev_examples():
    assert chebyshev_bound(Normal(0, 1), 1.0).value == 1.0
    assert chebyshev_bound(three_point(1.0, 0.4), 1.0).value == pytest.approx(0.4, abs=1e-15)
    assert chebyshev_bound(point_mass(7.0), 0.5).value == 0.0


def test_chebyshev_missing_variance():
    class NoVar(Normal):
        @property
        def variance(self):
            return None

    with pytest.raises(PreconditionError):
        chebyshev_bound(NoVar(0, 1), 1.0)


# -- Chernoff ---------------------------------------------------------------


def test_chernoff_examples():
    z = Normal(0, 1)
    r = chernoff_bound(z, 1.0, 1.0, "upper")
    assert r.value == pytest.approx(math.exp(-0.5), abs=1e-15)
    assert r.t_used == 1.0 and r.method is Method.CHERNOFF_UPPER
    for d in ALL:
        assert chernoff_bound(d, 3.7, 0.0).raw_value == 1.0
    w = chernoff_bound(two_point(1.0, 0.25), 1.0, 10.0)
    assert w.value == pytest.approx(0.25 + 0.75 * math.exp(-10), rel=1e-14)


def test_chernoff_lower():
    r = chernoff_bound(Normal(0, 1), -1.0, -1.0, "lower")
    assert r.method is Method.CHERNOFF_LOWER
    assert r.value == pytest.approx(math.exp(-0.5), rel=1e-15)


def test_chernoff_sign_and_domain_errors():
    with pytest.raises(DomainError):
        chernoff_bound(Normal(0, 1), 1.0, -1.0, "upper")
    with pytest.raises(DomainError):
        chernoff_bound(Normal(0, 1), 1.0, 1.0, "lower")
    with pytest.raises(DomainError, match="MGF"):
        chernoff_bound(Exponential(1), 2.0, 1.0, "upper")
    with pytest.raises(DomainError):
        chernoff_bound(Normal(0, 1), 1.0, 1.0, "middle")


def test_t_used_only_for_chernoff():
    with pytest.raises(ValueError):
        BoundResult(value=0.5, raw_value=0.5, method=Method.MARKOV, a=1.0, t_used=1.0)
    with pytest.raises(ValueError):
        BoundResult(value=0.5, raw_value=0.5, method=Method.CHERNOFF_UPPER, a=1.0)


# -- optimiser --------------------------------------------------------------


def test_golden_section_quadratic():
    x, fx = golden_section(lambda x: (x - 0.3) ** 2, 0.0, 1.0)
    assert abs(x - 0.3) < 1e-7 and fx < 1e-14


def test_golden_section_edge_minimum():
    x, fx = golden_section(lambda x: x, 0.0, 1.0)
    assert x == 0.0 and fx == 0.0


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 3.5])
def test_optimize_normal(a):
    r = optimize_chernoff(Normal(0, 1), a)
    assert abs(r.t_used - a) < 1e-8
    assert r.value == pytest.approx(math.exp(-a * a / 2), abs=1e-12)
    assert not r.at_boundary


def test_optimize_normal_at_mean():
    r = optimize_chernoff(Normal(0, 1), 0.0)
    assert r.t_used == 0.0 and r.value == 1.0


def test_optimize_exponential_against_grid():
    ts = np.arange(0.0, 0.99 + 1e-12, 1e-6)
    g = -np.log1p(-ts) - 2.0 * ts
    t_grid = ts[g.argmin()]
    r = optimize_chernoff(Exponential(1), 2.0)
    assert abs(r.t_used - t_grid) < 1e-6
    assert r.value == pytest.approx(2 * math.exp(-1), rel=1e-12)


def test_optimize_lower_side():
    r = optimize_chernoff(Normal(0, 1), -1.5, "lower")
    assert abs(r.t_used + 1.5) < 1e-8
    assert r.value == pytest.approx(math.exp(-1.125), rel=1e-12)


def test_optimize_gamma_closed_form():
    # minimiser of -k log(1 - t/r) - t a is t = r - k/a
    k, rate, a = 3.0, 2.0, 4.0
    r = optimize_chernoff(Gamma(k, rate), a)
    assert abs(r.t_used - (rate - k / a)) < 1e-8
    t = rate - k / a
    assert r.value == pytest.approx((1 - t / rate) ** (-k) * math.exp(-t * a), rel=1e-12)


def test_optimize_boundary_limit():
    r = optimize_chernoff(two_point(1.0, 0.25), 1.0)
    assert r.at_boundary
    assert r.value == pytest.approx(0.25, abs=1e-12)
    beyond = optimize_chernoff(two_point(1.0, 0.25), 2.0)
    assert beyond.at_boundary and beyond.value < 1e-12


def test_optimize_needs_mgf_side():
    class RightHeavy(Exponential):
        @property
        def mgf_domain(self):
            return (-math.inf, 0.0)

    with pytest.raises(DomainError):
        optimize_chernoff(RightHeavy(1.0), 2.0)


@pytest.mark.parametrize("dist, a", [(Normal(0, 1), 1.5), (Exponential(1), 3.0), (Gamma(2, 1), 5.0),
                                     (Uniform(0, 1), 0.8), (two_point(2, 0.3), 1.0)])
def test_exponent_convex_on_bracket(dist, a):
    s_max, _ = chernoff_bracket(dist, a, "upper")
    g = chernoff_exponent(dist, a, "upper")
    vals = np.array([g(s) for s in np.linspace(0, s_max, 101)])
    second = vals[2:] - 2 * vals[1:-1] + vals[:-2]
    assert second.min() >= -1e-9


# -- iid --------------------------------------------------------------------


def test_iid_examples():
    z = Normal(0, 1)
    assert iid_chernoff(z, 4, 1.0, 1.0).value == pytest.approx(math.exp(-2), abs=1e-12)
    for d, a, t in [(z, 1.0, 0.7), (Exponential(1), 2.0, 0.5), (two_point(1, 0.3), 0.5, 2.0)]:
        assert iid_chernoff(d, 1, a, t).value == chernoff_bound(d, a, t).value


def test_iid_exponential_against_grid():
    ts = np.arange(0.0, 0.99 + 1e-12, 1e-6)
    g = -np.log1p(-ts) - 2.0 * ts
    oracle = math.exp(g.min()) ** 10
    assert oracle == pytest.approx(0.0464895, abs=1e-7)
    assert iid_chernoff(Exponential(1), 10, 2.0, 0.5).value == pytest.approx(oracle, rel=1e-9)


def test_iid_errors():
    with pytest.raises(DomainError):
        iid_chernoff(Normal(0, 1), 0, 1.0, 1.0)
    with pytest.raises(DomainError):
        iid_chernoff(Normal(0, 1), 2.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        iid_chernoff(Exponential(1), 3, 1.0, 2.0)


# -- properties -------------------------------------------------------------


@pytest.mark.parametrize("dist", NONNEG, ids=str)
def test_markov_strictly_decreasing(dist):
    vals = [markov_bound(dist, a).raw_value for a in np.linspace(0.1, 10, 100)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("dist", [Normal(0, 1), Exponential(1), three_point(1, 0.4)], ids=str)
def test_chebyshev_strictly_decreasing(dist):
    vals = [chebyshev_bound(dist, a).raw_value for a in np.linspace(0.1, 10, 100)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("dist", [Normal(0, 1), Exponential(1), Gamma(2, 1), Uniform(0, 1)], ids=str)
def test_optimized_chernoff_nonincreasing(dist):
    vals = [optimize_chernoff(dist, a).value for a in np.linspace(dist.mean, dist.mean + 4 * dist.sd, 100)]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("dist", ALL, ids=str)
def test_bounds_dominate_exact_tail(dist):
    for a in np.linspace(0.1, 4.0, 25):
        a = float(a)
        if dist.shape.nonnegative:
            assert tail_probability(dist, a, "upper") <= markov_bound(dist, a).value + 1e-9
        assert tail_probability(dist, a, "two-sided") <= chebyshev_bound(dist, a).value + 1e-9
        assert tail_probability(dist, a, "upper") <= optimize_chernoff(dist, a).value + 1e-9
        assert tail_probability(dist, -a, "lower") <= optimize_chernoff(dist, -a, "lower").value + 1e-9


@pytest.mark.parametrize("a, p", [(0.5, 0.1), (1.0, 0.3), (2.0, 0.5), (3.0, 0.9), (7.5, 1.0)])
def test_markov_equality_on_witness(a, p):
    d = two_point(a, p)
    assert abs(markov_bound(d, a).value - tail_probability(d, a, "upper")) <= 1e-12


@pytest.mark.parametrize("a, p", [(0.5, 0.1), (1.0, 0.4), (2.0, 0.5), (3.0, 0.9)])
def test_chebyshev_equality_on_witness(a, p):
    d = three_point(a, p)
    assert abs(chebyshev_bound(d, a).value - tail_probability(d, a, "two-sided")) <= 1e-12


def test_chernoff_witness_limit():
    d = two_point(1.0, 0.25)
    vals = [chernoff_bound(d, 1.0, t).value for t in (1.0, 10.0, 100.0)]
    assert vals[0] > vals[1] > vals[2] >= 0.25
    assert vals[2] - 0.25 < 1e-12
