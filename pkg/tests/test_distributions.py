import math

import numpy as np
import pytest
from scipy import integrate

from tailsmith import (
    DomainError,
    Exponential,
    Gamma,
    Normal,
    ParseError,
    Uniform,
    discrete,
    eval_mgf,
    parse_distribution,
    point_mass,
    tail_probability,
    three_point,
    two_point,
)
from tailsmith.distributions import Family, FiniteDiscrete, Interval, verify_shape_facts

CONTINUOUS = [
    Exponential(1.0),
    Exponential(2.5),
    Normal(0.0, 1.0),
    Normal(1.5, 0.7),
    Gamma(2.0, 1.0),
    Gamma(0.5, 1.0),
    Gamma(1.0, 2.0),
    Uniform(0.0, 1.0),
    Uniform(-1.0, 1.0),
]
DISCRETE = [
    point_mass(5.0),
    two_point(2.0, 0.3),
    three_point(1.0, 0.4),
    discrete([(-1.0, 0.2), (0.5, 0.5), (3.0, 0.3)]),
]
ALL = CONTINUOUS + DISCRETE


def quad_density(dist, fn):
    sup = dist.support
    lo = max(sup.lo, dist.mean - 40 * dist.sd)
    hi = min(sup.hi, dist.mean + 40 * dist.sd)
    return integrate.quad(lambda x: fn(x) * dist.pdf(x), lo, hi, epsabs=1e-13, epsrel=1e-12, limit=400)[0]


@pytest.mark.parametrize("dist", ALL, ids=str)
def test_variance_identity(dist):
    assert dist.variance == pytest.approx(dist.second_moment - dist.mean**2, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("dist", ALL, ids=str)
def test_mgf_at_zero_is_one(dist):
    assert eval_mgf(dist, 0.0) == 1.0


@pytest.mark.parametrize("dist", ALL, ids=str)
def test_mgf_jensen(dist):
    lo, hi = dist.mgf_domain
    for t in (-0.9, -0.3, 0.2, 0.45):
        if lo < t < hi:
            assert eval_mgf(dist, t) >= math.exp(t * dist.mean) * (1 - 1e-15)


@pytest.mark.parametrize("dist", CONTINUOUS, ids=str)
def test_density_integrates_to_one(dist):
    assert quad_density(dist, lambda x: 1.0) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("dist", CONTINUOUS, ids=str)
def test_mgf_matches_quadrature(dist):
    lo, hi = dist.mgf_domain
    for t in (-0.7, -0.2, 0.25, 0.4):
        if lo < t < hi:
            assert eval_mgf(dist, t) == pytest.approx(
                quad_density(dist, lambda x: math.exp(t * x)), rel=1e-8
            )


@pytest.mark.parametrize("dist", CONTINUOUS, ids=str)
def test_tail_matches_quadrature(dist):
    sup = dist.support
    for q in (0.1, 0.5, 0.9):
        a = dist.mean + (q - 0.5) * 3 * dist.sd
        hi = min(sup.hi, dist.mean + 40 * dist.sd)
        lo = max(sup.lo, a)
        upper = integrate.quad(dist.pdf, lo, hi, epsabs=1e-13, limit=200)[0] if hi > lo else 0.0
        assert tail_probability(dist, a, "upper") == pytest.approx(upper, abs=1e-9)
        assert tail_probability(dist, a, "lower") == pytest.approx(1 - upper, abs=1e-9)


@pytest.mark.parametrize("dist", ALL, ids=str)
def test_cdf_nondecreasing(dist):
    xs = np.linspace(dist.mean - 6 * max(dist.sd, 1), dist.mean + 6 * max(dist.sd, 1), 500)
    vals = [dist.cdf(x) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("dist", ALL, ids=str)
def test_sampler_mean(dist):
    n = 1_000_000
    x = dist.sample(np.random.default_rng(1234), n)
    assert abs(x.mean() - dist.mean) <= 5 * dist.sd / math.sqrt(n) + 1e-15


@pytest.mark.parametrize("dist", CONTINUOUS, ids=str)
def test_declared_shape_passes_grid_check(dist):
    verify_shape_facts(dist)


def test_bad_declared_shape_is_caught():
    class Liar(Normal):
        @property
        def shape(self):
            facts = super().shape
            return type(facts)(True, False, Interval(-3.0, 3.0), None, 0.0)

    with pytest.raises(AssertionError, match="nonincreasing"):
        Liar(0.0, 1.0)


# -- examples ---------------------------------------------------------------


def test_normal_mgf():
    assert eval_mgf(Normal(0, 1), 1.0) == pytest.approx(math.exp(0.5), rel=1e-15)


def test_exponential_mgf_against_quadrature():
    oracle = integrate.quad(lambda x: math.exp(0.5 * x) * math.exp(-x), 0, 50, epsabs=1e-13)[0]
    assert oracle == pytest.approx(2.0, rel=1e-10)
    assert eval_mgf(Exponential(1), 0.5) == 2.0


def test_mgf_domain_error_names_interval():
    with pytest.raises(DomainError, match=r"t < 1"):
        eval_mgf(Exponential(1), 1.5)
    with pytest.raises(DomainError):
        eval_mgf(Gamma(2, 3), 3.0)


def test_exponential_tail():
    assert tail_probability(Exponential(1), 1.0, "upper") == pytest.approx(math.exp(-1), abs=1e-15)


def test_normal_two_sided():
    assert tail_probability(Normal(0, 1), 1.0, "two-sided") == pytest.approx(0.31731050786291415, abs=1e-14)


def test_atom_at_threshold_counts():
    assert tail_probability(point_mass(5.0), 5.0, "upper") == 1.0
    assert tail_probability(point_mass(5.0), 5.0, "lower") == 1.0
    assert tail_probability(three_point(1.0, 0.4), 1.0, "two-sided") == pytest.approx(0.4, abs=1e-15)


def test_two_sided_at_zero_is_one():
    assert tail_probability(Normal(0, 1), 0.0, "two-sided") == 1.0


def test_invalid_tail_kind():
    with pytest.raises(DomainError):
        tail_probability(Normal(0, 1), 1.0, "sideways")
    with pytest.raises(DomainError):
        tail_probability(Normal(0, 1), -1.0, "two-sided")


def test_discrete_normalisation():
    d = discrete([(1.0, 0.5), (1.0, 0.25), (2.0, 0.25), (7.0, 0.0)])
    assert d.atoms == ((1.0, 0.75), (2.0, 0.25))
    with pytest.raises(DomainError):
        discrete([(0.0, 0.5), (1.0, 0.4)])


def test_family_tags():
    assert two_point(1, 0.5).family is Family.TWO_POINT
    assert three_point(1, 0.5).family is Family.THREE_POINT
    assert point_mass(0).family is Family.POINT_MASS
    assert Gamma(2, 1).family is Family.GAMMA


def test_discrete_mgf_overflow_is_infinite():
    assert eval_mgf(two_point(5.0, 0.5), 1000.0) == math.inf


def test_uniform_log_mgf_stable():
    u = Uniform(0.0, 1.0)
    assert u.log_mgf(1e4) == pytest.approx(1e4 - math.log(1e4), rel=1e-12)
    assert u.mgf(1.0) == pytest.approx(math.e - 1, rel=1e-14)
    assert u.mgf(-1.0) == pytest.approx(1 - math.exp(-1), rel=1e-14)


def test_immutable():
    d = Normal(0, 1)
    with pytest.raises(Exception):
        d.mu = 3.0


# -- literals ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("exp:1", Exponential(1.0)),
        ("exponential:2", Exponential(2.0)),
        ("normal:0,1", Normal(0.0, 1.0)),
        ("gamma:2,1", Gamma(2.0, 1.0)),
        ("uniform:0,1", Uniform(0.0, 1.0)),
        (" normal : -1 , 2 ", Normal(-1.0, 2.0)),
    ],
)
def test_parse_continuous(text, expected):
    assert parse_distribution(text) == expected


def test_parse_discrete_forms():
    assert parse_distribution("twopoint:a=2,p=0.3").atoms == ((0.0, 0.7), (2.0, 0.3))
    assert parse_distribution("threepoint:a=1,p=0.4").atoms == ((-1.0, 0.2), (0.0, 0.6), (1.0, 0.2))
    assert parse_distribution("point:5").atoms == ((5.0, 1.0),)
    d = parse_distribution("discrete:(0,0.25);(1,0.5);(3,0.25)")
    assert isinstance(d, FiniteDiscrete) and d.mean == 1.25
    w = parse_distribution("witness:markov-perturbed,a=1,p=0.5,shift=0.2")
    assert w.atoms == ((0.0, 0.5), (1.2, 0.5))


@pytest.mark.parametrize(
    "text",
    [
        "exp",
        "exp:",
        "exp:abc",
        "exp:-1",
        "normal:0",
        "normal:0,0",
        "uniform:1,0",
        "twopoint:a=2",
        "twopoint:a=2,p=1.5",
        "twopoint:a=2,q=0.1",
        "discrete:(0,0.5);(1,0.4)",
        "discrete:0,1",
        "witness:markov,a=1,p=0.5,shift=0.1",
        "witness:bogus,a=1,p=0.5",
        "cauchy:0,1",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_distribution(text)
