import math

import pytest

from tailsmith import (
    DomainError,
    WitnessKind,
    WitnessSpec,
    build_witness,
    chebyshev_bound,
    chernoff_bound,
    markov_bound,
    smoothed_markov,
    tail_probability,
)
from tailsmith.distributions import Family, FiniteDiscrete
from tailsmith.smoothing import expected_ramp_up

GRID = [(a, p) for a in (0.25, 1.0, 2.0, 5.0) for p in (0.0, 0.1, 0.3, 0.5, 0.9, 1.0)]


def test_markov_two_point():
    d = build_witness(WitnessSpec("markov-two-point", 2.0, 0.3))
    assert isinstance(d, FiniteDiscrete) and d.family is Family.TWO_POINT
    assert d.mean == pytest.approx(0.6, abs=1e-15)
    assert markov_bound(d, 2.0).value == pytest.approx(0.3, abs=1e-15)
    assert tail_probability(d, 2.0, "upper") == pytest.approx(0.3, abs=1e-15)


def test_chebyshev_three_point():
    d = build_witness(WitnessSpec(WitnessKind.CHEBYSHEV, 1.0, 0.4))
    assert d.variance == pytest.approx(0.4, abs=1e-15)
    assert chebyshev_bound(d, 1.0).value == pytest.approx(tail_probability(d, 1.0, "two-sided"), abs=1e-12)


def test_perturbed_defeats_small_window():
    d = build_witness(WitnessSpec("markov-perturbed", 1.0, 0.5, shift=0.2))
    # exact atom summation: 0.5 * f1(1.2; a=1, c=0.2) + 0.5 * f1(0)
    assert expected_ramp_up(d, 1.0, 0.2) == 0.5


@pytest.mark.parametrize("a, p", GRID)
def test_atoms_sum_to_one(a, p):
    for kind in WitnessKind:
        d = build_witness(WitnessSpec(kind, a, p, shift=0.1 if kind is WitnessKind.MARKOV_PERTURBED else 0.0))
        assert abs(math.fsum(q for _, q in d.atoms) - 1.0) <= 1e-15


@pytest.mark.parametrize("a, p", GRID)
def test_markov_witness_equalities(a, p):
    d = build_witness(WitnessSpec("markov", a, p))
    assert markov_bound(d, a).value - tail_probability(d, a, "upper") == 0
    assert smoothed_markov(d, a).exact_smoothed_tail == p / 2


@pytest.mark.parametrize("a, p", GRID)
def test_chernoff_witness_limit(a, p):
    d = build_witness(WitnessSpec("chernoff", a, p))
    assert abs(chernoff_bound(d, a, 100.0 / a).value - p) <= 1e-3


@pytest.mark.parametrize("a, p, shift, c", [(1.0, 0.5, 0.2, 0.2), (2.0, 0.3, 1.0, 0.5), (1.0, 0.9, 1.0, 1.0),
                                            (3.0, 0.2, 2.5, 2.0)])
def test_perturbed_with_shift_at_least_window(a, p, shift, c):
    d = build_witness(WitnessSpec("markov-perturbed", a, p, shift=shift))
    assert expected_ramp_up(d, a, c) == p
    assert p <= d.mean / (a + c) + 1e-15


@pytest.mark.parametrize(
    "kwargs",
    [dict(kind="markov", a=1.0, p=1.5), dict(kind="markov", a=1.0, p=-0.1), dict(kind="markov", a=0.0, p=0.5),
     dict(kind="markov", a=1.0, p=0.5, shift=0.3), dict(kind="markov-perturbed", a=1.0, p=0.5, shift=-1.0),
     dict(kind="nope", a=1.0, p=0.5)],
)
def test_invalid_witness_params(kwargs):
    with pytest.raises(DomainError):
        WitnessSpec(**kwargs)
