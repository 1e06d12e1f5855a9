"""Uniform smoothing: ramp functions, halved bounds and drop-U certificates.

Adding independent U ~ Unif[-c, c] to X replaces the tail indicator by a
piecewise-linear ramp of width 2c, since P(X + U >= a | X = x) is the ramp
evaluated at x.  With the window matched to the classical bounding curve the
ramp sits under half of that curve, which halves the bound.  For laws whose
density is monotone around the threshold the noise only pushes mass into the
tail, so the halved bound also holds for X itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import integrate

from . import _core
from .bounds import (
    BoundResult,
    Method,
    Side,
    SmoothingWindow,
    chebyshev_raw,
    chernoff_raw,
    markov_raw,
)
from .distributions import DistributionSpec, FiniteDiscrete, Interval, INF
from .errors import ApplicabilityError, DomainError, PreconditionError

QUAD_EPSABS = 1e-10


# ---------------------------------------------------------------------------
# ramp functions
# ---------------------------------------------------------------------------


def _check_markov_window(a, c):
    if not (c > 0):
        raise DomainError(f"window half-width c must be positive, got {c!r}")
    if c > a:
        raise DomainError(f"window half-width c={c:g} exceeds the threshold a={a:g}")


def _up(x, shift, c):
    if x <= shift - c:
        return 0.0
    if x >= shift + c:
        return 1.0
    return ((x - shift) + c) / (2.0 * c)


def _down(x, shift, c):
    if x <= shift - c:
        return 1.0
    if x >= shift + c:
        return 0.0
    return ((shift - x) + c) / (2.0 * c)


def f1_eval(x, a, c=None):
    """P(x + U >= a) for U ~ Unif[-c, c], 0 < c <= a (default c = a).

    Accepts a scalar or an array; arrays go through the compiled kernel.
    """
    c = a if c is None else c
    _check_markov_window(a, c)
    if np.ndim(x) == 0:
        return _up(float(x), a, c)
    return _core.ramp_up(x, a, c)


def f2_eval(x, mu, a):
    """P(|x + U - mu| >= a) for U ~ Unif[-a/2, a/2].

    Zero within a/2 of ``mu``, one beyond 3a/2, linear in between.
    """
    if not (a > 0):
        raise DomainError(f"threshold a must be positive, got {a!r}")
    if np.ndim(x) == 0:
        return _up(abs(float(x) - mu), a, 0.5 * a)
    return _core.fold_ramp(x, mu, a, 0.5 * a)


def f3_eval(x, a, t):
    """P(x + U >= a) for U ~ Unif[-1/t, 1/t], t > 0."""
    if not (t > 0):
        raise DomainError(f"f3 needs t > 0, got t={t!r}")
    c = 1.0 / t
    if np.ndim(x) == 0:
        return _up(float(x), a, c)
    return _core.ramp_up(x, a, c)


def f3_lower_eval(x, a, t):
    """P(x + U <= a) for U ~ Unif[-1/|t|, 1/|t|], t < 0 (mirror of f3)."""
    if not (t < 0):
        raise DomainError(f"lower-tail ramp needs t < 0, got t={t!r}")
    c = -1.0 / t
    if np.ndim(x) == 0:
        return _down(float(x), a, c)
    return _core.ramp_down(x, a, c)


# ---------------------------------------------------------------------------
# E[f(X)]
# ---------------------------------------------------------------------------


def _ramp_integral(dist, ramp, lo, hi):
    """Integrate ramp(x) * density over [lo, hi] clipped to the support."""
    sup = dist.support
    lo, hi = max(lo, sup.lo), min(hi, sup.hi)
    if hi <= lo:
        return 0.0
    val, _ = integrate.quad(
        lambda x: ramp(x) * dist.pdf(x), lo, hi, epsabs=QUAD_EPSABS, epsrel=1e-12, limit=200
    )
    return val


def expected_ramp_up(dist: DistributionSpec, shift: float, c: float) -> float:
    """E[P(X + U >= shift)] for U ~ Unif[-c, c]."""
    if isinstance(dist, FiniteDiscrete):
        return dist.expect(lambda x: _core.ramp_up(x, shift, c))
    body = _ramp_integral(dist, lambda x: _up(x, shift, c), shift - c, shift + c)
    return body + dist.sf(shift + c)


def expected_ramp_down(dist: DistributionSpec, shift: float, c: float) -> float:
    """E[P(X + U <= shift)] for U ~ Unif[-c, c]."""
    if isinstance(dist, FiniteDiscrete):
        return dist.expect(lambda x: _core.ramp_down(x, shift, c))
    body = _ramp_integral(dist, lambda x: _down(x, shift, c), shift - c, shift + c)
    return body + dist.cdf(shift - c)


def expected_fold_ramp(dist: DistributionSpec, a: float) -> float:
    """E[f2(X)] = P(|X + U - mean| >= a) for U ~ Unif[-a/2, a/2]."""
    mu = dist.mean
    if isinstance(dist, FiniteDiscrete):
        return dist.expect(lambda x: _core.fold_ramp(x, mu, a, 0.5 * a))
    c = 0.5 * a
    right = _ramp_integral(dist, lambda x: _up(x - mu, a, c), mu + c, mu + 3 * c)
    left = _ramp_integral(dist, lambda x: _up(mu - x, a, c), mu - 3 * c, mu - c)
    return right + left + dist.sf(mu + 3 * c) + dist.cdf(mu - 3 * c)


# ---------------------------------------------------------------------------
# drop-U certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Outcome of a smoothing-free check; truthy when the check passes.

    ``checked`` lists the (requirement, interval) pairs that were tested.
    """

    applicable: bool
    reason: str
    checked: tuple = field(default_factory=tuple)

    def __bool__(self):
        return self.applicable


def _needs(facts, which, interval):
    declared = getattr(facts, f"density_{which}_on")
    return declared is not None and declared.contains(interval)


def smoothing_free_applicable(
    dist: DistributionSpec, a: float, kind: str, t: Optional[float] = None, side="upper"
) -> Certificate:
    """Decide whether a halved bound holds for X without adding U.

    ``kind`` is ``"markov"``, ``"chebyshev"`` or ``"chernoff"`` (the last
    needs ``t``).  The Markov check asks for a nonincreasing density on all of
    [0, inf); a nonincreasing density on [0, 2a] alone would already suffice.
    Lower-tail Chernoff is never certified.
    """
    if not (a > 0):
        raise DomainError(f"threshold a must be positive, got {a!r}")
    facts = dist.shape
    if not facts.continuous:
        return Certificate(False, f"{dist} is not continuous")

    if kind == "markov":
        need = Interval(0.0, INF)
        checked = (("nonincreasing", need),)
        if not facts.nonnegative:
            return Certificate(False, f"{dist} is not nonnegative", checked)
        if not _needs(facts, "nonincreasing", need):
            return Certificate(False, f"density not nonincreasing on {need}", checked)
        return Certificate(True, f"density nonincreasing on {need}", checked)

    if kind == "chebyshev":
        mu = dist.mean
        right = Interval(mu + 0.5 * a, mu + 1.5 * a)
        left = Interval(mu - 1.5 * a, mu - 0.5 * a)
        checked = (("nonincreasing", right), ("nondecreasing", left))
        if not _needs(facts, "nonincreasing", right):
            return Certificate(False, f"density not nonincreasing on {right}", checked)
        if not _needs(facts, "nondecreasing", left):
            return Certificate(False, f"density not nondecreasing on {left}", checked)
        return Certificate(
            True, f"density nonincreasing on {right} and nondecreasing on {left}", checked
        )

    if kind == "chernoff":
        if t is None:
            raise DomainError("chernoff drop-U check needs t")
        if Side.parse(side) is Side.LOWER or t <= 0:
            return Certificate(False, "no drop-U condition is known for the lower tail")
        need = Interval(a - 1.0 / t, a + 1.0 / t)
        checked = (("nonincreasing", need),)
        if not _needs(facts, "nonincreasing", need):
            return Certificate(False, f"density not nonincreasing on {need}", checked)
        return Certificate(True, f"density nonincreasing on {need}", checked)

    raise DomainError(f"unknown bound kind {kind!r}")


# ---------------------------------------------------------------------------
# halved bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothedBound(BoundResult):
    """A halved bound; ``exact_smoothed_tail`` is E[f(X)] = P(X + U in tail)."""

    exact_smoothed_tail: Optional[float] = None
    certificate: Optional[Certificate] = None


def smoothed_markov(dist: DistributionSpec, a: float, c: Optional[float] = None) -> SmoothedBound:
    """P(X + U >= a) <= E[X]/(a + c) for U ~ Unif[-c, c]; c = a halves Markov."""
    classical = markov_raw(dist, a)
    c = a if c is None else c
    _check_markov_window(a, c)
    raw = 0.5 * classical if c == a else dist.mean / (a + c)
    cert = smoothing_free_applicable(dist, a, "markov")
    return SmoothedBound(
        value=min(1.0, raw),
        raw_value=raw,
        method=Method.SMOOTHED_MARKOV,
        a=a,
        window=SmoothingWindow(c),
        smoothing_free=cert.applicable,
        exact_smoothed_tail=expected_ramp_up(dist, a, c),
        certificate=cert,
    )


def smoothed_chebyshev(dist: DistributionSpec, a: float) -> SmoothedBound:
    """P(|X + U - mean| >= a) <= Var(X)/(2a^2) for U ~ Unif[-a/2, a/2]."""
    raw = 0.5 * chebyshev_raw(dist, a)
    cert = smoothing_free_applicable(dist, a, "chebyshev")
    return SmoothedBound(
        value=min(1.0, raw),
        raw_value=raw,
        method=Method.SMOOTHED_CHEBYSHEV,
        a=a,
        window=SmoothingWindow(0.5 * a),
        smoothing_free=cert.applicable,
        exact_smoothed_tail=expected_fold_ramp(dist, a),
        certificate=cert,
    )


def smoothed_chernoff(dist: DistributionSpec, a: float, t: float, side="upper") -> SmoothedBound:
    """Half the Chernoff bound, for X + U with U ~ Unif[-1/|t|, 1/|t|]."""
    side = Side.parse(side)
    if t == 0:
        raise DomainError("smoothed Chernoff needs t != 0 (window half-width is 1/|t|)")
    raw = 0.5 * chernoff_raw(dist, a, t, side)
    c = 1.0 / abs(t)
    if side is Side.UPPER:
        method, smoothed = Method.SMOOTHED_CHERNOFF_UPPER, expected_ramp_up(dist, a, c)
    else:
        method, smoothed = Method.SMOOTHED_CHERNOFF_LOWER, expected_ramp_down(dist, a, c)
    cert = smoothing_free_applicable(dist, a, "chernoff", t=t, side=side) if a > 0 else Certificate(
        False, "drop-U conditions are stated for a > 0 only"
    )
    return SmoothedBound(
        value=min(1.0, raw),
        raw_value=raw,
        method=method,
        a=a,
        t_used=t,
        window=SmoothingWindow(c),
        smoothing_free=cert.applicable,
        exact_smoothed_tail=smoothed,
        certificate=cert,
    )


def gauss_bound(dist: DistributionSpec, a: float) -> BoundResult:
    """Gauss's inequality P(|X| >= a) <= (4/9) E[X^2]/a^2.

    Needs a continuous law, unimodal with mode 0, and a^2 >= (4/3) E[X^2].
    Kept as a reference comparator next to the smoothed Chebyshev bound.
    """
    if not (a > 0):
        raise DomainError(f"threshold a must be positive, got {a!r}")
    facts = dist.shape
    if not facts.continuous:
        raise PreconditionError(
            f"Gauss's inequality needs a continuous law; {dist} is discrete",
            hypothesis="X is continuous",
        )
    if facts.unimodal_mode is None or facts.unimodal_mode != 0:
        raise PreconditionError(
            f"Gauss's inequality needs a unimodal law with mode 0; {dist} has mode "
            f"{facts.unimodal_mode}",
            hypothesis="unimodal with mode 0",
        )
    m2 = dist.second_moment
    threshold = math.sqrt(4.0 * m2 / 3.0)
    if a * a < 4.0 * m2 / 3.0:
        raise ApplicabilityError(
            f"Gauss's inequality needs a^2 >= (4/3)E[X^2], i.e. a >= {threshold:.6g}; got a={a:g}",
            hypothesis=f"a >= {threshold:.6g}",
        )
    raw = (4.0 / 9.0) * m2 / (a * a)
    return BoundResult(value=min(1.0, raw), raw_value=raw, method=Method.GAUSS, a=a)
