"""Classical Markov, Chebyshev and Chernoff tail bounds."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .distributions import DistributionSpec, eval_mgf
from .errors import DomainError, PreconditionError

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
T_TOL = 1e-10
# the doubling search gives up here and reports the boundary limit
T_CAP = 2.0**40


class Method(enum.Enum):
    MARKOV = "markov"
    CHEBYSHEV = "chebyshev"
    CHERNOFF_UPPER = "chernoff-upper"
    CHERNOFF_LOWER = "chernoff-lower"
    GAUSS = "gauss"
    SMOOTHED_MARKOV = "smoothed-markov"
    SMOOTHED_CHEBYSHEV = "smoothed-chebyshev"
    SMOOTHED_CHERNOFF_UPPER = "smoothed-chernoff-upper"
    SMOOTHED_CHERNOFF_LOWER = "smoothed-chernoff-lower"

    @property
    def is_chernoff(self):
        return "chernoff" in self.value

    @property
    def is_smoothed(self):
        return self.value.startswith("smoothed-")


class Side(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise DomainError(f"invalid side {value!r}; expected upper or lower") from None


@dataclass(frozen=True)
class SmoothingWindow:
    """Centered uniform noise U ~ Unif[-half_width, half_width]."""

    half_width: float

    def __post_init__(self):
        if not (self.half_width > 0 and math.isfinite(self.half_width)):
            raise DomainError(f"window half-width must be positive, got {self.half_width!r}")


@dataclass(frozen=True)
class BoundResult:
    """A probability bound.

    ``value`` is ``raw_value`` clamped to 1.  ``smoothing_free`` says whether
    the bound holds for X itself; when False it only holds for X + U with U
    drawn from ``window``.  ``at_boundary`` marks Chernoff optima that sit at
    the edge of the admissible t range (the bound is then a limit).
    """

    value: float
    raw_value: float
    method: Method
    a: float
    t_used: Optional[float] = None
    window: Optional[SmoothingWindow] = None
    smoothing_free: bool = True
    n: int = 1
    at_boundary: bool = False

    def __post_init__(self):
        if (self.t_used is not None) != self.method.is_chernoff:
            raise ValueError("t_used must be set exactly for Chernoff methods")


def _make(raw, method, a, **kw):
    return BoundResult(value=min(1.0, raw), raw_value=raw, method=method, a=a, **kw)


def _positive_a(a):
    if not (a > 0) or not math.isfinite(a):
        raise DomainError(f"threshold a must be a positive finite number, got {a!r}")


def require_nonnegative(dist):
    if not dist.shape.nonnegative:
        raise PreconditionError(
            f"Markov's inequality needs a nonnegative law; {dist} has support {dist.support}",
            hypothesis="X is nonnegative",
        )


def require_variance(dist):
    var = dist.variance
    if var is None or not math.isfinite(var):
        raise PreconditionError(
            f"{dist} has no finite variance", hypothesis="finite second moment"
        )
    return var


def markov_raw(dist, a):
    _positive_a(a)
    require_nonnegative(dist)
    return dist.mean / a


def chebyshev_raw(dist, a):
    _positive_a(a)
    return require_variance(dist) / (a * a)


def chernoff_raw(dist, a, t, side):
    side = Side.parse(side)
    if side is Side.UPPER and t < 0:
        raise DomainError(f"upper-tail Chernoff needs t >= 0, got t={t:g}")
    if side is Side.LOWER and t > 0:
        raise DomainError(f"lower-tail Chernoff needs t <= 0, got t={t:g}")
    m = eval_mgf(dist, t)
    try:
        raw = m * math.exp(-t * a)
    except OverflowError:
        raw = math.inf
    if not math.isfinite(raw) or (raw == 0.0 and t != 0):
        # overflow in one factor; go through the shifted log-MGF instead
        raw = math.exp(min(dist.log_mgf_shifted(t, a), 700.0))
    return raw


def markov_bound(dist: DistributionSpec, a: float) -> BoundResult:
    """P(X >= a) <= E[X]/a for nonnegative X."""
    return _make(markov_raw(dist, a), Method.MARKOV, a)


def chebyshev_bound(dist: DistributionSpec, a: float) -> BoundResult:
    """P(|X - mean| >= a) <= Var(X)/a^2."""
    return _make(chebyshev_raw(dist, a), Method.CHEBYSHEV, a)


def chernoff_bound(dist: DistributionSpec, a: float, t: float, side="upper") -> BoundResult:
    """M(t) exp(-t a), bounding P(X >= a) for t >= 0 or P(X <= a) for t <= 0."""
    side = Side.parse(side)
    method = Method.CHERNOFF_UPPER if side is Side.UPPER else Method.CHERNOFF_LOWER
    return _make(chernoff_raw(dist, a, t, side), method, a, t_used=t)


def iid_chernoff(dist: DistributionSpec, n: int, a: float, t: float) -> BoundResult:
    """Upper Chernoff bound for the mean of ``n`` i.i.d. copies of ``dist``.

    The MGF of the sum factorises, giving ``[M(t) exp(-t a)]**n``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    base = chernoff_raw(dist, a, t, Side.UPPER)
    return _make(base**n, Method.CHERNOFF_UPPER, a, t_used=t, n=n)


# ---------------------------------------------------------------------------
# exponent optimisation
# ---------------------------------------------------------------------------


def golden_section(f, lo, hi, tol=T_TOL, max_iter=200):
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns (x, f(x)).

    The endpoints are compared against the interior optimum at the end so
    minima sitting on the bracket edge are returned exactly.
    """
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    a, b = lo, hi
    it = 0
    while b - a > tol and it < max_iter:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
        it += 1
    best = (x1, f1) if f1 <= f2 else (x2, f2)
    for edge in (lo, hi):
        fe = f(edge)
        if fe < best[1]:
            best = (edge, fe)
    return best


def _parabolic_polish(f, x, fx, lo, hi, h=1e-5):
    """One derivative-free parabolic step through x - h, x, x + h.

    Golden section cannot resolve the minimiser of a flat convex function
    much below sqrt(machine eps); fitting a parabola to three nearby values
    recovers the vertex to ~1e-11.
    """
    if x - h < lo or x + h > hi:
        return x, fx
    fm, fp = f(x - h), f(x + h)
    curv = fp - 2.0 * fx + fm
    if not curv > 0:
        return x, fx
    xv = x - h * (fp - fm) / (2.0 * curv)
    if not (lo <= xv <= hi) or abs(xv - x) > h:
        return x, fx
    fv = f(xv)
    # values this close to the minimum differ only by rounding noise
    return (xv, fv) if fv <= fx + 4e-16 * abs(fx) else (x, fx)


def chernoff_exponent(dist, a, side):
    """The convex function s -> log M(sign*s) - sign*s*a on s >= 0."""
    sign = 1.0 if Side.parse(side) is Side.UPPER else -1.0

    def g(s):
        return dist.log_mgf_shifted(sign * s, a)

    return g


def chernoff_bracket(dist, a, side):
    """Return (s_max, limited) bracketing the exponent minimiser in [0, s_max].

    ``s`` is |t|.  The bracket end is the smaller of the MGF domain edge
    (less 1e-9) and the first doubling point where the exponent turns up.
    ``limited`` is True when neither happened before ``T_CAP`` or the domain
    edge, i.e. the infimum is approached at the boundary.
    """
    side = Side.parse(side)
    lo, hi = dist.mgf_domain
    edge = hi if side is Side.UPPER else -lo
    if not edge > 0:
        raise DomainError(f"MGF of {dist} is not finite for any t on the {side.value} side")
    s_edge = edge - 1e-9 if math.isfinite(edge) else T_CAP
    g = chernoff_exponent(dist, a, side)
    s = min(1.0, s_edge / 2.0) if math.isfinite(edge) else 1.0
    while True:
        g_s, g_half = g(s), g(s / 2.0)
        # a rise within rounding noise is a flat tail, not a turn
        if g_s > g_half + 1e-14 * max(1.0, abs(g_half)):
            return s, False
        if s >= s_edge:
            return s_edge, True
        s = min(2.0 * s, s_edge)


def optimize_chernoff(dist: DistributionSpec, a: float, side="upper") -> BoundResult:
    """Best Chernoff bound over admissible t, by golden-section search.

    log M(t) - t a is convex in t, so the search over the bracket from
    :func:`chernoff_bracket` finds the global minimum.  When the infimum is
    only reached in the limit (e.g. ``a`` at or beyond the top of a bounded
    support) the result carries ``at_boundary=True``.
    """
    side = Side.parse(side)
    g = chernoff_exponent(dist, a, side)
    s_max, limited = chernoff_bracket(dist, a, side)
    s, gs = golden_section(g, 0.0, s_max)
    s, gs = _parabolic_polish(g, s, gs, 0.0, s_max)
    at_boundary = limited and g(s_max) <= gs + 1e-12 * max(1.0, abs(gs))
    t = s if side is Side.UPPER else -s
    if t == 0:
        t = 0.0
    method = Method.CHERNOFF_UPPER if side is Side.UPPER else Method.CHERNOFF_LOWER
    # report the bound through the same formula chernoff_bound uses
    raw = chernoff_raw(dist, a, t, side)
    return _make(raw, method, a, t_used=t, at_boundary=at_boundary)
