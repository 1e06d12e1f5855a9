"""Seeded Monte Carlo and exact oracles that check bounds against the truth.

Seeding
-------
Every Monte Carlo run is driven by a 64-bit ``seed``.  Draws are split into
``workers`` contiguous blocks (sizes differ by at most one, larger blocks
first).  Block ``w`` reads X from the Philox stream keyed by
``SeedSequence(seed, spawn_key=(n, w, 0))`` and U from
``SeedSequence(seed, spawn_key=(n, w, 1))``.  Philox is counter based, so
the streams are independent by construction, results depend only on
``(seed, n, workers)``, and runs with different ``n`` never share draws.
U is formed as ``c * (2u - 1)`` from the standard uniform ``u``.
"""
from __future__ import annotations

import enum
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import _core
from .bounds import BoundResult, Side, chebyshev_bound, chernoff_bound, markov_bound, optimize_chernoff
from .distributions import DistributionSpec, TailKind, tail_probability
from .errors import DomainError, PreconditionError
from .literals import parse_distribution
from .smoothing import (
    SmoothedBound,
    SmoothingWindow,
    gauss_bound,
    smoothed_chebyshev,
    smoothed_chernoff,
    smoothed_markov,
)

VIOLATION_TOL = 1e-9
SIGMAS = 5.0
CHUNK = 1 << 18
SEED_MASK = (1 << 64) - 1

METHODS = ("markov", "chebyshev", "chernoff", "gauss")


class Smoothing(enum.Enum):
    CLASSICAL = "classical"
    SMOOTHED = "smoothed"
    AUTO_DROP_U = "auto-drop-u"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise DomainError(
                f"invalid smoothing mode {value!r}; expected classical, smoothed or auto-drop-u"
            ) from None


class Verdict(enum.Enum):
    HOLDS = "bound-holds"
    VIOLATED = "bound-violated"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TailQuery:
    """What to bound: P(X in tail) for ``dist`` at threshold ``a``.

    ``t`` is the Chernoff exponent, a number or ``"auto"``; ``side`` picks the
    Chernoff tail.
    """

    dist: DistributionSpec
    a: float
    kind: TailKind = TailKind.UPPER
    smoothing: Smoothing = Smoothing.CLASSICAL
    t: Union[float, str, None] = None
    side: Side = Side.UPPER

    def __post_init__(self):
        object.__setattr__(self, "kind", TailKind.parse(self.kind))
        object.__setattr__(self, "smoothing", Smoothing.parse(self.smoothing))
        object.__setattr__(self, "side", Side.parse(self.side))


def method_tail(method: str, side=Side.UPPER) -> tuple[TailKind, Optional[float]]:
    """Tail kind a method bounds and the two-sided centre (None = mean)."""
    if method == "markov":
        return TailKind.UPPER, None
    if method == "chebyshev":
        return TailKind.TWO_SIDED, None
    if method == "gauss":
        return TailKind.TWO_SIDED, 0.0
    if method == "chernoff":
        return (TailKind.UPPER if Side.parse(side) is Side.UPPER else TailKind.LOWER), None
    raise DomainError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")


def resolve_t(dist, a, t, side):
    if t is None or t == "auto":
        return optimize_chernoff(dist, a, side).t_used
    return float(t)


def compute_bound(
    dist: DistributionSpec, a: float, method: str, smoothing="classical", t=None, side="upper"
) -> BoundResult:
    """Classical or smoothed bound for one (law, threshold, method) cell."""
    smoothing = Smoothing.parse(smoothing)
    side = Side.parse(side)
    method_tail(method, side)
    if method == "gauss":
        return gauss_bound(dist, a)
    if method == "chernoff":
        if t is None or t == "auto":
            if smoothing is Smoothing.CLASSICAL:
                return optimize_chernoff(dist, a, side)
            t = optimize_chernoff(dist, a, side).t_used
        t = float(t)
        if smoothing is Smoothing.CLASSICAL:
            return chernoff_bound(dist, a, t, side)
        return smoothed_chernoff(dist, a, t, side)
    if smoothing is Smoothing.CLASSICAL:
        return markov_bound(dist, a) if method == "markov" else chebyshev_bound(dist, a)
    return smoothed_markov(dist, a) if method == "markov" else smoothed_chebyshev(dist, a)


def bounded_event(bound: BoundResult, smoothing) -> str:
    """``"X"`` when the bound is claimed for X itself, else ``"X+U"``."""
    smoothing = Smoothing.parse(smoothing)
    if not bound.method.is_smoothed or smoothing is Smoothing.CLASSICAL:
        return "X"
    if smoothing is Smoothing.AUTO_DROP_U and bound.smoothing_free:
        return "X"
    return "X+U"


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------


def _streams(seed, n, worker):
    seed = int(seed) & SEED_MASK
    x_ss = np.random.SeedSequence(seed, spawn_key=(n, worker, 0))
    u_ss = np.random.SeedSequence(seed, spawn_key=(n, worker, 1))
    return np.random.Generator(np.random.Philox(x_ss)), np.random.Generator(np.random.Philox(u_ss))


def _block_sizes(n, workers):
    q, r = divmod(n, workers)
    return [q + (1 if w < r else 0) for w in range(workers)]


def _count_block(dist, c, a, code, center, size, seed, n, worker):
    x_rng, u_rng = _streams(seed, n, worker)
    hits = 0
    done = 0
    while done < size:
        m = min(CHUNK, size - done)
        x = dist.sample(x_rng, m)
        u = u_rng.random(m) if c is not None else None
        hits += _core.count_event(x, u, a, 0.0 if c is None else c, code, center)
        done += m
    return hits


_KIND_CODE = {TailKind.UPPER: _core.UPPER, TailKind.LOWER: _core.LOWER, TailKind.TWO_SIDED: _core.TWO_SIDED}


def mc_tail(
    dist: DistributionSpec,
    window: Optional[SmoothingWindow],
    a: float,
    kind="upper",
    n: int = 1_000_000,
    seed: int = 0,
    workers: int = 1,
    center: Optional[float] = None,
) -> tuple[float, float]:
    """Empirical frequency of the tail event for X (+ U) and its binomial stderr."""
    kind = TailKind.parse(kind)
    if int(n) != n or n < 1:
        raise DomainError(f"sample count must be a positive integer, got {n!r}")
    n, workers = int(n), max(1, int(workers))
    workers = min(workers, n)
    c = None if window is None else window.half_width
    ctr = dist.mean if center is None else center
    code = _KIND_CODE[kind]
    sizes = _block_sizes(n, workers)
    args = [(dist, c, a, code, ctr, size, seed, n, w) for w, size in enumerate(sizes)]
    if workers == 1:
        hits = _count_block(*args[0])
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda arg: _count_block(*arg), args))
    p = hits / n
    return p, math.sqrt(p * (1.0 - p) / n)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    query: TailQuery
    method: str
    bound: Optional[BoundResult]
    event: str
    exact_tail: Optional[float]
    mc_estimate: Optional[float]
    mc_stderr: Optional[float]
    mc_samples: int
    seed: int
    workers: int
    verdict: Verdict
    reason: str = ""

    @property
    def mc_agrees(self) -> Optional[bool]:
        """MC estimate within 5 standard errors of the exact value."""
        if self.exact_tail is None or self.mc_estimate is None:
            return None
        gap = abs(self.mc_estimate - self.exact_tail)
        if self.mc_stderr == 0:
            return gap <= 1e-12
        return gap <= SIGMAS * self.mc_stderr

    def to_dict(self) -> dict:
        q = self.query
        b = self.bound
        bound = None
        if b is not None:
            bound = {
                "method": b.method.value,
                "value": b.value,
                "raw_value": b.raw_value,
                "t_used": b.t_used,
                "window_half_width": None if b.window is None else b.window.half_width,
                "smoothing_free": b.smoothing_free,
                "at_boundary": b.at_boundary,
                "exact_smoothed_tail": getattr(b, "exact_smoothed_tail", None),
            }
        return {
            "query": {
                "dist": str(q.dist),
                "a": q.a,
                "kind": q.kind.value,
                "smoothing": q.smoothing.value,
                "t": q.t,
                "side": q.side.value,
            },
            "method": self.method,
            "bound": bound,
            "event": self.event,
            "exact_tail": self.exact_tail,
            "mc_estimate": self.mc_estimate,
            "mc_stderr": self.mc_stderr,
            "mc_samples": self.mc_samples,
            "seed": self.seed,
            "workers": self.workers,
            "mc_agrees": self.mc_agrees,
            "verdict": self.verdict.value,
            "reason": self.reason,
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)


def decide(value: float, exact: Optional[float], mc: Optional[float], se: Optional[float]) -> Verdict:
    if exact is not None:
        return Verdict.VIOLATED if exact > value + VIOLATION_TOL else Verdict.HOLDS
    if mc is None:
        return Verdict.INCONCLUSIVE
    if mc - SIGMAS * se > value:
        return Verdict.VIOLATED
    if mc + SIGMAS * se <= value:
        return Verdict.HOLDS
    return Verdict.INCONCLUSIVE


def verify_query(
    query: TailQuery, method: str, n: int = 1_000_000, seed: int = 0, workers: int = 1
) -> VerificationReport:
    """Bound, exact tail, Monte Carlo estimate and verdict for one query.

    The event checked is the one the bound claims: X itself for classical
    bounds and certified drop-U, X + U otherwise.
    """
    dist, a = query.dist, query.a
    common = dict(query=query, method=method, mc_samples=n, seed=seed, workers=workers)
    try:
        kind, center = method_tail(method, query.side)
        if kind is not query.kind:
            raise DomainError(f"{method} bounds the {kind.value} tail, query asks for {query.kind.value}")
        bound = compute_bound(dist, a, method, query.smoothing, query.t, query.side)
    except (PreconditionError, DomainError) as exc:
        return VerificationReport(
            bound=None, event="X", exact_tail=None, mc_estimate=None, mc_stderr=None,
            verdict=Verdict.INCONCLUSIVE, reason=str(exc), **common,
        )

    event = bounded_event(bound, query.smoothing)
    if event == "X":
        window = None
        exact = tail_probability(dist, a, kind, center=center)
    else:
        window = bound.window
        exact = bound.exact_smoothed_tail
    mc, se = mc_tail(dist, window, a, kind, n=n, seed=seed, workers=workers, center=center)
    verdict = decide(bound.value, exact, mc, se)
    return VerificationReport(
        bound=bound, event=event, exact_tail=exact, mc_estimate=mc, mc_stderr=se,
        verdict=verdict, **common,
    )


# ---------------------------------------------------------------------------
# default corpus
# ---------------------------------------------------------------------------

# (literal, a, method, smoothing, t, side)
DEFAULT_CORPUS = (
    ("exp:1", 1.0, "markov", "classical", None, "upper"),
    ("exp:1", 1.0, "markov", "auto-drop-u", None, "upper"),
    ("exp:1", 1.0, "markov", "smoothed", None, "upper"),
    ("exp:1", 2.0, "chernoff", "auto-drop-u", "auto", "upper"),
    ("normal:0,1", 1.0, "chebyshev", "classical", None, "upper"),
    ("normal:0,1", 1.0, "chebyshev", "auto-drop-u", None, "upper"),
    ("normal:0,1", 1.0, "chernoff", "classical", 1.0, "upper"),
    ("normal:0,1", 1.0, "chernoff", "auto-drop-u", 1.0, "upper"),
    ("normal:0,1", 1.0, "chernoff", "smoothed", 1.0, "upper"),
    ("normal:0,1", -1.0, "chernoff", "smoothed", -1.0, "lower"),
    ("normal:0,1", 2.0, "gauss", "classical", None, "upper"),
    ("gamma:2,1", 4.0, "chernoff", "smoothed", "auto", "upper"),
    ("gamma:1,2", 1.0, "markov", "auto-drop-u", None, "upper"),
    ("uniform:0,1", 0.5, "markov", "auto-drop-u", None, "upper"),
    ("uniform:-1,1", 1.2, "gauss", "classical", None, "upper"),
    ("twopoint:a=2,p=0.3", 2.0, "markov", "classical", None, "upper"),
    ("twopoint:a=1,p=0.5", 1.0, "markov", "smoothed", None, "upper"),
    ("twopoint:a=1,p=1", 1.0, "markov", "classical", None, "upper"),
    ("threepoint:a=1,p=0.4", 1.0, "chebyshev", "classical", None, "upper"),
    ("threepoint:a=1,p=0.4", 1.0, "chebyshev", "smoothed", None, "upper"),
    ("witness:chernoff,a=1,p=0.25", 1.0, "chernoff", "smoothed", 10.0, "upper"),
    ("witness:markov-perturbed,a=1,p=0.5,shift=0.2", 1.0, "markov", "auto-drop-u", None, "upper"),
)


def corpus_queries(corpus=DEFAULT_CORPUS):
    out = []
    for literal, a, method, smoothing, t, side in corpus:
        kind, _ = method_tail(method, side)
        query = TailQuery(parse_distribution(literal), a, kind, smoothing, t, side)
        out.append((query, method))
    return out


def cell_seed(seed: int, index: int) -> int:
    """Independent 64-bit seed for corpus cell ``index``."""
    ss = np.random.SeedSequence(int(seed) & SEED_MASK, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


def verify_corpus(n: int = 1_000_000, seed: int = 0, workers: int = 1, corpus=DEFAULT_CORPUS):
    return [
        verify_query(q, m, n=n, seed=cell_seed(seed, i), workers=workers)
        for i, (q, m) in enumerate(corpus_queries(corpus))
    ]
