"""Markov, Chebyshev and Chernoff tail bounds and their uniform-smoothed halves."""

__version__ = "0.1.0"

from ._core import BACKEND
from .bounds import (
    BoundResult,
    Method,
    Side,
    SmoothingWindow,
    chebyshev_bound,
    chernoff_bound,
    iid_chernoff,
    markov_bound,
    optimize_chernoff,
)
from .distributions import (
    DistributionSpec,
    Exponential,
    Family,
    FiniteDiscrete,
    Gamma,
    Interval,
    Normal,
    ShapeFacts,
    TailKind,
    Uniform,
    discrete,
    eval_mgf,
    point_mass,
    tail_probability,
    three_point,
    two_point,
)
from .errors import ApplicabilityError, DomainError, ParseError, PreconditionError, TailsmithError
from .literals import parse_distribution
from .smoothing import (
    Certificate,
    SmoothedBound,
    f1_eval,
    f2_eval,
    f3_eval,
    f3_lower_eval,
    gauss_bound,
    smoothed_chebyshev,
    smoothed_chernoff,
    smoothed_markov,
    smoothing_free_applicable,
)
from .verification import (
    Smoothing,
    TailQuery,
    Verdict,
    VerificationReport,
    mc_tail,
    verify_corpus,
    verify_query,
)
from .witnesses import WitnessKind, WitnessSpec, build_witness
