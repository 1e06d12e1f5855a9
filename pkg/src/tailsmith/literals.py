"""Parse distribution literals such as ``exp:1`` or ``twopoint:a=2,p=0.3``.

Grammar (whitespace around tokens is ignored)::

    exp:RATE                      exponential, also ``exponential:RATE``
    normal:MEAN,SD
    gamma:SHAPE,RATE
    uniform:LO,HI
    point:X                       point mass
    twopoint:a=A,p=P              mass P at A, 1-P at 0
    threepoint:a=A,p=P            mass P/2 at -A and A, 1-P at 0
    discrete:(X1,P1);(X2,P2);...  finite law, probabilities summing to 1
    witness:KIND,a=A,p=P[,shift=S]
                                  KIND is markov, chebyshev, chernoff or
                                  markov-perturbed (takes shift)
"""
from __future__ import annotations

import re

from .distributions import (
    DistributionSpec,
    Exponential,
    Gamma,
    Normal,
    Uniform,
    discrete,
    point_mass,
    three_point,
    two_point,
)
from .errors import DomainError, ParseError
from .witnesses import WitnessSpec, build_witness

_ATOM = re.compile(r"^\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)$")


def _num(text, what):
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"{what}: {text.strip()!r} is not a number") from None


def _positional(body, names, family):
    parts = [p for p in body.split(",")] if body.strip() else []
    if len(parts) != len(names):
        raise ParseError(
            f"{family} takes {len(names)} value(s) ({', '.join(names)}), got {body!r}"
        )
    return [_num(p, f"{family} {n}") for p, n in zip(parts, names)]


def _keywords(body, allowed, required, family):
    out = {}
    for part in body.split(","):
        if "=" not in part:
            raise ParseError(f"{family}: expected key=value, got {part.strip()!r}")
        key, val = (s.strip() for s in part.split("=", 1))
        if key not in allowed:
            raise ParseError(f"{family}: unknown key {key!r} (allowed: {', '.join(allowed)})")
        if key in out:
            raise ParseError(f"{family}: duplicate key {key!r}")
        out[key] = _num(val, f"{family} {key}")
    missing = [k for k in required if k not in out]
    if missing:
        raise ParseError(f"{family}: missing {', '.join(missing)}")
    return out


def parse_distribution(text: str) -> DistributionSpec:
    """Build a distribution from its literal; raises ParseError on bad input."""
    if ":" not in text:
        raise ParseError(f"distribution literal {text!r} needs the form family:parameters")
    family, body = (s.strip() for s in text.split(":", 1))
    family = family.lower()
    try:
        if family in ("exp", "exponential"):
            (rate,) = _positional(body, ["rate"], family)
            return Exponential(rate)
        if family == "normal":
            mu, sd = _positional(body, ["mean", "sd"], family)
            return Normal(mu, sd)
        if family == "gamma":
            k, rate = _positional(body, ["shape", "rate"], family)
            return Gamma(k, rate)
        if family == "uniform":
            lo, hi = _positional(body, ["lo", "hi"], family)
            return Uniform(lo, hi)
        if family == "point":
            (x,) = _positional(body, ["x"], family)
            return point_mass(x)
        if family == "twopoint":
            kw = _keywords(body, ("a", "p"), ("a", "p"), family)
            return two_point(kw["a"], kw["p"])
        if family == "threepoint":
            kw = _keywords(body, ("a", "p"), ("a", "p"), family)
            return three_point(kw["a"], kw["p"])
        if family == "discrete":
            atoms = []
            for chunk in body.split(";"):
                m = _ATOM.match(chunk.strip())
                if not m:
                    raise ParseError(f"discrete: bad atom {chunk.strip()!r}, expected (x,p)")
                atoms.append((_num(m.group(1), "atom"), _num(m.group(2), "probability")))
            return discrete(atoms)
        if family == "witness":
            kind, _, rest = body.partition(",")
            kw = _keywords(rest, ("a", "p", "shift"), ("a", "p"), "witness")
            return build_witness(WitnessSpec(kind.strip(), kw["a"], kw["p"], kw.get("shift", 0.0)))
    except DomainError as exc:
        raise ParseError(f"{text!r}: {exc}") from None
    raise ParseError(f"unknown distribution family {family!r}")
