"""Laws on which the classical bounds are tight, plus the shifted variant
that defeats a too-narrow smoothing window.

Witnesses are ordinary :class:`FiniteDiscrete` laws so every bound and oracle
treats them through the same code path as any other input.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .distributions import Family, FiniteDiscrete
from .errors import DomainError


class WitnessKind(enum.Enum):
    MARKOV = "markov-two-point"
    CHEBYSHEV = "chebyshev-three-point"
    CHERNOFF = "chernoff-two-point"
    MARKOV_PERTURBED = "markov-perturbed"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {
            "markov": cls.MARKOV,
            "chebyshev": cls.CHEBYSHEV,
            "chernoff": cls.CHERNOFF,
            "perturbed": cls.MARKOV_PERTURBED,
        }
        if value in aliases:
            return aliases[value]
        try:
            return cls(value)
        except ValueError:
            raise DomainError(f"unknown witness kind {value!r}") from None


@dataclass(frozen=True)
class WitnessSpec:
    kind: WitnessKind
    a: float
    p: float
    shift: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", WitnessKind.parse(self.kind))
        if not (self.a > 0 and math.isfinite(self.a)):
            raise DomainError(f"witness a must be positive, got {self.a!r}")
        if not (0.0 <= self.p <= 1.0):
            raise DomainError(f"witness probability p={self.p!r} is outside [0, 1]")
        if not (self.shift >= 0 and math.isfinite(self.shift)):
            raise DomainError(f"witness shift must be nonnegative, got {self.shift!r}")
        if self.shift and self.kind is not WitnessKind.MARKOV_PERTURBED:
            raise DomainError("shift applies to the markov-perturbed witness only")


def build_witness(spec: WitnessSpec) -> FiniteDiscrete:
    a, p, kind = spec.a, spec.p, spec.kind
    if kind is WitnessKind.CHEBYSHEV:
        atoms = ((-a, p / 2.0), (0.0, 1.0 - p), (a, p / 2.0))
        tag = Family.THREE_POINT
    elif kind is WitnessKind.MARKOV_PERTURBED:
        atoms = ((a + spec.shift, p), (0.0, 1.0 - p))
        tag = Family.TWO_POINT
    else:
        atoms = ((a, p), (0.0, 1.0 - p))
        tag = Family.TWO_POINT
    label = f"witness:{kind.value},a={a:g},p={p:g}"
    if kind is WitnessKind.MARKOV_PERTURBED:
        label += f",shift={spec.shift:g}"
    return FiniteDiscrete(atoms, tag=tag, label=label)
