"""Shared domain types and the small 2x2 symmetric-matrix toolkit.

Conventions used throughout the package:

* unit noise variance at every receiver, so transmit powers double as SNRs;
* channel phases are assumed perfectly aligned, so gains are nonnegative
  real magnitudes and all arithmetic is real;
* rates are in bits per channel use (base-2 logarithms everywhere).

Every type is an immutable value and every operation is a pure function,
so everything here is safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "EvaluatorError",
    "NegativeSnr",
    "NonPositiveDefinite",
    "Singular",
    "InfiniteGain",
    "NotInfinite",
    "DegeneratePhase",
    "InvalidAllocation",
    "NotStrongInterference",
    "ChannelGains",
    "PowerBudget",
    "Simplex2",
    "Simplex3",
    "TcAllocation",
    "RcAllocation",
    "Sym2",
    "RatePair",
    "cap",
    "quad_form",
    "logdet2",
    "inv2",
]

_SIMPLEX_SUM_TOL = 1e-9
_PSD_TOL = 1e-10
_DET_TOL = 1e-14


class EvaluatorError(ValueError):
    """Base class for all domain validation and evaluation errors."""


class NegativeSnr(EvaluatorError):
    """An SNR-like argument was negative beyond tolerance."""


class NonPositiveDefinite(EvaluatorError):
    """det(I + M) <= 0, so the log-det capacity is undefined."""


class Singular(EvaluatorError):
    """2x2 matrix is numerically singular."""


class InfiniteGain(EvaluatorError):
    """A finite-gain evaluator was called with an infinite conferencing gain."""


class NotInfinite(EvaluatorError):
    """A limit-mode evaluator was called with a finite conferencing gain."""


class DegeneratePhase(EvaluatorError):
    """A zero-duration phase was used where a positive duration is required."""


class InvalidAllocation(EvaluatorError):
    """Allocation violates a simplex constraint or puts power on a zero-duration phase."""


class NotStrongInterference(EvaluatorError):
    """Cross gains do not dominate direct gains, so the strong-IC baseline does not apply."""


def _check_nonneg(name: str, value: float) -> None:
    if not value >= 0.0:
        raise EvaluatorError(f"{name} must be nonnegative, got {value}")


@dataclass(frozen=True)
class ChannelGains:
    """Link amplitude gains c_ik between nodes 1..4 (3 = receiver of 1, 4 of 2).

    Only the conferencing links c12 (between the transmitters) and c34
    (between the receivers) may be +inf; that routes evaluation to the
    dedicated limit-mode code paths.
    """

    c12: float
    c13: float
    c14: float
    c23: float
    c24: float
    c34: float

    def __post_init__(self) -> None:
        for name in ("c13", "c14", "c23", "c24"):
            value = getattr(self, name)
            _check_nonneg(name, value)
            if math.isinf(value):
                raise EvaluatorError(f"{name} must be finite, got {value}")
        for name in ("c12", "c34"):
            _check_nonneg(name, getattr(self, name))

    # The four derived 2-vectors are recomputed on demand, never cached.
    @property
    def g1(self) -> tuple[float, float]:
        """Gains into receiver 3 from transmitters (1, 2)."""
        return (self.c13, self.c23)

    @property
    def g2(self) -> tuple[float, float]:
        """Gains into receiver 4 from transmitters (1, 2)."""
        return (self.c14, self.c24)

    @property
    def h1(self) -> tuple[float, float]:
        """Gains out of transmitter 1 into receivers (3, 4)."""
        return (self.c13, self.c14)

    @property
    def h2(self) -> tuple[float, float]:
        """Gains out of transmitter 2 into receivers (3, 4)."""
        return (self.c23, self.c24)


@dataclass(frozen=True)
class PowerBudget:
    """Per-node average power constraints, noise-normalized (linear scale)."""

    p1: float
    p2: float
    p3: float = 0.0
    p4: float = 0.0

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "p3", "p4"):
            value = getattr(self, name)
            _check_nonneg(name, value)
            if math.isinf(value):
                raise EvaluatorError(f"{name} must be finite, got {value}")


def _normalize(weights: tuple[float, ...]) -> tuple[float, ...]:
    for w in weights:
        if not w >= 0.0:
            raise InvalidAllocation(f"negative simplex weight {w}")
    total = math.fsum(weights)
    if abs(total - 1.0) > _SIMPLEX_SUM_TOL:
        raise InvalidAllocation(f"simplex sum {total} not within {_SIMPLEX_SUM_TOL} of 1")
    return tuple(w / total for w in weights)


@dataclass(frozen=True)
class Simplex2:
    """Two nonnegative weights, renormalized on construction to sum to one."""

    w1: float
    w2: float

    def __post_init__(self) -> None:
        w1, w2 = _normalize((self.w1, self.w2))
        object.__setattr__(self, "w1", w1)
        object.__setattr__(self, "w2", w2)

    def __iter__(self):
        return iter((self.w1, self.w2))


@dataclass(frozen=True)
class Simplex3:
    """Three nonnegative weights, renormalized on construction to sum to one."""

    w1: float
    w2: float
    w3: float

    def __post_init__(self) -> None:
        w1, w2, w3 = _normalize((self.w1, self.w2, self.w3))
        object.__setattr__(self, "w1", w1)
        object.__setattr__(self, "w2", w2)
        object.__setattr__(self, "w3", w3)

    def __iter__(self):
        return iter((self.w1, self.w2, self.w3))


@dataclass(frozen=True)
class TcAllocation:
    """Scheme parameters for transmitter cooperation.

    lam    -- phase durations (exchange 1, exchange 2, joint broadcast)
    kappa  -- node-1 power split between phase 1 and phase 3
    gamma  -- node-2 power split between phase 2 and phase 3
    alpha  -- node-1 phase-1 split between the conferencing and relayed streams
    beta   -- node-2 phase-2 split between the conferencing and relayed streams
    mu     -- node-1 phase-3 split: fresh user-1 stream, joint user-1 stream,
              joint user-2 stream
    eta    -- node-2 phase-3 split: fresh user-2 stream, joint user-2 stream,
              joint user-1 stream
    """

    lam: Simplex3
    kappa: Simplex2
    gamma: Simplex2
    alpha: Simplex2
    beta: Simplex2
    mu: Simplex3
    eta: Simplex3


@dataclass(frozen=True)
class RcAllocation:
    """Scheme parameters for receiver cooperation.

    lam   -- phase durations (joint listen, node-3 listen, node-4 listen)
    mu    -- node-1 power split across the three phases
    eta   -- node-2 power split across the three phases
    alpha -- node-4 phase-2 split between compressed observation and relayed data
    beta  -- node-3 phase-3 split between compressed observation and relayed data
    """

    lam: Simplex3
    mu: Simplex3
    eta: Simplex3
    alpha: Simplex2
    beta: Simplex2


@dataclass(frozen=True)
class Sym2:
    """Real symmetric 2x2 matrix [[a11, a12], [a12, a22]]."""

    a11: float
    a12: float
    a22: float

    @classmethod
    def zero(cls) -> "Sym2":
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def identity(cls, scale: float = 1.0) -> "Sym2":
        return cls(scale, 0.0, scale)

    @classmethod
    def diag(cls, a: float, b: float) -> "Sym2":
        return cls(a, 0.0, b)

    @classmethod
    def outer(cls, v: tuple[float, float], scale: float = 1.0) -> "Sym2":
        """scale * v v^T (rank one, PSD for scale >= 0)."""
        return cls(scale * v[0] * v[0], scale * v[0] * v[1], scale * v[1] * v[1])

    def __add__(self, other: "Sym2") -> "Sym2":
        return Sym2(self.a11 + other.a11, self.a12 + other.a12, self.a22 + other.a22)

    def __mul__(self, scale: float) -> "Sym2":
        return Sym2(self.a11 * scale, self.a12 * scale, self.a22 * scale)

    __rmul__ = __mul__

    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a12

    def eigenvalues(self) -> tuple[float, float]:
        """Eigenvalues in ascending order (closed form)."""
        mean = 0.5 * (self.a11 + self.a22)
        dev = math.hypot(0.5 * (self.a11 - self.a22), self.a12)
        return (mean - dev, mean + dev)

    def is_psd(self, tol: float = _PSD_TOL) -> bool:
        return self.eigenvalues()[0] >= -tol


@dataclass(frozen=True)
class RatePair:
    """A nonnegative (R1, R2) point in bits per channel use."""

    r1: float
    r2: float

    def __post_init__(self) -> None:
        _check_nonneg("r1", self.r1)
        _check_nonneg("r2", self.r2)

    @property
    def total(self) -> float:
        return self.r1 + self.r2

    def __iter__(self):
        return iter((self.r1, self.r2))


def cap(x: float) -> float:
    """Gaussian capacity log2(1 + x) for an SNR x >= 0; maps +inf to +inf."""
    if x < 0.0:
        if x < -1e-12:
            raise NegativeSnr(f"negative SNR {x}")
        x = 0.0
    if math.isinf(x):
        return math.inf
    return math.log1p(x) / math.log(2.0)


def quad_form(v: tuple[float, float], m: Sym2) -> float:
    """v M v^T; tiny negatives from roundoff (within 1e-10) clamp to zero."""
    q = v[0] * v[0] * m.a11 + 2.0 * v[0] * v[1] * m.a12 + v[1] * v[1] * m.a22
    if -_PSD_TOL <= q < 0.0:
        return 0.0
    return q


def logdet2(m: Sym2) -> float:
    """log2 det(I + M); raises NonPositiveDefinite when det(I + M) <= 0."""
    d = (1.0 + m.a11) * (1.0 + m.a22) - m.a12 * m.a12
    if d <= 0.0:
        raise NonPositiveDefinite(f"det(I + M) = {d} <= 0")
    return math.log2(d)


def inv2(m: Sym2) -> Sym2:
    """Matrix inverse by adjugate; raises Singular when |det| < 1e-14."""
    d = m.det()
    if abs(d) < _DET_TOL:
        raise Singular(f"2x2 determinant {d} below tolerance")
    return Sym2(m.a22 / d, -m.a12 / d, m.a11 / d)
