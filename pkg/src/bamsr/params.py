"""Code parameters derived from the design pair (mu, delta).

The construction fixes ``k = mu + 1`` and the helper-count grid
``D = {2mu, 3mu, ..., (delta+1)mu}``; every other quantity follows from
``z = lcm(1..delta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .gf import FieldSpec, GF, get_field


class ParameterError(ValueError):
    pass


class TooFewNodesError(ParameterError):
    pass


class FieldTooSmallError(ParameterError):
    pass


class PowerCollisionError(ParameterError):
    """Two evaluation points share the same mu-th power."""


class HelperCountError(ParameterError):
    """Requested helper count is not in the designed set D."""


@dataclass(frozen=True)
class CodeParams:
    mu: int
    delta: int
    n: int
    field: FieldSpec
    points: tuple[int, ...]
    exponents: Optional[tuple[int, ...]] = None

    @property
    def gf(self) -> GF:
        return get_field(self.field)

    @property
    def z(self) -> int:
        return math.lcm(*range(1, self.delta + 1))

    @property
    def alpha(self) -> int:
        return self.mu * self.z

    @property
    def k(self) -> int:
        return self.mu + 1

    @property
    def file_size(self) -> int:
        return self.k * self.alpha

    @property
    def D(self) -> tuple[int, ...]:
        return tuple((i + 1) * self.mu for i in range(1, self.delta + 1))

    @property
    def beta(self) -> dict[int, int]:
        return {(i + 1) * self.mu: self.alpha // (i * self.mu) for i in range(1, self.delta + 1)}

    @property
    def gamma(self) -> dict[int, int]:
        return {d: d * b for d, b in self.beta.items()}

    @property
    def psi_len(self) -> int:
        """Length of a coefficient row, ``(z + 1) * mu``."""
        return (self.z + 1) * self.mu

    def point(self, j: int) -> int:
        """Evaluation point of node ``j`` (1-based)."""
        if not 1 <= j <= self.n:
            raise IndexError(f"node index {j} outside 1..{self.n}")
        return self.points[j - 1]

    def check_d(self, d: int) -> int:
        """Return ``m = d/mu - 1`` for ``d`` in D, else raise."""
        if d not in self.D:
            raise HelperCountError(f"d={d} is not in D={list(self.D)}")
        return d // self.mu - 1

    def summary(self) -> dict:
        return {
            "mu": self.mu,
            "delta": self.delta,
            "n": self.n,
            "field": str(self.field),
            "z": self.z,
            "alpha": self.alpha,
            "k": self.k,
            "F": self.file_size,
            "D": list(self.D),
            "beta": {str(d): b for d, b in self.beta.items()},
            "gamma": {str(d): g for d, g in self.gamma.items()},
        }


def max_points(q: int, mu: int) -> int:
    """Largest n for which consecutive generator powers have distinct mu-th powers."""
    return (q - 1) // math.gcd(mu, q - 1)


def select_points(n: int, mu: int, field: FieldSpec) -> list[int]:
    """Points ``g^0, g^1, ..., g^(n-1)`` for the field's smallest primitive element ``g``."""
    gf = get_field(field)
    q = gf.q
    if n > q - 1:
        raise FieldTooSmallError(f"{field} has only {q - 1} nonzero elements, need n={n}")
    bound = max_points(q, mu)
    if n > bound:
        raise PowerCollisionError(
            f"{field} admits at most (q-1)/gcd(mu,q-1) = {bound} points with distinct "
            f"{mu}-th powers, need n={n}")
    g = gf.generator()
    return [gf.pow(g, a) for a in range(n)]


def validate_points(points: Sequence[int], mu: int, field: FieldSpec) -> None:
    gf = get_field(field)
    pts = [gf.check(e) for e in points]
    if any(e == 0 for e in pts):
        raise ParameterError("evaluation points must be nonzero")
    if len(set(pts)) != len(pts):
        raise ParameterError("evaluation points must be distinct")
    powers = [gf.pow(e, mu) for e in pts]
    if len(set(powers)) != len(powers):
        raise PowerCollisionError(f"evaluation points have colliding {mu}-th powers")


def derive_params(mu: int, delta: int, n: int, field: FieldSpec | None = None,
                  points: Sequence[int] | None = None) -> CodeParams:
    """Build and validate a :class:`CodeParams`.

    Points default to consecutive powers of a generator; an explicit point
    list may be given instead (it is checked for distinctness, nonzero
    entries and distinct ``mu``-th powers).
    """
    field = field or FieldSpec.binary()
    if mu < 1 or delta < 1:
        raise ParameterError(f"mu and delta must be >= 1, got mu={mu}, delta={delta}")
    need = (delta + 1) * mu + 1
    if n < need:
        raise TooFewNodesError(f"n={n} < d_delta + 1 = {need}")
    gf = get_field(field)
    if points is None:
        pts = select_points(n, mu, field)
        g = gf.generator()
        exps = tuple(range(n)) if pts == [gf.pow(g, a) for a in range(n)] else None
    else:
        pts = list(points)
        if len(pts) != n:
            raise ParameterError(f"expected {n} points, got {len(pts)}")
        validate_points(pts, mu, field)
        exps = None
    return CodeParams(mu, delta, n, field, tuple(pts), exps)


def params_from_exponents(mu: int, delta: int, n: int, field: FieldSpec,
                          exponents: Sequence[int]) -> CodeParams:
    """Rebuild parameters whose points are ``g^a`` for the given exponents."""
    gf = get_field(field)
    g = gf.generator()
    pts = [gf.pow(g, a) for a in exponents]
    p = derive_params(mu, delta, n, field, pts)
    return CodeParams(p.mu, p.delta, p.n, p.field, p.points, tuple(exponents))


def msr_beta(F: int, k: int, d: int) -> int:
    """Optimal per-helper download ``F / (k (d - k + 1))`` for an MSR code."""
    if d < k:
        raise ParameterError(f"d={d} must be >= k={k}")
    num, den = F, k * (d - k + 1)
    if num % den:
        raise ParameterError(f"F/(k(d-k+1)) = {num}/{den} is not an integer")
    return num // den


def prior_art_alpha(D: Sequence[int], k: int, n: int) -> int:
    """Sub-packetization ``lcm(d_1-k+1, ..., d_delta-k+1) ** n`` of the earlier explicit construction."""
    if not D:
        raise ParameterError("D must be nonempty")
    if any(d <= k - 1 for d in D):
        raise ParameterError("every d must exceed k - 1")
    return math.lcm(*(d - k + 1 for d in D)) ** n
