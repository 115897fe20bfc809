"""
Exact-arithmetic bound checks.

- The directed Kovari-Sos-Turan edge bound
      |E| <= (s-1)^(1/r) * t^(2-1/r) + (r-1) * t
  decided without ever taking a root, by rearranging into big integers.
- The word-property bound |G| <= (2/(1-gamma))^m * (n-1).
- The implication chain from arc density and the edge bound to the order
  bound.

All rationals are fractions.Fraction; nothing on the authoritative path
touches floating point.
"""

from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Union

import logging

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class DomainError(ValueError):
    """Arguments outside the domain of a bound."""


class GapSource(str, Enum):
    """Where a gap constant came from"""
    GUSTAFSON = "gustafson-5/8"
    EMPIRICAL = "empirical-catalog-supremum"
    USER = "user-supplied"


def format_number(value: Optional[Number]) -> str:
    """Exact string form: integers as-is, rationals as p/q."""
    if value is None:
        return ""
    return str(Fraction(value))


class GapConstant:
    """
    A uniform ceiling gamma < 1 on the probability that a word is satisfied,
    over groups where the word is not an identity.
    """

    def __init__(self, gamma: Number, source: GapSource = GapSource.USER):
        gamma = Fraction(gamma)
        if not 0 <= gamma < 1:
            raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
        self.gamma = gamma
        self.source = GapSource(source)

    @property
    def base(self) -> Fraction:
        """2 / (1 - gamma), always >= 2."""
        return 2 / (1 - self.gamma)

    @classmethod
    def gustafson(cls) -> "GapConstant":
        return cls(Fraction(5, 8), GapSource.GUSTAFSON)

    @classmethod
    def parse(cls, text: str) -> "GapConstant":
        """Parse "p/q", an integer or a decimal exactly."""
        try:
            gamma = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"cannot read {text!r} as a rational gamma")
        return cls(gamma, GapSource.USER)

    @classmethod
    def empirical(cls, probabilities: Iterable[Fraction]) -> "GapConstant":
        """
        Supremum of observed satisfaction probabilities. Callers pass only
        probabilities from groups where the word is not an identity.
        """
        values = [Fraction(p) for p in probabilities]
        if not values:
            logger.warning("No non-identity cases observed; empirical gamma defaults to 0")
        return cls(max(values, default=Fraction(0)), GapSource.EMPIRICAL)

    def to_dict(self) -> Dict[str, str]:
        return {"gamma": format_number(self.gamma), "source": self.source.value, "base": format_number(self.base)}

    def __repr__(self) -> str:
        return f"GapConstant(gamma={self.gamma}, source={self.source.value})"


class BoundReport:
    """Outcome of one exact comparison lhs <= rhs (both None when vacuous)."""

    def __init__(self, holds: bool, lhs: Optional[Number], rhs: Optional[Number], context: Optional[Dict[str, Any]] = None):
        self.holds = bool(holds)
        self.lhs = lhs
        self.rhs = rhs
        self.context = context or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "holds": self.holds,
            "lhs": format_number(self.lhs),
            "rhs": format_number(self.rhs),
            "context": self.context,
        }

    def __repr__(self) -> str:
        return f"BoundReport(holds={self.holds}, lhs={format_number(self.lhs)}, rhs={format_number(self.rhs)})"


def _as_gamma(gamma: Union[GapConstant, Number]) -> Fraction:
    if isinstance(gamma, GapConstant):
        return gamma.gamma
    return GapConstant(gamma).gamma


def _check_mn(m: int, n: int) -> None:
    if m < 1 or m > n:
        raise DomainError(f"need 1 <= m <= n, got m={m}, n={n}")


# ----------------------------------------------------------------------
# Kovari-Sos-Turan
# ----------------------------------------------------------------------
def kst_bound_holds(t: int, r: int, s: int, edges: int) -> BoundReport:
    """
    Decide edges <= (s-1)^(1/r) t^(2-1/r) + (r-1) t exactly.

    When edges <= (r-1)t the bound holds outright; otherwise it is
    equivalent to (edges - (r-1)t)^r <= (s-1) t^(2r-1).
    """
    if t < 1 or r < 1 or s < 1:
        raise DomainError(f"need t, r, s >= 1, got t={t}, r={r}, s={s}")
    if not 0 <= edges <= t * t:
        raise DomainError(f"edge count {edges} outside [0, {t * t}]")

    linear = (r - 1) * t
    context = {"t": t, "r": r, "s": s, "edges": edges}
    if edges <= linear:
        return BoundReport(True, edges, linear, {**context, "form": "edges <= (r-1)t"})
    lhs = (edges - linear) ** r
    rhs = (s - 1) * t ** (2 * r - 1)
    return BoundReport(lhs <= rhs, lhs, rhs, {**context, "form": "(edges-(r-1)t)^r <= (s-1)t^(2r-1)"})


def kst_bound_value(t: int, r: int, s: int) -> float:
    """Floating-point value of the edge bound, for cross-checks only."""
    return (s - 1) ** (1 / r) * t ** (2 - 1 / r) + (r - 1) * t


# ----------------------------------------------------------------------
# Order bound
# ----------------------------------------------------------------------
def main_bound(gamma: Union[GapConstant, Number], m: int, n: int) -> Fraction:
    """(2 / (1 - gamma))^m * (n - 1) as an exact rational."""
    _check_mn(m, n)
    gamma = _as_gamma(gamma)
    return (2 / (1 - gamma)) ** m * (n - 1)


def main_bound_holds(order: int, gamma: Union[GapConstant, Number], m: int, n: int) -> BoundReport:
    """Exact test of |G| <= (2/(1-gamma))^m (n-1)."""
    if order < 1:
        raise DomainError(f"group order must be positive, got {order}")
    bound = main_bound(gamma, m, n)
    gamma = _as_gamma(gamma)
    return BoundReport(order <= bound, order, bound, {"order": order, "gamma": str(gamma), "m": m, "n": n})


def derivation_chain_holds(t: int, eta: int, gamma: Union[GapConstant, Number], m: int, n: int) -> BoundReport:
    """
    Check the implication: arc density eta >= (1-gamma)t^2, the edge bound
    for K(m,n)-free digraphs, and t >= n-1 together force
    t <= (2/(1-gamma))^m (n-1).

    Holds vacuously when any hypothesis fails; the context records which.
    """
    if t < 1:
        raise DomainError(f"need t >= 1, got {t}")
    _check_mn(m, n)
    if not 0 <= eta <= t * t:
        raise DomainError(f"eta {eta} outside [0, {t * t}]")
    gamma = _as_gamma(gamma)

    dense = eta >= (1 - gamma) * t * t
    edge_bound = kst_bound_holds(t, m, n, eta).holds
    large = t >= n - 1
    bound = main_bound(gamma, m, n)
    context = {
        "t": t,
        "eta": eta,
        "gamma": str(gamma),
        "m": m,
        "n": n,
        "density": dense,
        "edge_bound": edge_bound,
        "order_at_least_n_minus_1": large,
    }
    if not (dense and edge_bound and large):
        return BoundReport(True, None, None, {**context, "vacuous": True})

    holds = t <= bound
    if not holds:
        logger.warning(f"Derivation chain failed for {context}")
    return BoundReport(holds, t, bound, {**context, "vacuous": False})
