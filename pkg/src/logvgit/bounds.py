"""Closed-form thresholds: volume bounds, critical angles and codimension counts.

Root-valued thresholds are compared through exact rational inequalities on
integer powers; the float/decimal values exist for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb, floor

from .errors import DomainError
from .poly import as_fraction


@dataclass(frozen=True)
class VolumeBoundQuery:
    n: int
    pair_degree: Fraction
    vol_hat: Fraction

    def __post_init__(self):
        object.__setattr__(self, "pair_degree", as_fraction(self.pair_degree))
        object.__setattr__(self, "vol_hat", as_fraction(self.vol_hat))
        if self.n < 1:
            raise DomainError("n must be at least 1")
        if self.pair_degree <= 0 or self.vol_hat <= 0:
            raise DomainError("degree and normalized volume must be positive")


def liu_bound_ok(q: VolumeBoundQuery) -> bool:
    """Whether ``pair_degree <= (1 + 1/n)^n * vol_hat``."""
    return q.pair_degree <= (1 + Fraction(1, q.n)) ** q.n * q.vol_hat


def quotient_volume(order: int) -> Fraction:
    """Normalized volume of ``C^2/G`` at the origin for a group of the given order."""
    if order < 1:
        raise DomainError("group order must be positive")
    return Fraction(4, order)


def _open_unit(beta) -> Fraction:
    beta = as_fraction(beta)
    if not 0 < beta < 1:
        raise DomainError(f"beta = {beta} outside (0, 1)")
    return beta


def max_group_order_cubic(beta) -> int:
    """Largest ``|G|`` with ``4/|G| >= (4/3) beta^2``."""
    beta = _open_unit(beta)
    return floor(3 / beta**2)


def gap_bound(n: int) -> int:
    if n < 2:
        raise DomainError("the gap bound needs n >= 2")
    return 2 * (n - 1) ** n


def _check_beta0_domain(n: int, d: int) -> None:
    if n < 2:
        raise DomainError("the critical angle formula needs n >= 2")
    if d < n + 1:
        raise DomainError(f"need d >= n+1, got n={n}, d={d}")


def beta0_Pn(n: int, d: int, precision: int = 40) -> Decimal:
    """``1 - (n+1)/d * (1 - 2^(1/n) (1 - 1/n))`` to ``precision`` significant digits."""
    _check_beta0_domain(n, d)
    with localcontext() as ctx:
        ctx.prec = precision
        root = Decimal(2) ** (Decimal(1) / Decimal(n))
        value = 1 - Decimal(n + 1) / Decimal(d) * (1 - root * (1 - Decimal(1) / Decimal(n)))
        return +value


def is_above_beta0(n: int, d: int, beta) -> bool:
    """Exact test for ``beta > beta0_Pn(n, d)``."""
    _check_beta0_domain(n, d)
    beta = as_fraction(beta)
    base = (1 - (1 - beta) * Fraction(d, n + 1)) / (1 - Fraction(1, n))
    return base > 0 and base**n > 2


def beta0_cubic_predicate(beta) -> bool:
    """``beta > sqrt(3)/2``, decided as ``beta^2 > 3/4``."""
    beta = as_fraction(beta)
    return beta > 0 and beta**2 > Fraction(3, 4)


def codim_z1(n: int, d: int) -> int:
    if n < 1 or not 2 <= d <= n + 1:
        raise DomainError(f"need 2 <= d <= n+1, got n={n}, d={d}")
    return comb(n + d, d)


def codim_z1prime(n: int, d: int) -> int:
    """Codimension of reducible hypersurfaces containing a hyperplane."""
    if n < 2 or d < 2:
        raise DomainError(f"need n, d >= 2, got n={n}, d={d}")
    return comb(n + d, d) - (n + 1)


def codim_z2(n: int, d: int) -> int:
    if n < 2 or d < 2:
        raise DomainError(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    return comb(n + d + 1, d) - comb(n + d - 1, d - 2) + n - 2
