"""Log CM line bundle coefficients and Donaldson-Futaki invariants of 1-PS degenerations.

The weights of a test configuration induced by a one-parameter subgroup are
read off the bigraded Hilbert series of the limit pair. For a weight-homogeneous
hypersurface ``f0`` of weight ``w_f`` and a linear form ``h0`` of weight ``w_h``

    S_X(q, z) = (1 - q^w_f z^d) / prod_i (1 - q^a_i z)
    S_D(q, z) = S_X(q, z) * (1 - q^w_h z)

and the total weight in degree ``m`` is the ``q``-derivative at ``q = 1`` of
the ``z^m`` coefficient.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._linalg import solve
from .engine import PairState, limit_pair
from .errors import DomainError
from .one_param import WeightsLike, as_weights
from .poly import SparsePolynomial, as_fraction, divides, format_rational

# --- coefficient formulas -------------------------------------------------------


def _check_nd(n: int, d: int) -> None:
    if n < 1 or not 2 <= d <= n + 1:
        raise DomainError(f"need n >= 1 and 2 <= d <= n+1, got n={n}, d={d}")


def _check_beta(beta) -> Fraction:
    beta = as_fraction(beta)
    if not 0 < beta <= 1:
        raise DomainError(f"beta = {beta} outside (0, 1]")
    return beta


def a_beta(n: int, d: int, beta) -> Fraction:
    _check_nd(n, d)
    beta = _check_beta(beta)
    r = n + 2 - d
    u = 1 - beta
    bracket = r * ((n + 2) * (d - 1) * (1 + n * u) + u * (n + 1)) - n * d * u * (n + 1)
    return r ** (n - 1) * bracket


def a_beta_slope_corrected(n: int, d: int, beta) -> Fraction:
    """``a(beta)`` recomputed with the divisor slope ``mu(L, D) = 1/(n+2-d)``.

    Agrees with ``a_beta`` when ``d = n+1``. For ``d < n+1`` this is the
    coefficient that makes the Donaldson-Futaki weights proportional to the
    Hilbert-Mumford weights.
    """
    _check_nd(n, d)
    _, _, I1, I2, I3 = fixed_hyperplane_pencil(n, d)
    return cm_degree_from_intersections(n, 1, Fraction(1, n + 2 - d), I1, I2, I3, _check_beta(beta))


def b_beta(n: int, d: int, beta) -> Fraction:
    _check_nd(n, d)
    beta = _check_beta(beta)
    return (n + 2 - d) ** n * d * (n + 1) * (1 - beta)


@dataclass(frozen=True)
class CMCoefficients:
    a: Fraction
    b: Fraction
    t: Fraction

    def to_record(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("a", "b", "t")}


def cm_coefficients(n: int, d: int, beta) -> CMCoefficients:
    a, b = a_beta(n, d, beta), b_beta(n, d, beta)
    return CMCoefficients(a, b, b / a)


def t_of_beta(n: int, d: int, beta) -> Fraction:
    return cm_coefficients(n, d, beta).t


def beta_of_t(d: int, t) -> Fraction:
    """Inverse of ``t_of_beta`` when ``d = n+1``; the map is an involution."""
    t = as_fraction(t)
    if not 0 <= t < 1:
        raise DomainError(f"t = {t} outside [0, 1)")
    return Fraction(d * d) * (1 - t) / (d * d - t)


def t_of_beta_float(n: int, d: int, beta: float) -> float:
    """Float evaluation of ``b/a`` for irrational ``beta`` (display and tolerance checks only)."""
    _check_nd(n, d)
    beta = float(beta)
    if not 0 < beta <= 1:
        raise DomainError(f"beta = {beta} outside (0, 1]")
    r = n + 2 - d
    u = 1.0 - beta
    a = r ** (n - 1) * (r * ((n + 2) * (d - 1) * (1 + n * u) + u * (n + 1)) - n * d * u * (n + 1))
    b = r**n * d * (n + 1) * u
    return b / a


def hilbert_coefficients(n: int, d: int) -> tuple[Fraction, Fraction, Fraction]:
    """``(a0, a1, a0_tilde)`` for the anticanonical polarization of a degree-``d`` hypersurface."""
    _check_nd(n, d)
    r = n + 2 - d
    return (
        Fraction(d * r**n, math.factorial(n)),
        Fraction(d * r**n, 2 * math.factorial(n - 1)),
        Fraction(d * r ** (n - 1), math.factorial(n - 1)),
    )


# --- Donaldson-Futaki -----------------------------------------------------------


@dataclass(frozen=True)
class HilbertWeightData:
    a0: Fraction
    a1: Fraction
    a0_tilde: Fraction
    b0: Fraction
    b1: Fraction
    b0_tilde: Fraction

    def __post_init__(self):
        if self.a0 <= 0:
            raise DomainError("a0 must be positive")


def df_from_coefficients(data: HilbertWeightData, beta) -> Fraction:
    beta = as_fraction(beta)
    a0 = data.a0
    return (
        2 * (data.a1 * data.b0 - a0 * data.b1) / a0
        + (1 - beta) * (data.b0_tilde * a0 - data.a0_tilde * data.b0) / a0
    )


# --- bigraded series ------------------------------------------------------------


def _raw_weights(lam: WeightsLike | Sequence[int]) -> tuple[int, ...]:
    # the trivial action is allowed here, unlike in one_param
    w = tuple(int(x) for x in lam) if not hasattr(lam, "weights") else lam.weights
    if sum(w) != 0:
        raise DomainError(f"weights {w} do not sum to zero")
    return w


def monomial_weight_distributions(weights: Sequence[int], top: int) -> list[Counter]:
    """``z^m`` coefficients of ``prod_i 1/(1 - q^a_i z)`` for ``m <= top``, as exponent counters."""
    dist = [Counter({0: 1})] + [Counter() for _ in range(top)]
    for a in weights:
        # multiply by 1/(1 - q^a z): new[m] = old[m] + q^a new[m-1]
        for m in range(1, top + 1):
            for e, c in dist[m - 1].items():
                dist[m][e + a] += c
    return dist


def _shift_sub(p: Counter, q: Counter, shift: int) -> Counter:
    out = Counter(p)
    for e, c in q.items():
        out[e + shift] -= c
    return Counter({e: c for e, c in out.items() if c})


def graded_pieces(
    weights: Sequence[int], w_f: int, d: int, top: int, w_h: int | None = None
) -> list[Counter]:
    """``z^m`` coefficients of ``S_X`` (or of ``S_D`` when ``w_h`` is given) for ``m <= top``."""
    base = monomial_weight_distributions(weights, top)
    empty = Counter()
    sx = [_shift_sub(base[m], base[m - d] if m >= d else empty, w_f) for m in range(top + 1)]
    if w_h is None:
        return sx
    return [_shift_sub(sx[m], sx[m - 1] if m >= 1 else empty, w_h) for m in range(top + 1)]


def _dim(piece: Counter) -> int:
    return sum(piece.values())


def _weight(piece: Counter) -> int:
    return sum(e * c for e, c in piece.items())


@dataclass(frozen=True)
class WeightSample:
    k: int
    dim: int
    w: int
    dim_tilde: int
    w_tilde: int

    def to_record(self) -> dict:
        return {"k": self.k, "dim": self.dim, "w": self.w, "dim_tilde": self.dim_tilde, "w_tilde": self.w_tilde}


def _homogeneous_weight(p: SparsePolynomial, weight, what: str) -> int:
    values = {weight(m) for m in p.terms}
    if len(values) != 1:
        raise DomainError(f"{what} is not weight-homogeneous for the given 1-PS")
    return values.pop()


def equivariant_weights(
    f0: SparsePolynomial,
    h0: SparsePolynomial,
    lam,
    ks: Iterable[int],
    *,
    scale: int = 1,
) -> list[WeightSample]:
    """Dimensions and total weights of the degree ``scale*k`` pieces of the limit pair.

    ``scale`` selects the polarization ``O(scale)``.
    """
    a = _raw_weights(lam)
    if f0.is_zero() or h0.is_zero():
        raise DomainError("limit polynomials must be nonzero")
    if len(a) != f0.nvars or len(a) != h0.nvars:
        raise DomainError("1-PS length does not match the number of variables")
    if divides(h0, f0):
        raise DomainError("h0 divides f0; the limit is not a complete intersection")
    w_f = _homogeneous_weight(f0, lambda m: sum(x * e for x, e in zip(a, m)), "f0")
    w_h = _homogeneous_weight(h0, lambda m: a[m.index(1)], "h0")
    d = f0.degree()
    ks = list(ks)
    if not ks or min(ks) < 0:
        raise DomainError("sample degrees must be non-negative")
    top = scale * max(ks)
    sx = graded_pieces(a, w_f, d, top)
    sd = graded_pieces(a, w_f, d, top, w_h)
    out = []
    for k in ks:
        m = scale * k
        out.append(WeightSample(k, _dim(sx[m]), _weight(sx[m]), _dim(sd[m]), _weight(sd[m])))
    return out


def fit_polynomial(samples: Sequence[tuple[int, Fraction]], degree: int) -> list[Fraction]:
    """Exact coefficients (leading first) of the degree-``degree`` polynomial through the samples.

    Needs at least ``degree + 2`` samples; the extras must lie on the
    interpolant or ``DomainError`` is raised.
    """
    if len(samples) < degree + 2:
        raise DomainError(f"need at least {degree + 2} samples, got {len(samples)}")
    head = samples[: degree + 1]
    matrix = [[Fraction(k) ** (degree - i) for i in range(degree + 1)] for k, _ in head]
    coeffs = solve(matrix, [Fraction(v) for _, v in head])
    if coeffs is None:
        raise DomainError("sample abscissae are not distinct")
    for k, v in samples[degree + 1 :]:
        if sum(c * Fraction(k) ** (degree - i) for i, c in enumerate(coeffs)) != v:
            raise DomainError(f"sample at k={k} is off the fitted degree-{degree} polynomial")
    return coeffs


def fit_weight_polynomial(samples: Sequence[tuple[int, Fraction]], degree: int) -> tuple[Fraction, Fraction]:
    coeffs = fit_polynomial(samples, degree)
    return coeffs[0], coeffs[1] if degree >= 1 else Fraction(0)


def weight_data_of_one_ps(
    pair: PairState, lam: WeightsLike
) -> tuple[HilbertWeightData, list[WeightSample]]:
    """Hilbert and weight leading coefficients of the test configuration induced by ``lam``."""
    n, d = pair.n, pair.d
    a0, a1, a0_tilde = hilbert_coefficients(n, d)
    f0, h0, is_log = limit_pair(pair, lam)
    if not is_log:
        raise DomainError("degenerate limit: the limit hyperplane divides the limit hypersurface")
    first = d + 1
    samples = equivariant_weights(f0, h0, as_weights(lam), range(first, first + n + 3), scale=n + 2 - d)
    b0, b1 = fit_weight_polynomial([(s.k, Fraction(s.w)) for s in samples], n + 1)
    b0_tilde, _ = fit_weight_polynomial([(s.k, Fraction(s.w_tilde)) for s in samples], n)
    return HilbertWeightData(a0, a1, a0_tilde, b0, b1, b0_tilde), samples


def df_of_one_ps(pair: PairState, lam: WeightsLike, beta) -> Fraction:
    data, _ = weight_data_of_one_ps(pair, lam)
    return df_from_coefficients(data, _check_beta(beta))


# --- CM degree from intersection numbers ----------------------------------------


def cm_degree_from_intersections(n: int, mu_L, mu_LD, I1, I2, I3, beta) -> Fraction:
    """Degree of the log CM line bundle over a curve from pushed-forward intersection numbers.

    ``I1 = L^{n+1}``, ``I2 = L^n . K``, ``I3 = L^n . D`` on the total space.
    """
    mu_L, mu_LD, I1, I2, I3, beta = (as_fraction(x) for x in (mu_L, mu_LD, I1, I2, I3, beta))
    return n * mu_L * I1 + (n + 1) * I2 + (1 - beta) * ((n + 1) * I3 - n * mu_LD * I1)


def fixed_hyperplane_pencil(n: int, d: int) -> tuple[Fraction, ...]:
    """``(mu_L, mu_LD, I1, I2, I3)`` for a pencil of hypersurfaces cut by a fixed hyperplane.

    The family is a divisor of bidegree ``(1, d)`` in ``P^1 x P^{n+1}`` with
    ``L`` the relative anticanonical class ``r*H2 - H1`` (``r = n+2-d``) and
    ``D`` the restriction of ``H2``.
    """
    _check_nd(n, d)
    r = n + 2 - d
    I1 = Fraction(r**n * (n + 2) * (1 - d))
    return Fraction(1), Fraction(1), I1, -I1, Fraction(r**n - n * d * r ** (n - 1))


def fixed_surface_pencil(n: int, d: int) -> tuple[Fraction, ...]:
    """Same data for ``P^1 x X`` with a hyperplane section of bidegree ``(1, 1)``."""
    _check_nd(n, d)
    r = n + 2 - d
    return Fraction(1), Fraction(1), Fraction(0), Fraction(0), Fraction(d * r**n)

