"""Hilbert-Mumford evaluation and coordinate-relative stability verdicts for pairs."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError
from .one_param import (
    OneParamSubgroup,
    WeightsLike,
    all_orderings,
    as_weights,
    pairing,
    weight_f,
    weight_h,
)
from .poly import Monomial, SparsePolynomial, as_fraction, divides, format_rational, monomials_of_degree

RationalLike = Fraction | int | str


@dataclass(frozen=True)
class PairState:
    n: int
    d: int
    f: SparsePolynomial
    h: SparsePolynomial

    def __post_init__(self):
        if self.n < 1 or self.d < 2:
            raise DomainError(f"need n >= 1 and d >= 2, got n={self.n}, d={self.d}")
        for name, p, deg in (("f", self.f, self.d), ("h", self.h, 1)):
            if p.is_zero():
                raise DomainError(f"{name} must be nonzero")
            if p.nvars != self.n + 2:
                raise DomainError(f"{name} has {p.nvars} variables, expected {self.n + 2}")
            if not p.is_homogeneous(deg):
                raise DomainError(f"{name} must be homogeneous of degree {deg}")

    def permuted(self, sigma: Sequence[int]) -> "PairState":
        from .poly import apply_permutation

        return PairState(self.n, self.d, apply_permutation(self.f, sigma), apply_permutation(self.h, sigma))


class VerdictKind(str, enum.Enum):
    UNSTABLE_CERTIFIED = "UnstableCertified"
    NOT_DESTABILIZED = "NotDestabilizedInCoordinates"


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of the candidate search.

    ``mu_max`` is the maximum of ``mu_t`` over candidates rescaled so that
    their largest weight is 1, which makes it independent of how the
    candidates happen to be scaled.
    """

    kind: VerdictKind
    witness: tuple[int, ...] | None
    mu_max: Fraction
    t: Fraction

    def __post_init__(self):
        if self.kind is VerdictKind.UNSTABLE_CERTIFIED:
            if self.mu_max <= 0 or self.witness is None:
                raise DomainError("an instability certificate needs mu_max > 0 and a witness")
        elif self.mu_max > 0:
            raise DomainError("mu_max > 0 contradicts a non-destabilized verdict")

    def to_record(self) -> dict:
        return {
            "kind": self.kind.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "mu_max": format_rational(self.mu_max),
            "t": format_rational(self.t),
        }


@dataclass(frozen=True, order=True)
class Wall:
    t: Fraction
    provenance: tuple[tuple[int, ...], int, int]  # (lambda, monomial weight, h-index)

    def to_record(self) -> dict:
        lam, w, j = self.provenance
        return {"t": format_rational(self.t), "lambda": list(lam), "weight": w, "j": j}


def t_max(n: int, d: int) -> Fraction:
    if n < 1 or d < 2:
        raise DomainError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    return Fraction(d, n + 1)


def _check_t(t: RationalLike, n: int, d: int) -> Fraction:
    t = as_fraction(t)
    if not 0 <= t <= t_max(n, d):
        raise DomainError(f"t = {t} outside [0, {t_max(n, d)}]")
    return t


def mu_t(pair: PairState, lam: WeightsLike, t: RationalLike) -> Fraction:
    t = _check_t(t, pair.n, pair.d)
    return weight_f(pair.f, lam) + t * weight_h(pair.h, lam)


def verdict_in_coords(
    pair: PairState,
    t: RationalLike,
    candidates: Iterable[OneParamSubgroup],
    *,
    over_permutations: bool = False,
) -> StabilityVerdict:
    """Search the candidates for a destabilizing 1-PS in the current coordinates.

    With ``over_permutations`` every coordinate permutation of each candidate is
    tried as well, so the verdict no longer depends on how variables are
    numbered. A positive answer is a genuine instability certificate; a
    non-positive one only says nothing destabilizes in these coordinates.
    """
    t = _check_t(t, pair.n, pair.d)
    candidates = list(candidates)
    if not candidates:
        raise DomainError("empty candidate set")
    vectors = all_orderings(candidates) if over_permutations else [c.weights for c in candidates]
    best: tuple[Fraction, tuple[Fraction, ...]] | None = None
    witness = None
    for w in vectors:
        top = max(w)
        value = mu_t(pair, w, t) / top
        key = (value, tuple(Fraction(a, top) for a in w))
        if best is None or key > best:
            best, witness = key, w
    mu_max = best[0]
    kind = VerdictKind.UNSTABLE_CERTIFIED if mu_max > 0 else VerdictKind.NOT_DESTABILIZED
    return StabilityVerdict(kind, witness, mu_max, t)


def candidate_walls(n: int, d: int, candidates: Iterable[OneParamSubgroup]) -> list[Wall]:
    """Every ``t`` in ``(0, t_max]`` where some ``w + t*a_j`` vanishes.

    One wall per value of ``t``; the provenance kept is the smallest triple.
    """
    top = t_max(n, d)
    weights_of = {}
    monos = monomials_of_degree(n + 2, d)
    found: dict[Fraction, tuple] = {}
    for lam in candidates:
        a = lam.weights
        if len(a) != n + 2:
            raise DomainError(f"candidate {a} has wrong length for n={n}")
        ws = weights_of.setdefault(a, sorted({pairing(m, a) for m in monos}))
        for j, aj in enumerate(a):
            if aj == 0:
                continue
            for w in ws:
                t = Fraction(-w, aj)
                if 0 < t <= top:
                    prov = (a, w, j)
                    if t not in found or prov < found[t]:
                        found[t] = prov
    return [Wall(t, found[t]) for t in sorted(found)]


def _lowest_stratum(p: SparsePolynomial, weight) -> SparsePolynomial:
    values = {m: weight(m) for m in p.terms}
    low = min(values.values())
    return SparsePolynomial(p.nvars, {m: c for m, c in p.terms.items() if values[m] == low})


def limit_pair(pair: PairState, lam: WeightsLike) -> tuple[SparsePolynomial, SparsePolynomial, bool]:
    """Limit of ``lam(s)`` acting on the pair as ``s -> 0``: the minimal-weight parts."""
    a = as_weights(lam)
    if len(a) != pair.n + 2:
        raise DomainError("1-PS length does not match the pair")
    f0 = _lowest_stratum(pair.f, lambda m: pairing(m, a))
    h0 = _lowest_stratum(pair.h, lambda m: a[m.index(1)])
    return f0, h0, not divides(h0, f0)


def destabilizing_family(lam: WeightsLike, t: RationalLike, j: int, d: int) -> frozenset[Monomial]:
    """Degree-``d`` monomials whose weight is at least ``-t*a_j``."""
    a = as_weights(lam)
    if not 0 <= j < len(a):
        raise DomainError(f"variable index {j} out of range for {len(a)} variables")
    if d < 1:
        raise DomainError("degree must be positive")
    t = as_fraction(t)
    threshold = -t * a[j]
    return frozenset(m for m in monomials_of_degree(len(a), d) if pairing(m, a) >= threshold)
