"""Normalized one-parameter subgroups of SL(n+2) and their weights on polynomials.

A diagonal one-parameter subgroup ``s -> Diag(s^a_0, ..., s^a_{n+1})`` is
stored as its integer weight vector. It is *normalized* when the weights are
non-increasing, sum to zero and are coprime.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Sequence, Union

from ._linalg import cross_kernel, primitive
from .errors import DomainError, EnvelopeError
from .poly import Monomial, SparsePolynomial, monomials_of_degree

log = logging.getLogger(__name__)

GENERATOR_TAG = "arrangement-vertices-v1"
DEFAULT_MAX_SYSTEMS = 2_000_000


@dataclass(frozen=True, order=True)
class OneParamSubgroup:
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not any(w):
            raise DomainError("the zero vector is not a one-parameter subgroup")
        if sum(w) != 0:
            raise DomainError(f"weights {w} do not sum to zero")
        if any(a < b for a, b in zip(w, w[1:])):
            raise DomainError(f"weights {w} are not non-increasing")
        if primitive(w) != w:
            raise DomainError(f"weights {w} are not coprime")

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]


WeightsLike = Union[OneParamSubgroup, Sequence[int]]


def as_weights(lam: WeightsLike) -> tuple[int, ...]:
    """Weight tuple of a 1-PS; raw integer vectors with zero sum are accepted too."""
    if isinstance(lam, OneParamSubgroup):
        return lam.weights
    w = tuple(int(x) for x in lam)
    if not any(w) or sum(w) != 0:
        raise DomainError(f"{w} is not the weight vector of a nontrivial 1-PS of SL")
    return w


def normalize(raw: Sequence[int]) -> OneParamSubgroup:
    raw = tuple(int(x) for x in raw)
    if not any(raw):
        raise DomainError("cannot normalize the zero vector")
    if sum(raw) != 0:
        raise DomainError(f"{raw} does not sum to zero")
    return OneParamSubgroup(primitive(tuple(sorted(raw, reverse=True))))


def pairing(monomial: Sequence[int], lam: WeightsLike) -> int:
    w = as_weights(lam)
    if len(monomial) != len(w):
        raise DomainError(f"monomial of length {len(monomial)} vs 1-PS of length {len(w)}")
    return sum(a * e for a, e in zip(w, monomial))


def _nonzero(p: SparsePolynomial, what: str) -> None:
    if p.is_zero():
        raise DomainError(f"{what} must be nonzero")


def weight_f(f: SparsePolynomial, lam: WeightsLike) -> int:
    """Minimum weight of the support of ``f``."""
    _nonzero(f, "f")
    return min(pairing(m, lam) for m in f.terms)


def weight_h(h: SparsePolynomial, lam: WeightsLike) -> int:
    """Minimum weight ``a_i`` over the variables present in the linear form ``h``."""
    _nonzero(h, "h")
    if not h.is_homogeneous(1):
        raise DomainError("h must be a homogeneous linear form")
    w = as_weights(lam)
    if len(w) != h.nvars:
        raise DomainError(f"linear form in {h.nvars} variables vs 1-PS of length {len(w)}")
    return min(w[m.index(1)] for m in h.terms)


def _partial_sums(mono: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for e in mono:
        acc += e
        out.append(acc)
    return out


def mukai_leq(I: Sequence[int], J: Sequence[int]) -> bool:
    """``I <= J`` in the order induced by all normalized 1-PS.

    Testing the extreme rays of the normalized cone reduces to comparing
    partial sums of the exponent vectors.
    """
    if len(I) != len(J):
        raise DomainError("monomials of different lengths")
    if sum(I) != sum(J):
        raise DomainError("monomials of different degrees")
    return all(a <= b for a, b in zip(_partial_sums(I), _partial_sums(J)))


def extreme_rays(nvars: int) -> list[tuple[int, ...]]:
    """Rays spanning the normalized cone; ray ``k`` has ``k+1`` equal leading entries."""
    n = nvars - 2
    return [
        primitive(tuple(n + 1 - k if i <= k else -(k + 1) for i in range(nvars)))
        for k in range(nvars - 1)
    ]


def minimal_support(f: SparsePolynomial) -> frozenset[Monomial]:
    _nonzero(f, "f")
    if not f.is_homogeneous():
        raise DomainError("f must be homogeneous")
    supp = sorted(f.terms)
    return frozenset(
        m for m in supp if not any(o != m and mukai_leq(o, m) for o in supp)
    )


def arrangement_normals(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Distinct hyperplane normals ``I - J`` (up to scale) plus the chamber walls."""
    monos = monomials_of_degree(nvars, degree)
    normals = set()

    def add(v):
        v = primitive(v)
        first = next(x for x in v if x)
        normals.add(v if first > 0 else tuple(-x for x in v))

    for I, J in combinations(monos, 2):
        add(tuple(a - b for a, b in zip(I, J)))
    for i in range(nvars - 1):
        add(tuple((j == i) - (j == i + 1) for j in range(nvars)))
    rays = extreme_rays(nvars)
    kept = []
    for v in sorted(normals):
        signs = {(s > 0) - (s < 0) for s in (sum(a * b for a, b in zip(v, r)) for r in rays)}
        # a hyperplane meeting the cone only at the origin carries no vertex
        if signs == {1} or signs == {-1}:
            continue
        kept.append(v)
    return kept


def _in_cone(v: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(v, v[1:]))


def generate_candidates(
    n: int,
    d: int,
    *,
    max_systems: int = DEFAULT_MAX_SYSTEMS,
    bound: int | None = None,
) -> frozenset[OneParamSubgroup]:
    """Normalized 1-PS containing every vertex of the arrangement subdivision of the cone.

    Every ``n``-subset of hyperplane normals, together with ``sum(a) = 0``,
    cuts out a line; the rays of those lines lying in the normalized cone are
    collected. ``bound`` drops candidates with ``max|a_i| > bound`` and makes
    the result incomplete (exploratory runs only).
    """
    if n < 1 or d < 2:
        raise DomainError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    nvars = n + 2
    normals = arrangement_normals(nvars, d)
    systems = comb(len(normals), n)
    if systems > max_systems:
        raise EnvelopeError(
            f"(n, d) = ({n}, {d}) needs {systems} linear systems, cap is {max_systems}"
        )
    log.debug("generating candidates for (%d, %d): %d normals, %d systems", n, d, len(normals), systems)
    ones = (1,) * nvars
    found: set[tuple[int, ...]] = set(extreme_rays(nvars))
    for subset in combinations(normals, n):
        v = cross_kernel(list(subset) + [ones])
        if not any(v):
            continue
        if _in_cone(v):
            found.add(primitive(v))
        else:
            neg = tuple(-x for x in v)
            if _in_cone(neg):
                found.add(primitive(neg))
    out = frozenset(OneParamSubgroup(v) for v in found)
    if bound is not None:
        log.warning("candidate set truncated to max|a_i| <= %d; sign decisions are incomplete", bound)
        out = frozenset(lam for lam in out if max(abs(a) for a in lam.weights) <= bound)
    return out


def all_orderings(candidates: Iterable[OneParamSubgroup]) -> list[tuple[int, ...]]:
    """Every coordinate permutation of the given weight vectors, deduplicated."""
    seen = set()
    for lam in candidates:
        seen.update(permutations(lam.weights))
    return sorted(seen, reverse=True)
