"""Torus GIT by the centroid criterion on exact weight polytopes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ._linalg import kernel, rank, solve
from .errors import DomainError
from .poly import as_fraction

MAX_RANK = 3

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class WeightTable:
    rank: int
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        w = tuple(tuple(int(x) for x in row) for row in self.weights)
        object.__setattr__(self, "weights", w)
        if not 1 <= self.rank <= MAX_RANK:
            raise DomainError(f"torus rank must be between 1 and {MAX_RANK}, got {self.rank}")
        if not w or any(len(row) != self.rank for row in w):
            raise DomainError("every weight must have length equal to the rank")

    def __len__(self) -> int:
        return len(self.weights)


class TorusKind(str, enum.Enum):
    STABLE = "Stable"
    STRICTLY_POLYSTABLE = "StrictlyPolystable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"


class OriginPosition(str, enum.Enum):
    INTERIOR = "Interior"
    RELATIVE_INTERIOR = "RelativeInterior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class TorusVerdict:
    kind: TorusKind
    hull_dimension: int
    origin_position: OriginPosition

    def to_record(self) -> dict:
        return {
            "kind": self.kind.value,
            "hull_dimension": self.hull_dimension,
            "origin_position": self.origin_position.value,
        }


def three_a2_weight_table() -> WeightTable:
    """Characters of the maximal torus acting on the anticanonical sections of the 3A2 cubic."""
    return WeightTable(2, ((1, 0), (0, 0), (0, 1), (-1, -1)))


def _coefficients(c: Sequence, table: WeightTable) -> list[Fraction]:
    c = [as_fraction(x) for x in c]
    if len(c) != len(table):
        raise DomainError(f"{len(c)} coefficients for a table of {len(table)} weights")
    if not any(c):
        raise DomainError("coefficient vector is zero")
    return c


def weight_set(c: Sequence, table: WeightTable) -> frozenset[tuple[int, ...]]:
    c = _coefficients(c, table)
    return frozenset(w for w, x in zip(table.weights, c) if x)


def shifted_weight_set(c: Sequence, table: WeightTable, shift: Sequence) -> frozenset[Point]:
    """Weights of ``c`` after changing the linearisation by ``shift``."""
    shift = [as_fraction(s) for s in shift]
    if len(shift) != table.rank:
        raise DomainError(f"shift of length {len(shift)} for a rank-{table.rank} torus")
    return frozenset(
        tuple(Fraction(x) - s for x, s in zip(w, shift)) for w in weight_set(c, table)
    )


def _origin_position(points: list[Point]) -> tuple[int, OriginPosition]:
    """Affine dimension of the hull and where the origin sits relative to it."""
    base = points[0]
    dirs = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    k = rank(dirs) if dirs else 0
    ambient = len(base)
    if k == 0:
        at = all(x == 0 for x in base)
        return 0, OriginPosition.RELATIVE_INTERIOR if at else OriginPosition.OUTSIDE
    # origin must lie in the affine hull
    transposed = [[row[i] for row in dirs] for i in range(ambient)]
    if solve(transposed, [-x for x in base]) is None:
        return k, OriginPosition.OUTSIDE
    # express every point in a basis of the affine span
    span_basis = _independent_rows(dirs, k)
    matrix_t = [[row[i] for row in span_basis] for i in range(ambient)]

    def local(p: Sequence[Fraction]) -> list[Fraction]:
        return solve(matrix_t, [p[i] - base[i] for i in range(ambient)])

    local_points = [local(p) for p in points]
    origin = local([Fraction(0)] * ambient)
    on_boundary = False
    for subset in combinations(range(len(local_points)), k):
        normal, offset = _hyperplane(local_points, subset, k)
        if normal is None:
            continue
        side = [sum(a * b for a, b in zip(normal, q)) - offset for q in local_points]
        if all(s >= 0 for s in side) or all(s <= 0 for s in side):
            sign = 1 if any(s > 0 for s in side) else -1
            o = sign * (sum(a * b for a, b in zip(normal, origin)) - offset)
            if o < 0:
                return k, OriginPosition.OUTSIDE
            if o == 0:
                on_boundary = True
    if on_boundary:
        return k, OriginPosition.BOUNDARY
    return k, OriginPosition.INTERIOR if k == ambient else OriginPosition.RELATIVE_INTERIOR


def _independent_rows(rows: list[list[Fraction]], k: int) -> list[list[Fraction]]:
    chosen: list[list[Fraction]] = []
    for row in rows:
        if rank(chosen + [row]) > len(chosen):
            chosen.append(row)
        if len(chosen) == k:
            break
    return chosen


def _hyperplane(points, subset, k):
    """Hyperplane through ``k`` points in ``k``-space, or ``(None, None)`` if degenerate."""
    anchor = points[subset[0]]
    rows = [[points[i][j] - anchor[j] for j in range(k)] for i in subset[1:]]
    basis = kernel(rows, k)
    if len(basis) != 1:
        return None, None
    normal = basis[0]
    return normal, sum(a * b for a, b in zip(normal, anchor))


def centroid_verdict(c: Sequence, table: WeightTable, shift: Sequence = None) -> TorusVerdict:
    """Stability of the point with coefficients ``c`` from the position of 0 in its weight polytope."""
    if shift is None:
        shift = [0] * table.rank
    points = sorted(shifted_weight_set(c, table, shift))
    dim, pos = _origin_position(points)
    if pos is OriginPosition.OUTSIDE:
        kind = TorusKind.UNSTABLE
    elif pos is OriginPosition.BOUNDARY:
        kind = TorusKind.STRICTLY_SEMISTABLE
    elif pos is OriginPosition.INTERIOR:
        kind = TorusKind.STABLE
    else:
        kind = TorusKind.STRICTLY_POLYSTABLE
    return TorusVerdict(kind, dim, pos)


def _induced_linear_map(table: WeightTable, sigma: Sequence[int]) -> list[list[Fraction]] | None:
    """Rows of a linear map on characters sending weight ``i`` to weight ``sigma[i]``, if any."""
    src = [[Fraction(x) for x in w] for w in table.weights]
    rows = []
    for out in range(table.rank):
        rhs = [Fraction(table.weights[sigma[i]][out]) for i in range(len(table))]
        row = solve(src, rhs)
        if row is None:
            return None
        rows.append(row)
    return rows


def extended_verdict(
    c: Sequence,
    table: WeightTable,
    shift: Sequence = None,
    group: Sequence[Sequence[int]] = (),
) -> TorusVerdict:
    """Centroid verdict checked for agreement across a finite group permuting the basis.

    Each permutation must be induced by a linear automorphism of the
    character lattice, so that it normalizes the torus.
    """
    c = _coefficients(c, table)
    if shift is None:
        shift = [0] * table.rank
    verdict = centroid_verdict(c, table, shift)
    for sigma in group:
        sigma = list(sigma)
        if sorted(sigma) != list(range(len(table))):
            raise DomainError(f"{sigma} is not a permutation of the basis")
        phi = _induced_linear_map(table, sigma)
        if phi is None:
            raise DomainError(f"{sigma} does not come from an automorphism of the character lattice")
        moved_shift = [sum(a * as_fraction(b) for a, b in zip(row, shift)) for row in phi]
        moved = [Fraction(0)] * len(c)
        for i, x in enumerate(c):
            moved[sigma[i]] = x
        other = centroid_verdict(moved, table, moved_shift)
        if other.kind is not verdict.kind:
            raise DomainError(
                f"verdict {verdict.kind.value} changes to {other.kind.value} under {sigma}"
            )
    return verdict
