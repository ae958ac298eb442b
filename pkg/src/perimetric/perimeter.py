"""Per-principal geometry: blast radius, tour perimeter, mean, spread ratio.

The data perimeter of a grant set is the minimal cyclic tour length over
all grants. On ultrametric distances the greedy nearest-neighbor tour
already attains the minimum, which the exhaustive oracle here exists to
double-check. All lengths are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from perimetric import kernels
from perimetric.errors import EmptyInput, TooLarge, UndefinedMean
from perimetric.metric import Grant, grant_sort_key

BRUTE_FORCE_LIMIT = 9

DistFn = Callable[[Grant, Grant], object]


@dataclass(frozen=True)
class Tour:
    """Cyclic visit order (start repeated at the end) and its exact length."""

    order: tuple[int, ...]
    length: Fraction


@dataclass(frozen=True)
class PrincipalRisk:
    """Risk geometry of one service principal's effective grant set."""

    spn: str
    n: int
    blast_radius: Fraction
    perimeter: Fraction
    mean_distance: Fraction
    spread_ratio: Fraction
    ultracycle: Fraction | None


def sorted_grants(grants: Iterable[Grant]) -> tuple[Grant, ...]:
    """Deduplicate and order a grant set canonically for indexing.

    Plain orderable points (as used with literal distance tables in
    tests) sort by their natural order.
    """
    items = set(grants)
    try:
        return tuple(sorted(items, key=grant_sort_key))
    except AttributeError:
        return tuple(sorted(items))


def blast_radius(grants: Iterable[Grant], dist: DistFn) -> Fraction:
    """Diameter of the grant set: the maximum pairwise distance.

    Empty and singleton sets have radius 0.
    """
    items = sorted_grants(grants)
    best = Fraction(0)
    for a, b in combinations(items, 2):
        d = dist(a, b)
        if d > best:
            best = Fraction(d)
    return best


def nn_tour(grants: Sequence[Grant], dist: DistFn, start: int = 0) -> Tour:
    """Greedy nearest-neighbor cycle over an already-indexed grant sequence.

    Ties are broken toward the lowest index, so the tour is reproducible.
    The sequence is used as given; callers own the index assignment.
    """
    n = len(grants)
    if n == 0:
        raise EmptyInput("nn_tour needs at least one grant")
    if not 0 <= start < n:
        raise EmptyInput(f"start index {start} out of range for {n} grants")
    flat = kernels.build_matrix(grants, dist)
    order, length = kernels.nn_tour_flat(flat, n, start)
    return Tour(order=order, length=length)


def brute_force_tour(grants: Sequence[Grant], dist: DistFn) -> Fraction:
    """Exact minimal cyclic length by enumerating all (n-1)! orders.

    Test-time oracle; refuses instances beyond 9 grants.
    """
    n = len(grants)
    if n == 0:
        raise EmptyInput("brute_force_tour needs at least one grant")
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{n} grants exceed the exhaustive limit of {BRUTE_FORCE_LIMIT}")
    flat = kernels.build_matrix(grants, dist)
    return kernels.brute_force_flat(flat, n)


def perimeter(grants: Iterable[Grant], dist: DistFn) -> Fraction:
    """Minimal cyclic tour length over the grant set; 0 for n <= 1."""
    items = sorted_grants(grants)
    if len(items) <= 1:
        return Fraction(0)
    return nn_tour(items, dist, start=0).length


def mean_distance(grants: Iterable[Grant], dist: DistFn) -> Fraction:
    """Average over unordered distinct pairs. Undefined below two grants."""
    items = sorted_grants(grants)
    n = len(items)
    if n < 2:
        raise UndefinedMean(f"mean distance needs two grants, got {n}")
    total = Fraction(0)
    for a, b in combinations(items, 2):
        total += Fraction(dist(a, b))
    return total / (n * (n - 1) // 2)


def spread_ratio(n: int, perimeter_length: Fraction, mean: Fraction) -> Fraction:
    """Perimeter over n times the mean; 1 by convention when that is undefined.

    Point-like sets score exactly 1; genuinely spread sets score below 1.
    """
    if n >= 2 and mean > 0:
        return Fraction(perimeter_length) / (n * Fraction(mean))
    return Fraction(1)


def is_ultracycle(grants: Iterable[Grant], dist: DistFn) -> Fraction | None:
    """Common pairwise distance if all pairs are equal and positive, else None."""
    items = sorted_grants(grants)
    if len(items) < 2:
        return None
    common = None
    for a, b in combinations(items, 2):
        d = Fraction(dist(a, b))
        if common is None:
            common = d
        elif d != common:
            return None
    if common is None or common <= 0:
        return None
    return common


def assess_principal(spn: str, grants: Iterable[Grant], dist: DistFn) -> PrincipalRisk:
    """Full risk record for one principal, computing the matrix only once."""
    items = sorted_grants(grants)
    n = len(items)
    if n <= 1:
        return PrincipalRisk(
            spn=spn,
            n=n,
            blast_radius=Fraction(0),
            perimeter=Fraction(0),
            mean_distance=Fraction(0),
            spread_ratio=Fraction(1),
            ultracycle=None,
        )

    flat = kernels.build_matrix(items, dist)
    values = [Fraction(flat[i * n + j]) for i in range(n) for j in range(i + 1, n)]
    radius = max(values)
    mean = sum(values, Fraction(0)) / len(values)
    _, length = kernels.nn_tour_flat(flat, n, 0)
    first = values[0]
    xi = first if first > 0 and all(v == first for v in values) else None
    return PrincipalRisk(
        spn=spn,
        n=n,
        blast_radius=radius,
        perimeter=length,
        mean_distance=mean,
        spread_ratio=spread_ratio(n, length, mean),
        ultracycle=xi,
    )
