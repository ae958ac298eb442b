"""Dyadic distances between permission grants.

Two distinct grants sit at raw distance impact / 2**(2 * level + 1),
where level is the canonical level of the lowest common ancestor of
their scopes and impact is the larger of the two access weights (read 1,
write 2 by default). Identical grants are at distance 0. All values are
exact dyadic rationals and every comparison is exact; there are no
tolerances anywhere.

The raw pair formula is what blast radii, band values and hierarchy
infima are defined on. For tour geometry over one grant set, use
EffectiveDistance: the raw formula's ultrametric closure, which repairs
the strong triangle inequality on sets that mix read and write grants
while preserving the diameter exactly. The pointwise infimum over a
family of alternate hierarchies is generally not ultrametric at all,
which is what check_ultrametricity is for.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar

from perimetric import kernels
from perimetric.errors import UnknownNode
from perimetric.hierarchy import TenantTree, lca_level


class AccessClass(Enum):
    READ = "read"
    WRITE = "write"


@dataclass(frozen=True)
class Grant:
    """One (action, access class, scope) permission atom."""

    action: str
    access: AccessClass
    scope: str


def grant_sort_key(grant: Grant) -> tuple[str, str, str]:
    """Canonical ordering used everywhere a grant set needs an index."""
    return (grant.action, grant.access.value, grant.scope)


@dataclass(frozen=True)
class ImpactModel:
    """Access-class weights feeding the distance numerator.

    Weights other than the defaults are allowed (write must outweigh
    read), but only the defaults guarantee the canonical 22-band census
    and distances bounded by 1.
    """

    read_weight: int = 1
    write_weight: int = 2

    def __post_init__(self) -> None:
        for name, w in (("read_weight", self.read_weight), ("write_weight", self.write_weight)):
            if not isinstance(w, int) or w <= 0:
                raise ValueError(f"{name} must be a positive integer, got {w!r}")
        if self.write_weight <= self.read_weight:
            raise ValueError("write_weight must exceed read_weight")

    def weight(self, access: AccessClass) -> int:
        return self.write_weight if access is AccessClass.WRITE else self.read_weight


DEFAULT_IMPACT = ImpactModel()


def pair_impact(a: Grant, b: Grant, model: ImpactModel = DEFAULT_IMPACT) -> int:
    """Impact of a grant pair: the larger of the two access weights."""
    return max(model.weight(a.access), model.weight(b.access))


def distance(
    a: Grant,
    b: Grant,
    tree: TenantTree,
    model: ImpactModel = DEFAULT_IMPACT,
) -> Fraction:
    """Exact dyadic distance between two grants under one hierarchy."""
    if a == b:
        return Fraction(0)
    level = lca_level(tree, a.scope, b.scope)
    return Fraction(pair_impact(a, b, model), 1 << (2 * level + 1))


@dataclass(frozen=True)
class HierarchyFamily:
    """A native hierarchy plus named re-parented alternates.

    Every alternate must cover exactly the native node-id set; each is a
    fully validated tree in its own right.
    """

    native: TenantTree
    alternates: tuple[tuple[str, TenantTree], ...] = ()

    def __post_init__(self) -> None:
        native_ids = set(self.native.nodes)
        seen = set()
        for name, tree in self.alternates:
            if name in seen:
                raise ValueError(f"alternate hierarchy name {name!r} repeated")
            seen.add(name)
            if set(tree.nodes) != native_ids:
                raise ValueError(
                    f"alternate {name!r} does not cover the native node-id set"
                )

    def members(self):
        """Yield (name, tree) pairs, native first."""
        yield "native", self.native
        yield from self.alternates


def infimum_distance(
    a: Grant,
    b: Grant,
    family: HierarchyFamily,
    model: ImpactModel = DEFAULT_IMPACT,
) -> Fraction:
    """Pointwise minimum of the distance across all hierarchies in the family.

    Tighter than any single member, but no longer ultrametric in general.
    """
    best: Fraction | None = None
    for name, tree in family.members():
        try:
            d = distance(a, b, tree, model)
        except UnknownNode as exc:
            raise UnknownNode(f"{exc} (hierarchy {name!r})") from None
        if best is None or d < best:
            best = d
    assert best is not None
    return best


@dataclass(frozen=True)
class DistanceModel:
    """Callable pairing an impact model with a tree or family of trees."""

    hierarchy: TenantTree | HierarchyFamily
    impact: ImpactModel = DEFAULT_IMPACT

    def __call__(self, a: Grant, b: Grant) -> Fraction:
        if isinstance(self.hierarchy, HierarchyFamily):
            return infimum_distance(a, b, self.hierarchy, self.impact)
        return distance(a, b, self.hierarchy, self.impact)


class EffectiveDistance:
    """Ultrametric over one grant set under one hierarchy.

    The raw pair formula stops being an ultrametric once read and write
    grants mix: a write grant can sit arbitrarily close to a read grant
    while every path around the resulting write pair stays cheap. The
    repair mirrors how clusters actually merge: a write grant raises the
    merge height of every cluster that contains it, so a read pair whose
    sides hold a write meets at the write value of its LCA level. The
    result is a dendrogram, hence a true ultrametric, and it preserves
    the raw distance's diameter (the blast radius) exactly. Sets with a
    single access class are untouched.

    Instances are bound to one grant set; only pairs from that set may
    be queried.
    """

    def __init__(
        self,
        grants: Iterable[Grant],
        tree: TenantTree,
        model: ImpactModel = DEFAULT_IMPACT,
    ) -> None:
        if model.write_weight >= 4 * model.read_weight:
            raise ValueError(
                "ultrametric closure needs write_weight below four times read_weight"
            )
        self._tree = tree
        self._model = model
        dirty: set[str] = set()
        for grant in set(grants):
            if grant.scope not in tree.nodes:
                raise UnknownNode(f"node {grant.scope!r} not in tree")
            if grant.access is AccessClass.WRITE:
                node: str | None = grant.scope
                while node is not None and node not in dirty:
                    dirty.add(node)
                    node = tree.nodes[node].parent
        self._dirty = dirty

    def __call__(self, a: Grant, b: Grant) -> Fraction:
        if a == b:
            return Fraction(0)
        tree = self._tree
        for scope in (a.scope, b.scope):
            if scope not in tree.nodes:
                raise UnknownNode(f"node {scope!r} not in tree")
        # walk to the LCA keeping the last node on each side of the meet
        na, nb = a.scope, b.scope
        ca: str | None = None
        cb: str | None = None
        da, db = tree.depth[na], tree.depth[nb]
        while da > db:
            ca, na = na, tree.nodes[na].parent  # type: ignore[assignment]
            da -= 1
        while db > da:
            cb, nb = nb, tree.nodes[nb].parent  # type: ignore[assignment]
            db -= 1
        while na != nb:
            ca, na = na, tree.nodes[na].parent  # type: ignore[assignment]
            cb, nb = nb, tree.nodes[nb].parent  # type: ignore[assignment]
        level = tree.canonical_level[na]
        side_a = ca in self._dirty if ca is not None else a.access is AccessClass.WRITE
        side_b = cb in self._dirty if cb is not None else b.access is AccessClass.WRITE
        weight = self._model.write_weight if (side_a or side_b) else self._model.read_weight
        return Fraction(weight, 1 << (2 * level + 1))


def effective_distance(
    grants: Iterable[Grant],
    tree: TenantTree,
    model: ImpactModel = DEFAULT_IMPACT,
) -> EffectiveDistance:
    """The per-set ultrametric the analytics pipeline runs on."""
    return EffectiveDistance(grants, tree, model)


P = TypeVar("P")


def check_ultrametricity(
    points: Sequence[P],
    dist: Callable[[P, P], object],
    limit: int = 100,
) -> list[tuple[int, int, int]]:
    """Scan all triples for strong-triangle-inequality violations.

    Returns canonical (i, j, k) index triples with i < k where
    d(i, k) > max(d(i, j), d(j, k)), capped at `limit` findings. An empty
    result means the distance is ultrametric on this point set. The scan
    is cubic; keep point counts at or below 2000.
    """
    n = len(points)
    if n < 3:
        return []
    flat = kernels.build_matrix(points, dist)
    return kernels.violations_flat(flat, n, limit)
