"""Band stratification and two-key risk ranking.

With default weights the distance formula admits exactly 22 values, one
per (level, access) pair, so principals sharing a blast radius fall into
the same band. Ranking sorts by radius first and breaks ties with the
perimeter: a larger tour means more elongated permission geometry and
ranks riskier. Band reports can be anonymized by shuffling rows under a
seed and relabeling them with roman numerals.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from perimetric.errors import NonCanonicalWeights, UnbandableRadius
from perimetric.metric import AccessClass, DEFAULT_IMPACT, ImpactModel
from perimetric.perimeter import PrincipalRisk
from perimetric.render import format_fixed, fraction_str, roman

EXPECTED_BAND_COUNT = 22

# Bands at or above this radius are labeled Dispersed, the rest Tight.
TIGHT_RADIUS_BOUND = Fraction(1, 10_000)

_LEVEL_LABELS = {
    0: "tenant",
    1: "mg1", 2: "mg2", 3: "mg3", 4: "mg4", 5: "mg5", 6: "mg6",
    7: "subscription",
    8: "resource-group",
    9: "resource",
    10: "resource-part",
}


class Regime(Enum):
    TIGHT = "Tight"
    DISPERSED = "Dispersed"


@dataclass(frozen=True)
class Band:
    value: Fraction
    level: int
    access: AccessClass

    @property
    def label(self) -> str:
        return f"{_LEVEL_LABELS[self.level]}:{self.access.value}"


@dataclass(frozen=True)
class BandReportRow:
    label: str
    spn_count: int
    avg_spread_ratio: Fraction
    regime: Regime
    band: Band | None


def regime_for(band_value: Fraction) -> Regime:
    return Regime.TIGHT if band_value < TIGHT_RADIUS_BOUND else Regime.DISPERSED


def enumerate_bands(model: ImpactModel = DEFAULT_IMPACT) -> tuple[Band, ...]:
    """All bands in strictly decreasing radius order.

    Raises NonCanonicalWeights when the weights collapse the census below
    22 distinct values.
    """
    bands = [
        Band(
            value=Fraction(model.weight(access), 1 << (2 * level + 1)),
            level=level,
            access=access,
        )
        for level in range(11)
        for access in (AccessClass.WRITE, AccessClass.READ)
    ]
    values = {band.value for band in bands}
    if len(values) != EXPECTED_BAND_COUNT:
        raise NonCanonicalWeights(
            f"weights ({model.read_weight}, {model.write_weight}) yield "
            f"{len(values)} distinct band values, expected {EXPECTED_BAND_COUNT}"
        )
    return tuple(sorted(bands, key=lambda band: band.value, reverse=True))


def band_of(radius: Fraction, bands: Sequence[Band]) -> Band | None:
    """Band whose value equals the radius exactly; None for radius 0."""
    if radius == 0:
        return None
    for band in bands:
        if band.value == radius:
            return band
    raise UnbandableRadius(f"radius {radius} is not a canonical band value")


def rank_spns(risks: Iterable[PrincipalRisk]) -> list[PrincipalRisk]:
    """Sort by blast radius desc, perimeter desc, then spn id asc."""
    return sorted(risks, key=lambda r: (-r.blast_radius, -r.perimeter, r.spn))


def band_report(
    risks: Iterable[PrincipalRisk],
    anonymize: bool = False,
    seed: int = 0,
    bands: Sequence[Band] | None = None,
) -> list[BandReportRow]:
    """One row per populated band with the average member spread ratio.

    Zero-radius principals are excluded; they belong in a separate
    no-permissions section, not a band. With anonymize set, rows are
    shuffled by the seeded permutation and relabeled I, II, III, ... in
    shuffled order.
    """
    if bands is None:
        bands = enumerate_bands()
    buckets: dict[Fraction, list[PrincipalRisk]] = {}
    for risk in risks:
        if risk.blast_radius == 0:
            continue
        band = band_of(risk.blast_radius, bands)
        assert band is not None
        buckets.setdefault(band.value, []).append(risk)

    rows = []
    for band in bands:
        members = buckets.get(band.value)
        if not members:
            continue
        avg = sum((m.spread_ratio for m in members), Fraction(0)) / len(members)
        rows.append(
            BandReportRow(
                label=band.label,
                spn_count=len(members),
                avg_spread_ratio=avg,
                regime=regime_for(band.value),
                band=band,
            )
        )

    if anonymize:
        random.Random(seed).shuffle(rows)
        rows = [
            replace(row, label=roman(i + 1), band=None)
            for i, row in enumerate(rows)
        ]
    return rows


def render_band_report_csv(rows: Sequence[BandReportRow], no_permissions: int = 0) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["band", "spn_count", "avg_spread_ratio", "regime"])
    for row in rows:
        writer.writerow(
            [row.label, row.spn_count, format_fixed(row.avg_spread_ratio), row.regime.value]
        )
    if no_permissions:
        writer.writerow(["no-permissions", no_permissions, "", ""])
    return out.getvalue()


def render_band_report_json(rows: Sequence[BandReportRow], no_permissions: int = 0) -> str:
    doc = {
        "bands": [
            {
                "band": row.label,
                "spn_count": row.spn_count,
                "avg_spread_ratio": format_fixed(row.avg_spread_ratio),
                "avg_spread_ratio_exact": fraction_str(row.avg_spread_ratio),
                "regime": row.regime.value,
            }
            for row in rows
        ],
        "no_permissions": {"spn_count": no_permissions},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
