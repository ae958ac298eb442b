"""Command-line interface.

Commands: scan, bands, check-family, generate, explain. Snapshots are
read from a path or standard input (`-`). Exit codes are stable: 0 for
success or a clean check, 1 when check-family finds violations, 2 for
input errors, 3 for internal invariant breaches. All output is a
deterministic function of (input bytes, flags, seed), including with
--jobs above 1.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NoReturn, Sequence

import click

from perimetric import errors
from perimetric.generator import GeneratorConfig, generate_synthetic_tenant
from perimetric.ingestion import (
    TenantSnapshot,
    parse_snapshot,
    resolve_effective_grants,
    serialize_snapshot,
)
from perimetric.metric import DistanceModel, check_ultrametricity, effective_distance
from perimetric.perimeter import PrincipalRisk, assess_principal, nn_tour, sorted_grants
from perimetric.ranking import (
    band_of,
    band_report,
    enumerate_bands,
    rank_spns,
    render_band_report_csv,
    render_band_report_json,
)
from perimetric.render import format_fixed, fraction_str


@dataclass(frozen=True)
class ScanOutputRecord:
    """One scan row; fields mirror PrincipalRisk plus the band label."""

    risk: PrincipalRisk
    band_label: str | None


def _fail(message: str, code: int) -> NoReturn:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(handle) -> TenantSnapshot:
    try:
        return parse_snapshot(handle.read())
    except errors.PerimetricError as exc:
        _fail(str(exc), 2)


def _scan_records(snapshot: TenantSnapshot, jobs: int) -> list[ScanOutputRecord]:
    tree = snapshot.native_tree()
    bands = enumerate_bands()

    def worker(spn: str) -> PrincipalRisk:
        grants = resolve_effective_grants(spn, snapshot)
        return assess_principal(spn, grants, effective_distance(grants, tree))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            risks = list(pool.map(worker, snapshot.spns))
    else:
        risks = [worker(spn) for spn in snapshot.spns]

    records = []
    for risk in rank_spns(risks):
        band = band_of(risk.blast_radius, bands)
        records.append(ScanOutputRecord(risk=risk, band_label=band.label if band else None))
    return records


def _render_scan_csv(records: Sequence[ScanOutputRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["spn", "n", "blast_radius", "band", "perimeter", "mean_distance", "spread_ratio", "ultracycle"]
    )
    for record in records:
        r = record.risk
        writer.writerow(
            [
                r.spn,
                r.n,
                format_fixed(r.blast_radius),
                record.band_label or "-",
                format_fixed(r.perimeter),
                format_fixed(r.mean_distance),
                format_fixed(r.spread_ratio),
                "true" if r.ultracycle is not None else "false",
            ]
        )
    return out.getvalue()


def _render_scan_json(records: Sequence[ScanOutputRecord]) -> str:
    doc = {
        "records": [
            {
                "spn": r.risk.spn,
                "n": r.risk.n,
                "blast_radius": format_fixed(r.risk.blast_radius),
                "blast_radius_exact": fraction_str(r.risk.blast_radius),
                "band": r.band_label,
                "perimeter": format_fixed(r.risk.perimeter),
                "perimeter_exact": fraction_str(r.risk.perimeter),
                "mean_distance": format_fixed(r.risk.mean_distance),
                "mean_distance_exact": fraction_str(r.risk.mean_distance),
                "spread_ratio": format_fixed(r.risk.spread_ratio),
                "spread_ratio_exact": fraction_str(r.risk.spread_ratio),
                "ultracycle": r.risk.ultracycle is not None,
                "ultracycle_distance": (
                    fraction_str(r.risk.ultracycle) if r.risk.ultracycle is not None else None
                ),
            }
            for r in records
        ]
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


@click.group()
def main() -> None:
    """Blast-radius and data-perimeter analytics over tenant snapshots."""


@main.command()
@click.argument("snapshot", type=click.File("rb"))
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker threads for per-SPN computation.")
def scan(snapshot, fmt: str, jobs: int) -> None:
    """Rank every SPN by blast radius, breaking ties with the perimeter.

    Distances are computed over the native hierarchy; use check-family to
    audit alternate-hierarchy infima before trusting them.
    """
    parsed = _load(snapshot)
    try:
        records = _scan_records(parsed, max(1, jobs))
    except errors.PerimetricError as exc:
        _fail(str(exc), 3)
    click.echo(_render_scan_csv(records) if fmt == "csv" else _render_scan_json(records), nl=False)


@main.command()
@click.argument("snapshot", type=click.File("rb"))
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--anonymize", is_flag=True, help="Shuffle rows and relabel bands with roman numerals.")
@click.option("--seed", type=int, default=0, show_default=True, help="Shuffle seed for --anonymize.")
def bands(snapshot, fmt: str, anonymize: bool, seed: int) -> None:
    """Per-band SPN counts and average spread ratios."""
    parsed = _load(snapshot)
    tree = parsed.native_tree()
    try:
        risks = []
        for spn in parsed.spns:
            grants = resolve_effective_grants(spn, parsed)
            risks.append(assess_principal(spn, grants, effective_distance(grants, tree)))
        rows = band_report(risks, anonymize=anonymize, seed=seed)
    except errors.PerimetricError as exc:
        _fail(str(exc), 3)
    no_permissions = sum(1 for r in risks if r.blast_radius == 0)
    render = render_band_report_csv if fmt == "csv" else render_band_report_json
    click.echo(render(rows, no_permissions), nl=False)


@main.command("check-family")
@click.argument("snapshot", type=click.File("rb"))
@click.option("--limit", type=click.IntRange(min=1), default=100, show_default=True,
              help="Max violations reported per SPN.")
def check_family(snapshot, limit: int) -> None:
    """Audit pointwise-infimum distances over the alternate hierarchies.

    Exits 1 when any SPN's infimum distances break the strong triangle
    inequality, 0 when clean, 2 when the snapshot has no alternates.
    """
    parsed = _load(snapshot)
    if not parsed.alternates:
        _fail("snapshot declares no alternate hierarchies; nothing to check", 2)
    family = parsed.family()
    dist = DistanceModel(family)
    native_dist = DistanceModel(family.native)
    dirty = 0
    checked = 0
    for spn in parsed.spns:
        grants = sorted_grants(resolve_effective_grants(spn, parsed))
        if len(grants) < 3:
            continue
        checked += 1
        triples = check_ultrametricity(grants, dist, limit=limit)
        if not triples:
            continue
        dirty += 1
        click.echo(f"spn {spn}: {len(triples)} violating triple(s)")
        for i, j, k in triples:
            gi, gj, gk = grants[i], grants[j], grants[k]
            d_ij, d_jk, d_ik = dist(gi, gj), dist(gj, gk), dist(gi, gk)
            unit = min(d_ij, d_jk, d_ik)
            click.echo(
                f"  d3({gi.action}, {gj.action}) = {d_ij / unit}, "
                f"d3({gj.action}, {gk.action}) = {d_jk / unit}, "
                f"d3({gi.action}, {gk.action}) = {d_ik / unit} "
                f"(unit: {fraction_str(unit)})"
            )
        if check_ultrametricity(grants, native_dist, limit=1):
            click.echo(
                "  note: raw pairwise distances violate under the native tree alone "
                "(mixed read/write grants); scan already repairs this via the closure"
            )
    click.echo(
        f"checked {checked} spn(s) against {len(parsed.alternates)} alternate hierarchy(ies)"
    )
    if dirty:
        click.echo(f"infimum distances are not ultrametric for {dirty} spn(s)")
        click.echo("recommendation: fall back to the native hierarchy for perimeter computations")
        sys.exit(1)
    click.echo("no ultrametricity violations found")


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--spns", type=int, default=None, help="SPN count for --archetype.")
@click.option(
    "--archetype",
    type=click.Choice(["tight", "dispersed", "mixed"]),
    default="mixed",
    show_default=True,
)
@click.option("--tight", type=int, default=None, help="Explicit tight SPN count.")
@click.option("--dispersed", type=int, default=None, help="Explicit dispersed SPN count.")
@click.option("--mixed", type=int, default=None, help="Explicit mixed SPN count.")
@click.option("--management-groups", type=int, default=3, show_default=True)
@click.option("--subscriptions", type=int, default=4, show_default=True)
@click.option("--resource-groups", type=int, default=2, show_default=True, help="Per subscription.")
@click.option("--resources", type=int, default=3, show_default=True, help="Per resource group.")
@click.option("--parts", type=int, default=1, show_default=True, help="Per resource.")
def generate(seed, spns, archetype, tight, dispersed, mixed, management_groups,
             subscriptions, resource_groups, resources, parts) -> None:
    """Emit a deterministic synthetic tenant snapshot on standard output."""
    explicit = {"tight": tight, "dispersed": dispersed, "mixed": mixed}
    if spns is not None and any(v is not None for v in explicit.values()):
        _fail("--spns cannot be combined with --tight/--dispersed/--mixed", 2)
    counts = {key: value or 0 for key, value in explicit.items()}
    if spns is not None:
        counts[archetype] = spns
    try:
        config = GeneratorConfig(
            seed=seed,
            management_groups=management_groups,
            subscriptions=subscriptions,
            resource_groups_per_subscription=resource_groups,
            resources_per_resource_group=resources,
            parts_per_resource=parts,
            tight_spns=counts["tight"],
            dispersed_spns=counts["dispersed"],
            mixed_spns=counts["mixed"],
        )
        snapshot = generate_synthetic_tenant(config)
    except errors.PerimetricError as exc:
        _fail(str(exc), 2)
    click.echo(serialize_snapshot(snapshot), nl=False)


@main.command()
@click.argument("snapshot", type=click.File("rb"))
@click.argument("spn")
def explain(snapshot, spn: str) -> None:
    """Per-SPN breakdown: grants, tour edges, radius, perimeter, ratios."""
    parsed = _load(snapshot)
    try:
        grants = sorted_grants(resolve_effective_grants(spn, parsed))
    except errors.PerimetricError as exc:
        _fail(str(exc), 2)
    try:
        dist = effective_distance(grants, parsed.native_tree())
        risk = assess_principal(spn, grants, dist)
        band = band_of(risk.blast_radius, enumerate_bands())
    except errors.PerimetricError as exc:
        _fail(str(exc), 3)

    click.echo(f"spn: {spn}")
    click.echo(f"grants ({risk.n}):")
    for idx, grant in enumerate(grants):
        click.echo(f"  [{idx}] {grant.action} {grant.access.value} @ {grant.scope}")
    if risk.n == 0:
        click.echo("tour: none (no grants)")
    elif risk.n == 1:
        click.echo("tour: single grant, length 0")
    else:
        tour = nn_tour(grants, dist, start=0)
        click.echo("tour (nearest-neighbor from index 0):")
        for a, b in zip(tour.order, tour.order[1:]):
            ga, gb = grants[a], grants[b]
            click.echo(
                f"  [{a}] {ga.action} @ {ga.scope} -> [{b}] {gb.action} @ {gb.scope}"
                f"  d = {fraction_str(dist(ga, gb))}"
            )
    click.echo(
        f"blast radius: {format_fixed(risk.blast_radius)} ({fraction_str(risk.blast_radius)})"
        f"  band: {band.label if band else '-'}"
    )
    click.echo(f"perimeter: {format_fixed(risk.perimeter)} ({fraction_str(risk.perimeter)})")
    click.echo(f"mean distance: {format_fixed(risk.mean_distance)} ({fraction_str(risk.mean_distance)})")
    click.echo(f"spread ratio: {format_fixed(risk.spread_ratio)} ({fraction_str(risk.spread_ratio)})")
    if risk.ultracycle is not None:
        click.echo(f"ultracycle: yes (xi = {fraction_str(risk.ultracycle)})")
    else:
        click.echo("ultracycle: no")


if __name__ == "__main__":
    main()
