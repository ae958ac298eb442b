"""Deterministic synthetic tenants for experiments and tests.

Same seed, same snapshot, byte for byte. Three principal archetypes:

    tight      every grant on one resource or resource part with one
               access class, so all pairwise distances coincide
    dispersed  two or more clusters of grants in different
               subscriptions: small inside clusters, large across
    mixed      grants sprinkled anywhere in the hierarchy
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from perimetric.errors import InvalidConfig
from perimetric.hierarchy import MAX_MG_DEPTH, HierarchyNode, NodeKind
from perimetric.ingestion import Assignment, TenantSnapshot
from perimetric.metric import AccessClass

READ_ACTIONS = (
    "ReadBlob", "ReadConfiguration", "ReadFileShare", "ReadMetricData",
    "ReadQueueMessage", "ReadSecret", "ReadTableEntity", "ReadTopicMessage",
)
WRITE_ACTIONS = (
    "DeleteBlob", "SendQueueMessage", "WriteBlob", "WriteConfiguration",
    "WriteFileShare", "WriteSecret", "WriteTableEntity", "WriteTopicMessage",
)


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    management_groups: int = 3
    subscriptions: int = 4
    resource_groups_per_subscription: int = 2
    resources_per_resource_group: int = 3
    parts_per_resource: int = 1
    tight_spns: int = 0
    dispersed_spns: int = 0
    mixed_spns: int = 0
    write_fraction: float = 0.4

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or not -(2**63) <= self.seed < 2**64:
            raise InvalidConfig("seed must be a 64-bit integer")
        counts = {
            "management_groups": self.management_groups,
            "subscriptions": self.subscriptions,
            "resource_groups_per_subscription": self.resource_groups_per_subscription,
            "resources_per_resource_group": self.resources_per_resource_group,
            "parts_per_resource": self.parts_per_resource,
            "tight_spns": self.tight_spns,
            "dispersed_spns": self.dispersed_spns,
            "mixed_spns": self.mixed_spns,
        }
        for name, value in counts.items():
            if not isinstance(value, int) or value < 0:
                raise InvalidConfig(f"{name} must be a non-negative integer, got {value!r}")
        if not 0.0 <= self.write_fraction <= 1.0:
            raise InvalidConfig("write_fraction must be within [0, 1]")
        if self.subscriptions < 1:
            raise InvalidConfig("at least one subscription is required")
        needs_resources = self.tight_spns or self.dispersed_spns
        if needs_resources and (
            self.resource_groups_per_subscription < 1 or self.resources_per_resource_group < 1
        ):
            raise InvalidConfig("tight and dispersed archetypes require resources to scope to")
        if self.dispersed_spns and self.subscriptions < 2:
            raise InvalidConfig("dispersed archetype requires at least two subscriptions")


def generate_synthetic_tenant(config: GeneratorConfig) -> TenantSnapshot:
    """Build a snapshot that always passes parse_snapshot validation."""
    rng = random.Random(config.seed)
    nodes = [HierarchyNode(id="root", kind=NodeKind.TENANT_ROOT, parent=None)]

    mg_ids: list[str] = []
    mg_depth = {"root": 0}
    for i in range(config.management_groups):
        mg_id = f"mg-{i:03d}"
        eligible = ["root"] + [m for m in mg_ids if mg_depth[m] < MAX_MG_DEPTH]
        parent = rng.choice(eligible)
        nodes.append(HierarchyNode(id=mg_id, kind=NodeKind.MANAGEMENT_GROUP, parent=parent))
        mg_depth[mg_id] = mg_depth[parent] + 1
        mg_ids.append(mg_id)

    sub_ids: list[str] = []
    resources_by_sub: dict[str, list[str]] = {}
    parts_by_sub: dict[str, list[str]] = {}
    for i in range(config.subscriptions):
        sub_id = f"sub-{i:03d}"
        parent = rng.choice(["root"] + mg_ids)
        nodes.append(HierarchyNode(id=sub_id, kind=NodeKind.SUBSCRIPTION, parent=parent))
        sub_ids.append(sub_id)
        resources_by_sub[sub_id] = []
        parts_by_sub[sub_id] = []
        for j in range(config.resource_groups_per_subscription):
            rg_id = f"rg-{i:03d}-{j:02d}"
            nodes.append(HierarchyNode(id=rg_id, kind=NodeKind.RESOURCE_GROUP, parent=sub_id))
            for k in range(config.resources_per_resource_group):
                res_id = f"res-{i:03d}-{j:02d}-{k:02d}"
                nodes.append(HierarchyNode(id=res_id, kind=NodeKind.RESOURCE, parent=rg_id))
                resources_by_sub[sub_id].append(res_id)
                for p in range(config.parts_per_resource):
                    part_id = f"part-{i:03d}-{j:02d}-{k:02d}-{p:02d}"
                    nodes.append(HierarchyNode(id=part_id, kind=NodeKind.RESOURCE_PART, parent=res_id))
                    parts_by_sub[sub_id].append(part_id)

    all_node_ids = [n.id for n in nodes]
    spns: list[str] = []
    assignments: list[Assignment] = []

    def pick_access() -> AccessClass:
        return AccessClass.WRITE if rng.random() < config.write_fraction else AccessClass.READ

    def actions_for(access: AccessClass, count: int) -> list[str]:
        pool = WRITE_ACTIONS if access is AccessClass.WRITE else READ_ACTIONS
        return rng.sample(pool, count)

    for i in range(config.tight_spns):
        spn = f"spn-tight-{i:04d}"
        spns.append(spn)
        sub = rng.choice(sub_ids)
        scope_pool = resources_by_sub[sub] + parts_by_sub[sub]
        scope = rng.choice(scope_pool)
        access = pick_access()
        for action in actions_for(access, rng.randint(2, 6)):
            assignments.append(Assignment(spn, action, access, scope))

    for i in range(config.dispersed_spns):
        spn = f"spn-dispersed-{i:04d}"
        spns.append(spn)
        cluster_count = rng.randint(2, min(3, len(sub_ids)))
        for sub in rng.sample(sub_ids, cluster_count):
            scope = rng.choice(resources_by_sub[sub])
            access = pick_access()
            for action in actions_for(access, rng.randint(2, 3)):
                assignments.append(Assignment(spn, action, access, scope))

    for i in range(config.mixed_spns):
        spn = f"spn-mixed-{i:04d}"
        spns.append(spn)
        for _ in range(rng.randint(1, 5)):
            access = pick_access()
            pool = WRITE_ACTIONS if access is AccessClass.WRITE else READ_ACTIONS
            assignments.append(
                Assignment(spn, rng.choice(pool), access, rng.choice(all_node_ids))
            )

    return TenantSnapshot(
        version=1,
        hierarchy=tuple(sorted(nodes, key=lambda n: n.id)),
        alternates=(),
        groups=(),
        spns=tuple(sorted(spns)),
        assignments=tuple(
            sorted(
                set(assignments),
                key=lambda a: (a.principal, a.action, a.access.value, a.scope),
            )
        ),
    )
