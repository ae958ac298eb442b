"""Shared builders for unit and acceptance tests."""

from __future__ import annotations

import random

from perimetric.hierarchy import (
    MAX_MG_DEPTH,
    HierarchyNode,
    NodeKind,
    TenantTree,
    build_tree,
)
from perimetric.metric import AccessClass, DistanceModel, Grant

# One node per canonical level 0..10: root, mg1..mg6, sub, rg, res, part.
_CHAIN_KINDS = (
    NodeKind.TENANT_ROOT,
    *([NodeKind.MANAGEMENT_GROUP] * 6),
    NodeKind.SUBSCRIPTION,
    NodeKind.RESOURCE_GROUP,
    NodeKind.RESOURCE,
    NodeKind.RESOURCE_PART,
)


def chain_tree() -> tuple[TenantTree, dict[int, str]]:
    """A maximal-depth chain plus the level -> node-id map."""
    nodes = []
    level_scope = {}
    parent = None
    for level, kind in enumerate(_CHAIN_KINDS):
        node_id = f"lvl{level:02d}"
        nodes.append(HierarchyNode(node_id, kind, parent))
        level_scope[level] = node_id
        parent = node_id
    return build_tree(nodes), level_scope


def grants_at(scope: str, n: int, access: AccessClass = AccessClass.READ) -> list[Grant]:
    """n distinct same-access grants sharing one scope (an ultracycle)."""
    return [Grant(f"a{i:02d}", access, scope) for i in range(n)]


def random_tree(rng: random.Random, max_nodes: int = 40) -> TenantTree:
    """A random valid tenant tree with between 1 and max_nodes nodes."""
    nodes = [HierarchyNode("root", NodeKind.TENANT_ROOT, None)]
    mg_depth = {"root": 0}
    by_kind: dict[NodeKind, list[str]] = {kind: [] for kind in NodeKind}
    by_kind[NodeKind.TENANT_ROOT].append("root")

    total = rng.randint(1, max_nodes)
    for i in range(1, total):
        choices = [NodeKind.MANAGEMENT_GROUP, NodeKind.SUBSCRIPTION]
        if by_kind[NodeKind.SUBSCRIPTION]:
            choices.append(NodeKind.RESOURCE_GROUP)
        if by_kind[NodeKind.RESOURCE_GROUP]:
            choices.append(NodeKind.RESOURCE)
        if by_kind[NodeKind.RESOURCE]:
            choices.append(NodeKind.RESOURCE_PART)
        kind = rng.choice(choices)
        if kind is NodeKind.MANAGEMENT_GROUP:
            parents = ["root"] + [m for m in by_kind[kind] if mg_depth[m] < MAX_MG_DEPTH]
            parent = rng.choice(parents)
        elif kind is NodeKind.SUBSCRIPTION:
            parent = rng.choice(["root"] + by_kind[NodeKind.MANAGEMENT_GROUP])
        elif kind is NodeKind.RESOURCE_GROUP:
            parent = rng.choice(by_kind[NodeKind.SUBSCRIPTION])
        elif kind is NodeKind.RESOURCE:
            parent = rng.choice(by_kind[NodeKind.RESOURCE_GROUP])
        else:
            parent = rng.choice(by_kind[NodeKind.RESOURCE])
        node_id = f"n{i:03d}"
        nodes.append(HierarchyNode(node_id, kind, parent))
        by_kind[kind].append(node_id)
        if kind is NodeKind.MANAGEMENT_GROUP:
            mg_depth[node_id] = mg_depth[parent] + 1
    return build_tree(nodes)


def random_grants(rng: random.Random, tree: TenantTree, n: int) -> list[Grant]:
    """n distinct grants with random scopes and access classes."""
    scopes = sorted(tree.nodes)
    return [
        Grant(
            action=f"a{i:03d}",
            access=rng.choice((AccessClass.READ, AccessClass.WRITE)),
            scope=rng.choice(scopes),
        )
        for i in range(n)
    ]


def random_instance(
    rng: random.Random,
    n_lo: int = 3,
    n_hi: int = 8,
    max_nodes: int = 40,
) -> tuple[list[Grant], DistanceModel]:
    tree = random_tree(rng, max_nodes=max_nodes)
    grants = random_grants(rng, tree, rng.randint(n_lo, n_hi))
    return grants, DistanceModel(tree)
