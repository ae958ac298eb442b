"""Tenant snapshot documents: parsing, validation, serialization, expansion.

A snapshot is a JSON document with these top-level keys:

    version      int, currently 1
    hierarchy    list of {"id", "kind", "parent"?}; kind is one of
                 tenant_root, management_group, subscription,
                 resource_group, resource, resource_part
    alternates   list of {"name", "parents": {node id: new parent id}};
                 each map re-parents a subset of nodes, everything else
                 keeps its native parent
    groups       list of {"id", "members": [spn or group ids]}
    spns         list of service principal ids
    assignments  list of {"principal", "action", "access", "scope"};
                 access is "read" or "write", principal is an SPN or a
                 group, scope is a hierarchy node

All ids are case-sensitive opaque strings. Parsing validates every
cross-reference, rejects duplicate ids and group cycles, and normalizes
ordering, so parse -> serialize -> parse round-trips byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from perimetric.errors import (
    DuplicateId,
    GroupCycle,
    SnapshotSyntaxError,
    UnknownPrincipal,
    UnknownReference,
    UnsupportedSchemaVersion,
)
from perimetric.hierarchy import HierarchyNode, NodeKind, TenantTree, build_tree
from perimetric.metric import AccessClass, Grant, HierarchyFamily

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Assignment:
    principal: str
    action: str
    access: AccessClass
    scope: str


@dataclass(frozen=True)
class Group:
    id: str
    members: tuple[str, ...]


@dataclass(frozen=True)
class AlternateHierarchy:
    """Named re-parenting overlay; pairs are (node id, new parent id)."""

    name: str
    parents: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class TenantSnapshot:
    version: int
    hierarchy: tuple[HierarchyNode, ...]
    alternates: tuple[AlternateHierarchy, ...]
    groups: tuple[Group, ...]
    spns: tuple[str, ...]
    assignments: tuple[Assignment, ...]

    def native_tree(self) -> TenantTree:
        return build_tree(self.hierarchy)

    def family(self) -> HierarchyFamily:
        """Native tree plus every alternate, each fully validated."""
        native = self.native_tree()
        alternates = []
        for alt in self.alternates:
            overrides = dict(alt.parents)
            nodes = [
                HierarchyNode(n.id, n.kind, overrides.get(n.id, n.parent))
                for n in self.hierarchy
            ]
            alternates.append((alt.name, build_tree(nodes)))
        return HierarchyFamily(native=native, alternates=tuple(alternates))


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise SnapshotSyntaxError(message)


def _string_field(entry: dict, key: str, where: str) -> str:
    value = entry.get(key)
    _expect(isinstance(value, str) and value != "", f"{where}: {key!r} must be a non-empty string")
    return value


def parse_snapshot(data: str | bytes) -> TenantSnapshot:
    """Parse and validate a snapshot document.

    Raises SnapshotSyntaxError (with position) for malformed documents,
    UnsupportedSchemaVersion, DuplicateId, UnknownReference or GroupCycle
    for documents that are well-formed but inconsistent, and the
    hierarchy errors for invalid trees.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SnapshotSyntaxError(exc.msg, exc.lineno, exc.colno) from None

    _expect(isinstance(doc, dict), "top level must be an object")
    version = doc.get("version")
    _expect(
        isinstance(version, int) and not isinstance(version, bool),
        "'version' must be an integer",
    )
    if version != SCHEMA_VERSION:
        raise UnsupportedSchemaVersion(f"schema version {version} (supported: {SCHEMA_VERSION})")

    raw_hierarchy = doc.get("hierarchy")
    _expect(isinstance(raw_hierarchy, list) and raw_hierarchy, "'hierarchy' must be a non-empty list")
    nodes = []
    for entry in raw_hierarchy:
        _expect(isinstance(entry, dict), "hierarchy entries must be objects")
        node_id = _string_field(entry, "id", "hierarchy")
        kind_name = _string_field(entry, "kind", f"node {node_id!r}")
        try:
            kind = NodeKind(kind_name)
        except ValueError:
            raise SnapshotSyntaxError(f"node {node_id!r}: unknown kind {kind_name!r}") from None
        parent = entry.get("parent")
        _expect(
            parent is None or (isinstance(parent, str) and parent != ""),
            f"node {node_id!r}: 'parent' must be a non-empty string when present",
        )
        nodes.append(HierarchyNode(id=node_id, kind=kind, parent=parent))
    tree = build_tree(nodes)  # validates duplicates, kinds, cycles, MG depth
    node_ids = set(tree.nodes)

    spns = []
    seen_principals: set[str] = set()
    for spn in doc.get("spns", []):
        _expect(isinstance(spn, str) and spn != "", "'spns' entries must be non-empty strings")
        if spn in seen_principals:
            raise DuplicateId(f"spn {spn!r} declared twice")
        seen_principals.add(spn)
        spns.append(spn)

    groups = []
    group_ids: set[str] = set()
    for entry in doc.get("groups", []):
        _expect(isinstance(entry, dict), "group entries must be objects")
        group_id = _string_field(entry, "id", "groups")
        if group_id in seen_principals:
            raise DuplicateId(f"principal id {group_id!r} declared twice")
        seen_principals.add(group_id)
        group_ids.add(group_id)
        members = entry.get("members", [])
        _expect(isinstance(members, list), f"group {group_id!r}: 'members' must be a list")
        for member in members:
            _expect(
                isinstance(member, str) and member != "",
                f"group {group_id!r}: members must be non-empty strings",
            )
        groups.append(Group(id=group_id, members=tuple(sorted(set(members)))))

    for group in groups:
        for member in group.members:
            if member not in seen_principals:
                raise UnknownReference(f"group {group.id!r} member {member!r} is not declared")
    _check_groups_acyclic(groups)

    assignments = []
    for entry in doc.get("assignments", []):
        _expect(isinstance(entry, dict), "assignment entries must be objects")
        principal = _string_field(entry, "principal", "assignments")
        action = _string_field(entry, "action", f"assignment for {principal!r}")
        access_name = _string_field(entry, "access", f"assignment for {principal!r}")
        try:
            access = AccessClass(access_name)
        except ValueError:
            raise SnapshotSyntaxError(
                f"assignment for {principal!r}: access must be 'read' or 'write', got {access_name!r}"
            ) from None
        scope = _string_field(entry, "scope", f"assignment for {principal!r}")
        if principal not in seen_principals:
            raise UnknownReference(f"assignment principal {principal!r} is not declared")
        if scope not in node_ids:
            raise UnknownReference(f"assignment scope {scope!r} is not in the hierarchy")
        assignments.append(Assignment(principal=principal, action=action, access=access, scope=scope))

    alternates = []
    alternate_names: set[str] = set()
    for entry in doc.get("alternates", []):
        _expect(isinstance(entry, dict), "alternate entries must be objects")
        name = _string_field(entry, "name", "alternates")
        if name in alternate_names:
            raise DuplicateId(f"alternate hierarchy {name!r} declared twice")
        alternate_names.add(name)
        parents = entry.get("parents", {})
        _expect(isinstance(parents, dict), f"alternate {name!r}: 'parents' must be an object")
        for child, parent in parents.items():
            _expect(
                isinstance(parent, str) and parent != "",
                f"alternate {name!r}: parent of {child!r} must be a node id",
            )
            if child not in node_ids:
                raise UnknownReference(f"alternate {name!r} re-parents unknown node {child!r}")
            if parent not in node_ids:
                raise UnknownReference(f"alternate {name!r} names unknown parent {parent!r}")
        alternates.append(
            AlternateHierarchy(name=name, parents=tuple(sorted(parents.items())))
        )

    snapshot = TenantSnapshot(
        version=version,
        hierarchy=tuple(sorted(nodes, key=lambda n: n.id)),
        alternates=tuple(sorted(alternates, key=lambda a: a.name)),
        groups=tuple(sorted(groups, key=lambda g: g.id)),
        spns=tuple(sorted(spns)),
        assignments=tuple(
            sorted(
                set(assignments),
                key=lambda a: (a.principal, a.action, a.access.value, a.scope),
            )
        ),
    )
    snapshot.family()  # alternates must each build into a valid tree
    return snapshot


def serialize_snapshot(snapshot: TenantSnapshot) -> str:
    """Canonical JSON text; parse(serialize(s)) == s, byte for byte."""
    doc = {
        "version": snapshot.version,
        "hierarchy": [
            {"id": n.id, "kind": n.kind.value, **({"parent": n.parent} if n.parent else {})}
            for n in snapshot.hierarchy
        ],
        "alternates": [
            {"name": a.name, "parents": dict(a.parents)} for a in snapshot.alternates
        ],
        "groups": [{"id": g.id, "members": list(g.members)} for g in snapshot.groups],
        "spns": list(snapshot.spns),
        "assignments": [
            {
                "principal": a.principal,
                "action": a.action,
                "access": a.access.value,
                "scope": a.scope,
            }
            for a in snapshot.assignments
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _check_groups_acyclic(groups: Iterable[Group]) -> None:
    members_of = {g.id: [m for m in g.members] for g in groups}
    state: dict[str, int] = {}  # 1 in progress, 2 done

    def visit(gid: str, trail: list[str]) -> None:
        mark = state.get(gid)
        if mark == 2:
            return
        if mark == 1:
            cycle = trail[trail.index(gid):] + [gid]
            raise GroupCycle("group membership cycle: " + " -> ".join(cycle))
        state[gid] = 1
        trail.append(gid)
        for member in members_of.get(gid, ()):
            if member in members_of:
                visit(member, trail)
        trail.pop()
        state[gid] = 2

    for gid in sorted(members_of):
        visit(gid, [])


def resolve_effective_grants(spn: str, snapshot: TenantSnapshot) -> frozenset[Grant]:
    """Union of direct grants and grants of every group containing the SPN,
    through arbitrarily nested membership, deduplicated on (action, access, scope)."""
    if spn not in snapshot.spns:
        raise UnknownPrincipal(f"spn {spn!r} is not declared in the snapshot")
    _check_groups_acyclic(snapshot.groups)

    containers: dict[str, set[str]] = {}
    for group in snapshot.groups:
        for member in group.members:
            containers.setdefault(member, set()).add(group.id)

    principals = {spn}
    frontier = [spn]
    while frontier:
        current = frontier.pop()
        for holder in containers.get(current, ()):
            if holder not in principals:
                principals.add(holder)
                frontier.append(holder)

    return frozenset(
        Grant(action=a.action, access=a.access, scope=a.scope)
        for a in snapshot.assignments
        if a.principal in principals
    )
