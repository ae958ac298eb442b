import json
from fractions import Fraction

import pytest

from perimetric.errors import (
    DuplicateId,
    GroupCycle,
    IllegalParentKind,
    InvalidConfig,
    SnapshotSyntaxError,
    UnknownPrincipal,
    UnknownReference,
    UnsupportedSchemaVersion,
)
from perimetric.generator import GeneratorConfig, generate_synthetic_tenant
from perimetric.ingestion import parse_snapshot, resolve_effective_grants, serialize_snapshot
from perimetric.metric import AccessClass, DistanceModel, Grant, effective_distance
from perimetric.perimeter import blast_radius, is_ultracycle


def _doc(**overrides):
    doc = {
        "version": 1,
        "hierarchy": [
            {"id": "root", "kind": "tenant_root"},
            {"id": "sub", "kind": "subscription", "parent": "root"},
        ],
        "groups": [],
        "spns": ["svc-1"],
        "assignments": [],
    }
    doc.update(overrides)
    return json.dumps(doc)


def test_parse_minimal_document():
    snapshot = parse_snapshot(_doc())
    assert snapshot.version == 1
    assert snapshot.spns == ("svc-1",)
    assert resolve_effective_grants("svc-1", snapshot) == frozenset()


def test_parse_accepts_bytes():
    assert parse_snapshot(_doc().encode()) == parse_snapshot(_doc())


def test_parse_malformed_json_reports_position():
    with pytest.raises(SnapshotSyntaxError) as err:
        parse_snapshot("{ nope")
    assert err.value.line == 1


def test_parse_unsupported_version():
    with pytest.raises(UnsupportedSchemaVersion):
        parse_snapshot(_doc(version=2))


def test_parse_unknown_scope_reference():
    with pytest.raises(UnknownReference):
        parse_snapshot(_doc(assignments=[
            {"principal": "svc-1", "action": "ReadBlob", "access": "read", "scope": "ghost"}
        ]))


def test_parse_unknown_principal_reference():
    with pytest.raises(UnknownReference):
        parse_snapshot(_doc(assignments=[
            {"principal": "ghost", "action": "ReadBlob", "access": "read", "scope": "sub"}
        ]))


def test_parse_bad_access_value():
    with pytest.raises(SnapshotSyntaxError):
        parse_snapshot(_doc(assignments=[
            {"principal": "svc-1", "action": "ReadBlob", "access": "admin", "scope": "sub"}
        ]))


def test_parse_duplicate_spn():
    with pytest.raises(DuplicateId):
        parse_snapshot(_doc(spns=["svc-1", "svc-1"]))


def test_parse_group_spn_collision():
    with pytest.raises(DuplicateId):
        parse_snapshot(_doc(groups=[{"id": "svc-1", "members": []}]))


def test_parse_group_cycle():
    with pytest.raises(GroupCycle):
        parse_snapshot(_doc(groups=[
            {"id": "g1", "members": ["g2"]},
            {"id": "g2", "members": ["g1"]},
        ]))


def test_parse_alternate_validation():
    with pytest.raises(UnknownReference):
        parse_snapshot(_doc(alternates=[{"name": "alt", "parents": {"ghost": "root"}}]))
    # re-parenting a subscription under itself is structurally illegal
    with pytest.raises(IllegalParentKind):
        parse_snapshot(_doc(alternates=[{"name": "alt", "parents": {"sub": "sub"}}]))


def test_round_trip_is_byte_identical():
    messy = json.dumps({
        "version": 1,
        "spns": ["svc-b", "svc-a"],
        "hierarchy": [
            {"id": "sub", "kind": "subscription", "parent": "root"},
            {"id": "root", "kind": "tenant_root"},
        ],
        "assignments": [
            {"principal": "svc-b", "action": "ReadBlob", "access": "read", "scope": "sub"},
            {"principal": "svc-a", "action": "ReadBlob", "access": "read", "scope": "sub"},
            {"principal": "svc-a", "action": "ReadBlob", "access": "read", "scope": "sub"},
        ],
    })
    snapshot = parse_snapshot(messy)
    text = serialize_snapshot(snapshot)
    assert parse_snapshot(text) == snapshot
    assert serialize_snapshot(parse_snapshot(text)) == text
    assert snapshot.spns == ("svc-a", "svc-b")
    assert len(snapshot.assignments) == 2  # exact duplicate collapsed


def test_resolve_direct_only():
    snapshot = parse_snapshot(_doc(assignments=[
        {"principal": "svc-1", "action": "ReadBlob", "access": "read", "scope": "sub"},
    ]))
    assert resolve_effective_grants("svc-1", snapshot) == frozenset(
        {Grant("ReadBlob", AccessClass.READ, "sub")}
    )


def test_resolve_nested_groups():
    snapshot = parse_snapshot(_doc(
        groups=[
            {"id": "outer", "members": ["inner"]},
            {"id": "inner", "members": ["svc-1"]},
        ],
        assignments=[
            {"principal": "outer", "action": "WriteBlob", "access": "write", "scope": "sub"},
        ],
    ))
    assert resolve_effective_grants("svc-1", snapshot) == frozenset(
        {Grant("WriteBlob", AccessClass.WRITE, "sub")}
    )


def test_resolve_deduplicates_direct_and_group_grant():
    snapshot = parse_snapshot(_doc(
        groups=[{"id": "g", "members": ["svc-1"]}],
        assignments=[
            {"principal": "g", "action": "ReadBlob", "access": "read", "scope": "sub"},
            {"principal": "svc-1", "action": "ReadBlob", "access": "read", "scope": "sub"},
        ],
    ))
    assert len(resolve_effective_grants("svc-1", snapshot)) == 1


def test_resolve_is_monotone_under_membership():
    base = _doc(
        groups=[{"id": "g", "members": []}],
        assignments=[
            {"principal": "g", "action": "WriteBlob", "access": "write", "scope": "sub"},
            {"principal": "svc-1", "action": "ReadBlob", "access": "read", "scope": "sub"},
        ],
    )
    joined = _doc(
        groups=[{"id": "g", "members": ["svc-1"]}],
        assignments=[
            {"principal": "g", "action": "WriteBlob", "access": "write", "scope": "sub"},
            {"principal": "svc-1", "action": "ReadBlob", "access": "read", "scope": "sub"},
        ],
    )
    before = resolve_effective_grants("svc-1", parse_snapshot(base))
    after = resolve_effective_grants("svc-1", parse_snapshot(joined))
    assert before <= after


def test_resolve_unknown_spn():
    with pytest.raises(UnknownPrincipal):
        resolve_effective_grants("ghost", parse_snapshot(_doc()))


def test_generator_determinism():
    config = GeneratorConfig(seed=0, tight_spns=5, dispersed_spns=5, mixed_spns=5)
    first = serialize_snapshot(generate_synthetic_tenant(config))
    second = serialize_snapshot(generate_synthetic_tenant(config))
    assert first == second
    different = serialize_snapshot(generate_synthetic_tenant(
        GeneratorConfig(seed=1, tight_spns=5, dispersed_spns=5, mixed_spns=5)
    ))
    assert different != first


def test_generator_output_parses_and_round_trips():
    snapshot = generate_synthetic_tenant(GeneratorConfig(seed=3, tight_spns=4, dispersed_spns=4, mixed_spns=4))
    text = serialize_snapshot(snapshot)
    assert parse_snapshot(text) == snapshot


def test_generator_tight_spns_are_ultracycles():
    snapshot = generate_synthetic_tenant(GeneratorConfig(seed=7, tight_spns=6))
    tree = snapshot.native_tree()
    for spn in snapshot.spns:
        grants = resolve_effective_grants(spn, snapshot)
        assert is_ultracycle(grants, effective_distance(grants, tree)) is not None


def test_generator_dispersed_spns_reach_across_subscriptions():
    snapshot = generate_synthetic_tenant(GeneratorConfig(seed=7, dispersed_spns=6))
    tree = snapshot.native_tree()
    for spn in snapshot.spns:
        grants = resolve_effective_grants(spn, snapshot)
        # cross-subscription LCA sits at level 6 or above: radius >= 1/2^13
        assert blast_radius(grants, DistanceModel(tree)) >= Fraction(1, 2**13)


def test_generator_invalid_configs():
    with pytest.raises(InvalidConfig):
        GeneratorConfig(tight_spns=-1)
    with pytest.raises(InvalidConfig):
        GeneratorConfig(subscriptions=1, dispersed_spns=3)
    with pytest.raises(InvalidConfig):
        GeneratorConfig(resource_groups_per_subscription=0, tight_spns=1)
    with pytest.raises(InvalidConfig):
        GeneratorConfig(write_fraction=1.5)
    with pytest.raises(InvalidConfig):
        GeneratorConfig(seed="nope")
