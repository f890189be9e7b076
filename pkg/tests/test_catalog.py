import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncg import errors
from ncg.catalog import (
    builtin_catalog,
    dedupe,
    group_invariants,
    read_catalog,
    resolve_group,
    write_catalog,
)
from ncg.group import from_cayley_table

import oracles
from conftest import catalog, group


def write_lines(path, records):
    path.write_text("".join(json.dumps(r) + "\n" for r in records))
    return path


def test_read_c2(tmp_path):
    p = write_lines(tmp_path / "c2.jsonl", [{"name": "C2", "kind": "table", "order": 2, "table": [[0, 1], [1, 0]]}])
    (G,) = read_catalog(p)
    assert G.order == 2 and G.name == "C2"


def test_read_perm_record(tmp_path):
    rec = {"name": "S3", "kind": "perm", "order": 6, "degree": 3, "gens": [[1, 0, 2], [1, 2, 0]]}
    (G,) = read_catalog(write_lines(tmp_path / "s3.jsonl", [rec]))
    assert G.order == 6 and not G.is_abelian()


def test_corrupted_table_names_record(tmp_path):
    recs = [
        {"name": "C2", "kind": "table", "order": 2, "table": [[0, 1], [1, 0]]},
        {"name": "broken", "kind": "table", "order": 2, "table": [[0, 1], [0, 1]]},
    ]
    with pytest.raises(errors.ValidationError) as info:
        read_catalog(write_lines(tmp_path / "bad.jsonl", recs))
    assert info.value.name == "broken"
    assert "NotLatinSquare" in str(info.value)


def test_wrong_declared_order(tmp_path):
    rec = {"name": "S3", "kind": "perm", "order": 5, "degree": 3, "gens": [[1, 0, 2], [1, 2, 0]]}
    with pytest.raises(errors.ValidationError):
        read_catalog(write_lines(tmp_path / "x.jsonl", [rec]))


@pytest.mark.parametrize(
    "line",
    [
        "{not json",
        "[1, 2]",
        json.dumps({"kind": "table", "order": 1, "table": [[0]]}),
        json.dumps({"name": "x", "kind": "table", "order": 1}),
        json.dumps({"name": "x", "kind": "perm", "order": 1}),
        json.dumps({"name": "x", "kind": "matrix", "order": 1}),
    ],
)
def test_parse_errors_report_line(tmp_path, line):
    good = json.dumps({"name": "C1", "kind": "table", "order": 1, "table": [[0]]})
    p = tmp_path / "c.jsonl"
    p.write_text(good + "\n\n" + line + "\n")
    with pytest.raises(errors.ParseError) as info:
        read_catalog(p)
    assert info.value.line == 3


def test_write_empty(tmp_path):
    p = tmp_path / "empty.jsonl"
    assert write_catalog([], p) == 0
    assert p.read_text() == ""
    assert read_catalog(p) == []


def test_round_trip_builtin(tmp_path):
    groups = builtin_catalog(32)
    p = tmp_path / "cat.jsonl"
    assert write_catalog(groups, p) == len(groups)
    back = read_catalog(p)
    assert [G.name for G in back] == sorted(G.name for G in groups)
    by_name = {G.name: G for G in groups}
    for G in back:
        assert np.array_equal(G.table, by_name[G.name].table)


def test_records_sorted_by_name(tmp_path):
    p = tmp_path / "c.jsonl"
    write_catalog([group("symmetric:3"), group("cyclic:2"), group("dihedral:4")], p)
    names = [json.loads(x)["name"] for x in p.read_text().splitlines()]
    assert names == sorted(names)


def test_invariants_round_trip(tmp_path):
    p = tmp_path / "inv.jsonl"
    write_catalog([group("dihedral:4"), group("cyclic:4")], p, with_invariants=True)
    recs = [json.loads(x) for x in p.read_text().splitlines()]
    d4 = next(r for r in recs if r["name"] == "dihedral:4")
    assert d4["invariants"]["z"] == 2 and d4["invariants"]["class_sizes"] == [1, 1, 2, 2, 2]
    assert d4["invariants"]["fingerprint"]["parts"] == [2, 2, 2]
    c4 = next(r for r in recs if r["name"] == "cyclic:4")
    assert c4["invariants"]["fingerprint"] is None
    assert len(read_catalog(p)) == 2


def test_tampered_invariants_rejected(tmp_path):
    p = tmp_path / "inv.jsonl"
    write_catalog([group("dihedral:4")], p, with_invariants=True)
    rec = json.loads(p.read_text())
    rec["invariants"]["z"] = 4
    p.write_text(json.dumps(rec) + "\n")
    with pytest.raises(errors.ValidationError) as info:
        read_catalog(p)
    assert info.value.name == "dihedral:4" and "z" in str(info.value)


def test_no_temp_files_left(tmp_path):
    write_catalog(builtin_catalog(12), tmp_path / "c.jsonl")
    assert [f.name for f in tmp_path.iterdir()] == ["c.jsonl"]


def test_invariants_match_oracle():
    G = group("alternating:4")
    inv = group_invariants(G)
    assert inv["order"] == 12 and inv["z"] == len(oracles.bf_center(G))
    assert inv["class_sizes"] == sorted(len(c) for c in oracles.bf_classes(G))
    assert inv["elem_orders"] == sorted(oracles.bf_element_order(G, x) for x in range(12))


# ----------------------------------------------------------------------
# dedupe


def test_dedupe_d4_q8_not_flagged():
    kept, flagged = dedupe([group("dihedral:4"), group("dicyclic:2")])
    assert len(kept) == 2 and flagged == []
    orders = [sorted(oracles.bf_element_order(G, x) for x in range(8)) for G in kept]
    assert orders[0].count(4) == 2 and orders[1].count(4) == 6


def test_dedupe_relabeled_copy_flagged():
    D = group("dihedral:4")
    perm = [0, 3, 5, 1, 7, 2, 6, 4]
    copy = from_cayley_table(oracles.relabel_table(oracles.rows(D), perm), "copy")
    kept, flagged = dedupe([D, copy])
    assert len(kept) == 2 and flagged == [("copy", "dihedral:4")]


def test_dedupe_disjoint_orders():
    _, flagged = dedupe([group("symmetric:3"), group("dihedral:4"), group("cyclic:5")])
    assert flagged == []


def test_dedupe_known_collision_is_only_flagged():
    # C4 x C2 style collisions: flagged pairs are kept, never removed
    kept, flagged = dedupe(list(catalog(64)))
    assert len(kept) == len(catalog(64))
    for a, b in flagged:
        A, B = group(a), group(b)
        assert A.order == B.order


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from(["dihedral:4", "dicyclic:2", "symmetric:3", "cyclic:8", "cyclic:2xcyclic:2xsymmetric:3", "dihedral:6"]), min_size=1, max_size=5, unique=True))
def test_dedupe_keeps_everything_and_is_symmetric(names):
    gs = [group(n) for n in names]
    kept, flagged = dedupe(gs)
    assert kept == gs
    _, back = dedupe(list(reversed(gs)))
    assert back == flagged


# ----------------------------------------------------------------------
# name resolution


def test_resolve_forms():
    assert resolve_group("dihedral:5").order == 10
    assert resolve_group("C7:C3").order == 21
    P = resolve_group("cyclic:3xdihedral:4")
    assert P.order == 24 and P.name == "cyclic:3xdihedral:4"
    with pytest.raises(errors.BadParameter):
        resolve_group("nope")
    with pytest.raises(errors.BadParameter):
        resolve_group("dihedral:x")


def test_resolve_prefers_catalog_entries():
    custom = from_cayley_table([[0, 1], [1, 0]], "dihedral:4")
    assert resolve_group("dihedral:4", [[custom]]) is custom


def test_builtin_catalog_filters():
    only = builtin_catalog(16, ["dihedral"])
    assert [G.name for G in only] == [f"dihedral:{n}" for n in sorted(range(3, 9), key=str)]
    assert all(G.order <= 60 for G in builtin_catalog(60))
    with pytest.raises(errors.BadParameter):
        builtin_catalog(16, ["bogus"])
