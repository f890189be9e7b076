"""Group catalogs: the built-in list, name resolution, JSONL persistence, dedupe.

A catalog file holds one JSON object per line::

    {"name": "Q8", "kind": "table", "order": 8, "table": [[0, 1, ...], ...]}
    {"name": "S3", "kind": "perm", "order": 6, "degree": 3, "gens": [[1, 0, 2], [1, 2, 0]]}

Indices are 0-based and a "table" record must have its identity at index 0.
An optional ``"invariants"`` object caches ``order``, ``z`` (center order),
``class_sizes``, ``elem_orders`` and the graph ``fingerprint``; when present
it is recomputed and compared on read.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from pathlib import Path

from .errors import BadParameter, NCGError, ParseError, ValidationError
from .graph import Fingerprint, fingerprint, noncommuting_graph
from .group import (
    FAMILIES,
    FiniteGroup,
    direct_product,
    from_cayley_table,
    from_permutation_generators,
    is_prime,
    standard_family,
)
from .structure import center, class_size_multiset, element_order_multiset


def _affine_perm_group(name, modulus, multiplier):
    shift = [(x + 1) % modulus for x in range(modulus)]
    scale = [(x * multiplier) % modulus for x in range(modulus)]
    return from_permutation_generators(modulus, [shift, scale], name)


def _generalized_dihedral_c3c3():
    pts = [(x, y) for x in range(3) for y in range(3)]
    idx = {p: i for i, p in enumerate(pts)}
    t1 = [idx[((x + 1) % 3, y)] for x, y in pts]
    t2 = [idx[(x, (y + 1) % 3)] for x, y in pts]
    flip = [idx[(-x % 3, -y % 3)] for x, y in pts]
    return from_permutation_generators(9, [t1, t2, flip], "C3^2:C2")


# groups that are not members of a one-parameter family
NAMED = {
    "C3^2:C2": _generalized_dihedral_c3c3,
    "C7:C3": lambda: _affine_perm_group("C7:C3", 7, 2),
    "C11:C5": lambda: _affine_perm_group("C11:C5", 11, 3),
    "C9:C3": lambda: _affine_perm_group("C9:C3", 9, 4),
    "M16": lambda: _affine_perm_group("M16", 8, 5),
}
NAMED_ORDERS = {"C3^2:C2": 18, "C7:C3": 21, "C11:C5": 55, "C9:C3": 27, "M16": 16}

PRODUCTS = [
    "cyclic:2xsymmetric:3",
    "cyclic:3xsymmetric:3",
    "cyclic:2xdihedral:4",
    "cyclic:2xdicyclic:2",
    "cyclic:3xdihedral:4",
    "cyclic:3xdicyclic:2",
    "cyclic:2xalternating:4",
    "cyclic:4xsymmetric:3",
    "cyclic:2xcyclic:2xsymmetric:3",
    "cyclic:4xdihedral:4",
    "cyclic:2xdihedral:8",
    "cyclic:5xdihedral:4",
    "cyclic:2xsymmetric:4",
    "cyclic:2xheisenberg:3",
    "symmetric:3xsymmetric:3",
    "cyclic:3xalternating:4",
    "cyclic:2xSL2:3",
]


def _family_params(family: str, max_order: int):
    if family == "cyclic":
        return [n for n in range(1, max_order + 1)]
    if family == "dihedral":
        return [n for n in range(3, max_order // 2 + 1)]
    if family == "dicyclic":
        return [n for n in range(2, max_order // 4 + 1)]
    if family == "semidihedral":
        return [m for m in (8, 16, 32, 64, 128, 256) if 2 * m <= max_order]
    if family == "symmetric":
        return [n for n, o in ((3, 6), (4, 24), (5, 120), (6, 720)) if o <= max_order]
    if family == "alternating":
        return [n for n, o in ((4, 12), (5, 60), (6, 360)) if o <= max_order]
    if family == "heisenberg":
        return [p for p in (3, 5, 7) if p**3 <= max_order]
    if family == "affine":
        return [p for p in range(3, max_order) if is_prime(p) and p * (p - 1) <= max_order]
    if family == "GL2":
        return [p for p, o in ((2, 6), (3, 48), (5, 480)) if o <= max_order]
    if family == "SL2":
        return [p for p, o in ((3, 24), (5, 120), (7, 336)) if o <= max_order]
    raise BadParameter(f"unknown family {family!r}")


def _family_order(name: str) -> int:
    fam, param = name.split(":")
    k = int(param)
    return {
        "cyclic": k, "dihedral": 2 * k, "dicyclic": 4 * k, "semidihedral": 2 * k,
        "symmetric": factorial(k), "alternating": factorial(k) // 2, "heisenberg": k**3,
        "affine": k * (k - 1), "GL2": (k * k - 1) * (k * k - k), "SL2": (k * k - 1) * k,
    }[fam]


def _prod(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


CATALOG_FAMILIES = tuple(FAMILIES) + ("named", "products")


def builtin_catalog(max_order: int = 64, families=None) -> list[FiniteGroup]:
    """Every built-in group of order at most *max_order*, sorted by name."""
    families = CATALOG_FAMILIES if families is None else tuple(families)
    groups = []
    for fam in families:
        if fam == "named":
            groups += [build() for name, build in NAMED.items() if NAMED_ORDERS[name] <= max_order]
        elif fam == "products":
            for name in PRODUCTS:
                factors = [_family_order(f) for f in name.split("x")]
                if _prod(factors) <= max_order:
                    groups.append(resolve_group(name))
        else:
            groups += [standard_family(fam, k) for k in _family_params(fam, max_order)]
    return sorted(groups, key=lambda G: G.name)


_FAMILY_RE = re.compile(r"^([A-Za-z0-9]+):(\d+)$")


def resolve_group(name: str, catalogs=()) -> FiniteGroup:
    """Build a group from ``family:param``, a named group, a product ``AxB``, or a catalog entry."""
    for cat in catalogs:
        for G in cat:
            if G.name == name:
                return G
    if name in NAMED:
        return NAMED[name]()
    m = _FAMILY_RE.match(name)
    if m and m.group(1) in FAMILIES:
        return standard_family(m.group(1), int(m.group(2)))
    if "x" in name:
        factors = [resolve_group(part, catalogs) for part in name.split("x")]
        G = factors[0]
        for F in factors[1:]:
            G = direct_product(G, F)
        return FiniteGroup(G.table, name)
    raise BadParameter(f"cannot resolve group {name!r}")


# ----------------------------------------------------------------------
# records


@dataclass
class CatalogRecord:
    name: str
    construction: dict
    invariants: dict | None = field(default=None)

    def to_json(self) -> dict:
        out = {"name": self.name, **self.construction}
        if self.invariants is not None:
            out["invariants"] = self.invariants
        return out


def group_invariants(G: FiniteGroup) -> dict:
    fp = None if G.is_abelian() else fingerprint(noncommuting_graph(G)).to_dict()
    return {
        "order": G.order,
        "z": center(G).order,
        "class_sizes": class_size_multiset(G),
        "elem_orders": element_order_multiset(G),
        "fingerprint": fp,
    }


def catalog_record(G: FiniteGroup, *, with_invariants: bool = False) -> CatalogRecord:
    construction = {"kind": "table", "order": G.order, "table": G.table.tolist()}
    return CatalogRecord(G.name, construction, group_invariants(G) if with_invariants else None)


def write_catalog(groups, path, *, with_invariants: bool = False) -> int:
    """Write *groups* sorted by name; the file is replaced atomically."""
    path = Path(path)
    records = [catalog_record(G, with_invariants=with_invariants) for G in sorted(groups, key=lambda G: G.name)]
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec.to_json(), separators=(",", ":")) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return len(records)


def _build_record(rec: dict, lineno: int) -> FiniteGroup:
    for key in ("name", "kind", "order"):
        if key not in rec:
            raise ParseError(lineno, f"missing field {key!r}")
    name = rec["name"]
    try:
        if rec["kind"] == "table":
            if "table" not in rec:
                raise ParseError(lineno, "table record without 'table'")
            G = from_cayley_table(rec["table"], name)
        elif rec["kind"] == "perm":
            if "degree" not in rec or "gens" not in rec:
                raise ParseError(lineno, "perm record needs 'degree' and 'gens'")
            G = from_permutation_generators(rec["degree"], rec["gens"], name)
        else:
            raise ParseError(lineno, f"unknown kind {rec['kind']!r}")
    except ParseError:
        raise
    except NCGError as exc:
        raise ValidationError(name, f"{type(exc).__name__}: {exc}") from exc
    if G.order != rec["order"]:
        raise ValidationError(name, f"declared order {rec['order']} but built order {G.order}")
    inv = rec.get("invariants")
    if inv is not None:
        fresh = group_invariants(G)
        for key, value in inv.items():
            if key == "fingerprint" and value is not None:
                value = Fingerprint.from_dict(value).to_dict()
            if key not in fresh or fresh[key] != value:
                raise ValidationError(name, f"cached invariant {key!r} does not match recomputation")
    return G


def read_catalog(path) -> list[FiniteGroup]:
    groups = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(lineno, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(rec, dict):
                raise ParseError(lineno, "record is not a JSON object")
            groups.append(_build_record(rec, lineno))
    return groups


def dedupe(groups):
    """Flag pairs whose invariant tuples coincide; nothing is removed."""

    def key(G):
        fp = None if G.is_abelian() else fingerprint(noncommuting_graph(G))
        return (
            G.order,
            center(G).order,
            tuple(class_size_multiset(G)),
            tuple(element_order_multiset(G)),
            fp,
        )

    keys = [key(G) for G in groups]
    flagged = [
        tuple(sorted((groups[i].name, groups[j].name)))
        for i, j in combinations(range(len(groups)), 2)
        if keys[i] == keys[j]
    ]
    return list(groups), sorted(flagged)
