"""
Scanning a catalog for isomorphic graphs
========================================

Bucket the catalog by a cheap graph fingerprint, split each bucket into
isomorphism classes with verified certificates, and check that groups
sharing a graph also share an order.
"""

import sys

from ncg.catalog import builtin_catalog
from ncg.harness import scan_pairs

max_order = int(sys.argv[1]) if len(sys.argv) > 1 else 32
groups = builtin_catalog(max_order)
report = scan_pairs(groups, jobs=1)

print(f"{len(groups)} groups up to order {max_order}")
for cls in report.classes:
    if len(cls) > 1:
        print("  same graph:", ", ".join(cls))

print(len(report.pairs), "pairs,", report.violations, "violations")
for pair in report.pairs[:5]:
    print("  ", pair["groups"], "orders", pair["orders"], "centers", pair["centers"])
