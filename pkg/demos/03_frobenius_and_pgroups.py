"""
Frobenius groups and p-group profiles
=====================================

Detect Frobenius kernels and complements, then look at the numerical
profile of a p-group that constrains which center orders a group with
the same graph can have.
"""

from ncg import frobenius_structure, nilpotency_class, p_group_profile
from ncg.catalog import resolve_group
from ncg.harness import check_frobenius, check_lemma_2_8, compatible_center_orders

for name in ["symmetric:3", "alternating:4", "affine:5", "C3^2:C2", "dihedral:5"]:
    G = resolve_group(name)
    fs = frobenius_structure(G)
    K, H = len(fs.kernel.members), len(fs.complement.members)
    # the complement order always divides |kernel| - 1
    print(f"{name:>14}  kernel={K:<3} complement={H:<3} (K-1)/H={(K - 1) // H}", check_frobenius(G).status)

# Nilpotent groups have a nontrivial center and are never Frobenius.
print("dihedral:4 Frobenius?", frobenius_structure(resolve_group("dihedral:4")) is not None)

# p-group profile: |P| = p^n, |Z| = p^r, and a_i = log_p |P : C(x_i)| over classes.
for name in ["dihedral:4", "heisenberg:3", "dihedral:8", "dicyclic:4"]:
    P = resolve_group(name)
    prof = p_group_profile(P)
    print(f"\n{name}: p={prof.p} n={prof.n} r={prof.r} a={list(prof.a_list)} class={nilpotency_class(P)}")
    print("  center orders allowed for a graph partner:", compatible_center_orders(prof))
    r = check_lemma_2_8(P)
    print("  a_i <= r check:", r.status, r.witness if r.status != "pass" else "")
