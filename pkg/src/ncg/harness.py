"""Executable checks of the non-commuting-graph results on concrete groups.

Each ``check_*`` function returns a :class:`CheckResult` whose status is
``pass``, ``fail`` or ``not_applicable``.  ``not_applicable`` means the
hypotheses of the statement do not hold for the given group; it is never a
silent pass.  Witnesses carry plain integers and index lists so that every
verdict can be recomputed with the public structure and graph functions.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

import numpy as np

from .errors import (
    AbelianGroup,
    InvalidIso,
    NCGError,
    NotACGroup,
    NotSolvable,
    OmegaMismatch,
    SizeLimitExceeded,
    Unclassifiable,
)
from .graph import (
    CLIQUE_CAP,
    ISO_CAP,
    IsoMap,
    are_isomorphic,
    fingerprint,
    max_clique,
    noncommuting_graph,
    verify_iso,
)
from .group import FiniteGroup, Subgroup, join, prime_power, subgroup_closure
from .structure import (
    ac_partition,
    center,
    centralizer_orders,
    class_size_multiset,
    commutator_with_element,
    conjugate_subgroup,
    frobenius_structure,
    is_frobenius_kernel,
    is_normal,
    is_solvable,
    nilpotency_class,
    normal_subgroups,
    p_group_profile,
    preimage,
    quotient,
    set_product,
    sylow_like_parts,
)

PASS, FAIL, NA = "pass", "fail", "not_applicable"


@dataclass
class CheckResult:
    check_id: str
    subjects: tuple[str, ...]
    status: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "check": self.check_id,
            "subjects": list(self.subjects),
            "status": self.status,
            "witness": _plain(self.witness),
        }


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    return obj


def _divides(d: int, m: int) -> bool:
    return m % d == 0


# ----------------------------------------------------------------------
# graph isomorphism: centralizer divisibility and center orders


def check_lemma_2_1(G: FiniteGroup, H: FiniteGroup, iso: IsoMap) -> CheckResult:
    """Centralizer divisibility along a graph isomorphism, and the order criterion."""
    gG, gH = noncommuting_graph(G), noncommuting_graph(H)
    if not verify_iso(gG, gH, iso.forward):
        raise InvalidIso(f"certificate {G.name} -> {H.name} failed verification")
    subjects = (G.name, H.name)
    zG, zH = center(G).order, center(H).order
    cG, cH = centralizer_orders(G), centralizer_orders(H)
    phi = iso.element_map()
    for g, h in phi.items():
        class_size = G.order // int(cG[g])
        rhs = (class_size - 1) * (zH - zG)
        if not _divides(int(cH[h]), rhs):
            return CheckResult("lemma2.1", subjects, FAIL, {"part": 1, "g": g, "h": h, "C_H(h)": cH[h], "rhs": rhs})
    # part 2
    big = [g for g in phi if int(cG[g]) ** 2 >= G.order * zG]
    applies = zG >= zH and bool(big)
    witness = {"z_G": zG, "z_H": zH, "order_G": G.order, "order_H": H.order, "part2_applies": applies}
    if applies:
        witness["part2_element"] = big[0]
        if G.order != H.order:
            return CheckResult("lemma2.1", subjects, FAIL, {"part": 2, **witness})
    return CheckResult("lemma2.1", subjects, PASS, witness)


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def compatible_center_orders(profile) -> list[int]:
    """Possible center orders of a group whose graph matches that of the p-group."""
    p, r, u = profile.p, profile.r, profile.u
    return divisors(p**r * (p**u - 1))


def check_lemma_2_4(P: FiniteGroup, H: FiniteGroup | None = None) -> CheckResult:
    subjects = (P.name,) if H is None else (P.name, H.name)
    if P.is_abelian() or prime_power(P.order) is None:
        return CheckResult("lemma2.4", subjects, NA, {"reason": "not a non-abelian p-group"})
    prof = p_group_profile(P)
    allowed = compatible_center_orders(prof)
    witness = {"p": prof.p, "n": prof.n, "r": prof.r, "a": list(prof.a_list), "u": prof.u, "allowed": allowed}
    # P is its own graph partner
    if center(P).order not in allowed:
        return CheckResult("lemma2.4", subjects, FAIL, {**witness, "z": center(P).order})
    if H is not None:
        witness["z_partner"] = center(H).order
        if center(H).order not in allowed:
            return CheckResult("lemma2.4", subjects, FAIL, witness)
    return CheckResult("lemma2.4", subjects, PASS, witness)


# ----------------------------------------------------------------------
# clique congruence, commutator products, normal centralizers, class exponents


def check_lemma_2_5(G: FiniteGroup, *, clique_cap: int = CLIQUE_CAP) -> CheckResult:
    subjects = (G.name,)
    if G.is_abelian():
        return CheckResult("lemma2.5", subjects, NA, {"reason": "abelian"})
    if not ac_partition(G).is_ac:
        return CheckResult("lemma2.5", subjects, NA, {"reason": "not AC"})
    index = G.order // center(G).order
    pk = prime_power(index)
    if pk is None:
        return CheckResult("lemma2.5", subjects, NA, {"reason": "G/Z not of prime-power order", "index": index})
    p = pk[0]
    omega = ac_partition(G).omega
    witness = {"p": p, "omega": omega, "omega_mod_p": omega % p}
    graph = noncommuting_graph(G)
    if graph.n <= clique_cap:
        witness["max_clique"] = max_clique(graph, cap=clique_cap)
        if witness["max_clique"] != omega:
            return CheckResult("lemma2.5", subjects, FAIL, witness)
    else:
        witness["max_clique"] = None
    status = PASS if omega % p == 1 else FAIL
    return CheckResult("lemma2.5", subjects, status, witness)


def check_lemma_2_6(G: FiniteGroup, C: Subgroup, a: int) -> CheckResult:
    """``C C^a = C [C, a]`` whenever ``C C^a`` is a subgroup (permutable case)."""
    subjects = (G.name,)
    Ca = conjugate_subgroup(C, a)
    left = set_product(G, C.members, Ca.members)
    if left != set_product(G, Ca.members, C.members):
        return CheckResult("lemma2.6", subjects, NA, {"C": list(C.members), "a": a})
    right = set_product(G, C.members, commutator_with_element(C, a).members)
    status = PASS if left == right else FAIL
    return CheckResult("lemma2.6", subjects, status, {"C": list(C.members), "a": a, "size": len(left)})


def subgroups_by_generators(G: FiniteGroup, max_gens: int = 2) -> list[Subgroup]:
    """Distinct subgroups generated by at most *max_gens* (1 or 2) elements."""
    cyc = {}
    for x in range(G.order):
        S = subgroup_closure(G, [x])
        cyc.setdefault(S.members, S)
    subs = dict(cyc)
    if max_gens >= 2:
        for x in range(G.order):
            for y in range(x + 1, G.order):
                S = subgroup_closure(G, [x, y])
                subs.setdefault(S.members, S)
    return sorted(subs.values(), key=lambda S: (S.order, S.members))


def lemma_2_6_sweep(G: FiniteGroup, *, max_gens: int = 2) -> CheckResult:
    subs = subgroups_by_generators(G, max_gens)
    applicable = 0
    for C in subs:
        for a in range(G.order):
            res = check_lemma_2_6(G, C, a)
            if res.status == FAIL:
                return res
            applicable += res.status == PASS
    return CheckResult(
        "lemma2.6",
        (G.name,),
        PASS,
        {"subgroups": len(subs), "pairs": len(subs) * G.order, "permutable_pairs": applicable},
    )


def check_prop_2_7(G: FiniteGroup) -> CheckResult:
    subjects = (G.name,)
    if G.is_abelian():
        return CheckResult("prop2.7", subjects, NA, {"reason": "abelian"})
    cls = nilpotency_class(G)
    if cls is None or cls <= 2 or not ac_partition(G).is_ac:
        return CheckResult("prop2.7", subjects, NA, {"reason": "not a nilpotent AC-group of class > 2", "class": cls})
    comps = ac_partition(G).components
    normal = [S for S in comps if is_normal(G, S)]
    largest = max(S.order for S in comps)
    witness = {
        "class": cls,
        "normal_centralizers": [list(S.members) for S in normal],
        "normal_orders": [S.order for S in normal],
        "max_order": largest,
    }
    ok = len(normal) == 1 and normal[0].order >= largest
    return CheckResult("prop2.7", subjects, PASS if ok else FAIL, witness)


def check_lemma_2_8(P: FiniteGroup) -> CheckResult:
    subjects = (P.name,)
    if P.is_abelian() or prime_power(P.order) is None:
        return CheckResult("lemma2.8", subjects, NA, {"reason": "not a non-abelian p-group"})
    prof = p_group_profile(P)
    cls = nilpotency_class(P)
    witness = {"class": cls, "a": list(prof.a_list), "r": prof.r}
    if cls != 2:
        # record whether the class-2 hypothesis is needed for this group
        witness["exceeds"] = max(prof.a_list) > prof.r
        return CheckResult("lemma2.8", subjects, NA, witness)
    ok = all(a <= prof.r for a in prof.a_list)
    return CheckResult("lemma2.8", subjects, PASS if ok else FAIL, witness)


# ----------------------------------------------------------------------
# Frobenius groups


def _frobenius_violation(G, F: Subgroup, K: Subgroup):
    if not is_normal(G, F):
        return "kernel not normal"
    if (F.mask & K.mask).sum() != 1:
        return "kernel and complement intersect non-trivially"
    if F.order * K.order != G.order:
        return "orders do not multiply to |G|"
    if not is_frobenius_kernel(G, F):
        return "centralizer of a kernel element leaves the kernel"
    if (F.order - 1) % K.order:
        return "|K| does not divide |F| - 1"
    return None


def check_frobenius(G: FiniteGroup) -> CheckResult:
    subjects = (G.name,)
    fs = frobenius_structure(G)
    if fs is None:
        return CheckResult("frobenius", subjects, NA, {"reason": "no Frobenius kernel"})
    F, K = fs.kernel, fs.complement
    witness = {"kernel": list(F.members), "complement": list(K.members), "kernel_order": F.order, "complement_order": K.order}
    problem = _frobenius_violation(G, F, K)
    if problem:
        return CheckResult("frobenius", subjects, FAIL, {**witness, "problem": problem})
    sub_orders = []
    cm = G.commuting_matrix()
    for F1 in normal_subgroups(G):
        if F1.order == 1 or not F1 <= F:
            continue
        H1 = join(G, K, F1)
        sub = {"F1": list(F1.members), "order": H1.order}
        if H1.order != K.order * F1.order:
            return CheckResult("frobenius", subjects, FAIL, {**witness, "sub": sub, "problem": "|<K, F1>| != |K||F1|"})
        # centralizers taken inside H1
        rows = cm[np.asarray(F1.members[1:])] & H1.mask
        if (rows & ~F1.mask).any() or (F1.mask & K.mask).sum() != 1 or (F1.order - 1) % K.order:
            return CheckResult("frobenius", subjects, FAIL, {**witness, "sub": sub, "problem": "sub-Frobenius fails"})
        sub_orders.append(F1.order)
    witness["sub_kernel_orders"] = sub_orders
    return CheckResult("frobenius", subjects, PASS, witness)


# ----------------------------------------------------------------------
# AC classification


@dataclass(frozen=True)
class H5Profile:
    q: int
    kappa: int
    nu_list: tuple[int, ...]
    omega_exp: int
    a: int
    b: int


@dataclass
class ACClass:
    type_tag: str
    parameters: dict
    predicted_omega: int
    observed_omega: int
    h5: H5Profile | None = None


def _valuation(n: int, q: int) -> int:
    k = 0
    while n % q == 0:
        n //= q
        k += 1
    return k


def _group_center_of_subgroup(G, F: Subgroup) -> Subgroup:
    m = np.asarray(F.members)
    mask = np.zeros(G.order, bool)
    mask[m[G.commuting_matrix()[np.ix_(m, m)].all(axis=1)]] = True
    return Subgroup.from_mask(G, mask)


def _h5_profile(G, F: Subgroup, K: Subgroup, q: int) -> H5Profile:
    Z = center(G)
    b = Z.order // q ** _valuation(Z.order, q)
    kappa = _valuation(F.order, q)
    omega_exp = _valuation(Z.order, q)
    cm = G.commuting_matrix()
    nus = set()
    for f in F.members:
        if f in Z:
            continue
        cf = int((cm[f] & F.mask).sum())
        nus.add(_valuation(cf, q))
    a = K.order // q**omega_exp
    prof = H5Profile(q, kappa, tuple(sorted(nus)), omega_exp, a, b)
    assert all(1 <= omega_exp < nu < kappa for nu in prof.nu_list)
    assert a % b == 0 and gcd(a, q) == 1 and gcd(b, q) == 1
    assert G.order == a * q**kappa
    return prof


def classify_ac(G: FiniteGroup, *, clique_cap: int = CLIQUE_CAP) -> ACClass:
    """Assign one of the five solvable AC types and cross-check its clique-number formula."""
    if G.is_abelian():
        raise AbelianGroup(f"{G.name} is abelian")
    if not ac_partition(G).is_ac:
        raise NotACGroup(f"{G.name} is not an AC-group")
    if not is_solvable(G):
        raise NotSolvable(f"{G.name} is not solvable")
    Z = center(G)
    observed = max_clique(noncommuting_graph(G), cap=clique_cap)

    def done(tag, params, predicted, h5=None):
        if predicted != observed:
            raise OmegaMismatch(tag, predicted, observed)
        return ACClass(tag, params, predicted, observed, h5)

    # H4: A x Q with A abelian and Q of prime-power order
    if nilpotency_class(G) is not None:
        parts = sylow_like_parts(G)
        nonab = [p for p, S in parts.items() if not S.is_abelian()]
        if len(nonab) == 1:
            p = nonab[0]
            Q = parts[p]
            A = subgroup_closure(G, [x for q, S in parts.items() if q != p for x in S.members])
            omega_q = ac_partition(Q.as_group(f"Q({G.name})")).omega
            return done("H4", {"p": p, "A_order": A.order, "Q_order": Q.order, "Q": list(Q.members)}, omega_q)
        raise Unclassifiable(f"{G.name}: nilpotent with {len(nonab)} non-abelian Sylow subgroups")

    # H1: abelian normal subgroup of prime index
    for N in normal_subgroups(G):
        index = G.order // N.order
        if prime_power(index) == (index, 1) and N.is_abelian():
            return done("H1", {"N": list(N.members), "N_order": N.order, "index": index}, N.order // Z.order + 1)

    Q, proj = quotient(G, Z, f"{G.name}/Z")
    # H3: G/Z isomorphic to S4, recognised by order and class sizes
    if Q.order == 24 and class_size_multiset(Q) == [1, 3, 6, 6, 8]:
        return done("H3", {"quotient_order": 24}, 13)

    fs = frobenius_structure(Q)
    if fs is not None:
        F = preimage(G, proj, fs.kernel)
        K = preimage(G, proj, fs.complement)
        params = {"F": list(F.members), "K": list(K.members), "F_order": F.order, "K_order": K.order}
        if F.is_abelian() and K.is_abelian():
            return done("H2", params, F.order // Z.order + 1)
        qk = prime_power(F.order // Z.order)
        if not F.is_abelian() and qk is not None and _group_center_of_subgroup(G, F) == Z:
            omega_f = ac_partition(F.as_group(f"F({G.name})")).omega
            prof = _h5_profile(G, F, K, qk[0])
            # class-equation inequality kappa - nu <= omega, reported only
            params["kappa_minus_nu_le_omega"] = {nu: prof.kappa - nu <= prof.omega_exp for nu in prof.nu_list}
            params["K_abelian"] = K.is_abelian()
            return done("H5", params, F.order // Z.order + omega_f, prof)
    raise Unclassifiable(f"{G.name} matches none of H1..H5")


def check_classify(G: FiniteGroup, *, clique_cap: int = CLIQUE_CAP) -> CheckResult:
    subjects = (G.name,)
    try:
        cls = classify_ac(G, clique_cap=clique_cap)
    except (AbelianGroup, NotACGroup, NotSolvable) as exc:
        return CheckResult("classify", subjects, NA, {"reason": type(exc).__name__})
    except (Unclassifiable, OmegaMismatch) as exc:
        return CheckResult("classify", subjects, FAIL, {"error": type(exc).__name__, "detail": str(exc)})
    except SizeLimitExceeded as exc:
        return CheckResult("classify", subjects, NA, {"reason": "clique cap", "detail": str(exc)})
    witness = {"type": cls.type_tag, "predicted_omega": cls.predicted_omega, "max_clique": cls.observed_omega}
    witness.update({k: v for k, v in cls.parameters.items() if not isinstance(v, list)})
    if cls.h5 is not None:
        witness["h5"] = {
            "q": cls.h5.q, "kappa": cls.h5.kappa, "nu": list(cls.h5.nu_list),
            "omega": cls.h5.omega_exp, "a": cls.h5.a, "b": cls.h5.b,
        }
    return CheckResult("classify", subjects, PASS, witness)


# ----------------------------------------------------------------------
# pair scan


@dataclass
class PairReport:
    classes: list[list[str]]
    pairs: list[dict]
    skipped: list[dict]
    rows: list[CheckResult]

    @property
    def violations(self) -> int:
        return sum(1 for r in self.rows if r.status == FAIL)


def _is_pgroup(G) -> bool:
    return prime_power(G.order) is not None


def _fp_key(G):
    return fingerprint(noncommuting_graph(G))


def _scan_bucket(groups, iso_cap, pgroup_only):
    """Split one fingerprint bucket into isomorphism classes and check every pair."""
    classes = []  # list of (rep, [(member, iso rep->member)])
    skipped = []
    for G in groups:
        g = noncommuting_graph(G)
        for rep, members in classes:
            try:
                iso = are_isomorphic(noncommuting_graph(rep), g, cap=iso_cap)
            except SizeLimitExceeded as exc:
                skipped.append({"pair": [rep.name, G.name], "reason": str(exc)})
                continue
            if iso is not None:
                members.append((G, iso))
                break
        else:
            ident = tuple(range(g.n))
            classes.append((G, [(G, IsoMap(g, g, ident))]))
    pairs, rows = [], []
    for rep, members in classes:
        for (G, iso_g), (H, iso_h) in combinations(members, 2):
            # G -> rep -> H, composed and re-verified
            phi = iso_g.inverse().then(iso_h)
            if not verify_iso(phi.g1, phi.g2, phi.forward):
                raise InvalidIso(f"composed certificate {G.name} -> {H.name} failed")
            has_p = _is_pgroup(G) or _is_pgroup(H)
            if pgroup_only and not has_p:
                continue
            pair = {
                "groups": [G.name, H.name],
                "orders": [G.order, H.order],
                "centers": [center(G).order, center(H).order],
                "p_group_member": has_p,
            }
            pairs.append(pair)
            rows.append(_pair_row(G, H, phi, pair))
    names = [[m.name for m, _ in members] for _, members in classes]
    return names, pairs, skipped, rows


def _pair_row(G, H, phi, pair) -> CheckResult:
    check_id = "theorem1.2" if pair["p_group_member"] else "conjecture1.1"
    witness = dict(pair)
    flags = []
    if G.order != H.order:
        flags.append("CONJECTURE-VIOLATION")
        if pair["p_group_member"]:
            flags.append("THEOREM-VIOLATION")
    if pair["p_group_member"]:
        for P, other in ((G, H), (H, G)):
            if _is_pgroup(P):
                r = check_lemma_2_4(P, other)
                witness["lemma2.4"] = r.witness
                if r.status == FAIL:
                    flags.append("LEMMA2.4-VIOLATION")
        for A, B, iso in ((G, H, phi), (H, G, phi.inverse())):
            r = check_lemma_2_1(A, B, iso)
            if r.status == FAIL:
                flags.append("LEMMA2.1-VIOLATION")
                witness["lemma2.1"] = r.witness
    witness["flags"] = flags
    return CheckResult(check_id, (G.name, H.name), FAIL if flags else PASS, witness)


def _bucket_task(args):
    groups, iso_cap, pgroup_only = args
    return _scan_bucket(groups, iso_cap, pgroup_only)


def scan_pairs(catalog, *, iso_cap: int = ISO_CAP, pgroup_only: bool = False, jobs: int = 1) -> PairReport:
    """Find non-commuting-graph-isomorphic pairs and check the order statements on each."""
    skipped = []
    usable = []
    for G in sorted(catalog, key=lambda G: G.name):
        if G.is_abelian():
            skipped.append({"group": G.name, "reason": "abelian"})
        else:
            usable.append(G)
    buckets = {}
    for G in usable:
        buckets.setdefault(_fp_key(G), []).append(G)
    work = [(grp, iso_cap, pgroup_only) for grp in buckets.values() if len(grp) > 1]
    work.sort(key=lambda w: w[0][0].name)
    results = _map(_bucket_task, work, jobs)
    classes, pairs, rows = [], [], []
    for names, p, s, r in results:
        classes += [c for c in names if len(c) > 1]
        pairs += p
        skipped += s
        rows += r
    classes.sort()
    pairs.sort(key=lambda p: p["groups"])
    rows.sort(key=lambda r: (r.subjects, r.check_id))
    return PairReport(classes, pairs, skipped, rows)


# ----------------------------------------------------------------------
# sweeps


CHECKS = {
    "lemma2.4": lambda G, opts: check_lemma_2_4(G),
    "lemma2.5": lambda G, opts: check_lemma_2_5(G, clique_cap=opts.get("clique_cap", CLIQUE_CAP)),
    "lemma2.6": lambda G, opts: lemma_2_6_sweep(G),
    "prop2.7": lambda G, opts: check_prop_2_7(G),
    "lemma2.8": lambda G, opts: check_lemma_2_8(G),
    "frobenius": lambda G, opts: check_frobenius(G),
    "classify": lambda G, opts: check_classify(G, clique_cap=opts.get("clique_cap", CLIQUE_CAP)),
}


def _run_one(args):
    check_id, G, opts = args
    try:
        return CHECKS[check_id](G, opts)
    except NCGError as exc:
        return CheckResult(check_id, (G.name,), NA, {"reason": type(exc).__name__, "detail": str(exc)})


def _map(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def run_sweep(check_id: str, groups, *, jobs: int = 1, **opts) -> list[CheckResult]:
    """Run one check over many groups; output order is independent of *jobs*."""
    groups = sorted(groups, key=lambda G: G.name)
    results = _map(_run_one, [(check_id, G, opts) for G in groups], jobs)
    return sorted(results, key=lambda r: (r.subjects, r.check_id))


def summarize(rows) -> dict:
    counts = {PASS: 0, FAIL: 0, NA: 0}
    for r in rows:
        counts[r.status] += 1
    counts["total"] = len(rows)
    return counts


def report_lines(rows) -> list[str]:
    lines = [json.dumps(r.to_json(), sort_keys=True) for r in rows]
    lines.append(json.dumps({"summary": summarize(rows)}, sort_keys=True))
    return lines
