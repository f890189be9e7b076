"""Structural group theory on Cayley tables.

Centers, centralizers, conjugacy classes, derived and upper central series,
normal subgroups, quotients, centralizer partitions of AC-groups, Frobenius
kernels and complements, and the numeric profile of a non-abelian p-group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import reduce
from math import gcd

import numpy as np

from .errors import (
    AbelianGroup,
    KernelFoundNoComplement,
    NotNormal,
    NotPGroup,
    OrderLimitExceeded,
)
from .group import FiniteGroup, Subgroup, _grow, prime_power, subgroup_closure

NORMAL_SEARCH_CAP = 512


@dataclass(frozen=True)
class ClassData:
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    center_size: int

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def size_multiset(self) -> list[int]:
        return sorted(self.sizes)


@dataclass(frozen=True)
class PGroupProfile:
    p: int
    n: int
    r: int
    a_list: tuple[int, ...]
    u: int


@dataclass(frozen=True)
class FrobeniusStructure:
    kernel: Subgroup
    complement: Subgroup


@dataclass(frozen=True)
class CentralizerPartition:
    components: tuple[Subgroup, ...]
    is_ac: bool

    @property
    def omega(self) -> int:
        return len(self.components)


def _mask_subgroup(G, mask) -> Subgroup:
    return Subgroup.from_mask(G, mask)


def center(G: FiniteGroup) -> Subgroup:
    return G.memo("center", lambda: _mask_subgroup(G, G.commuting_matrix().all(axis=1)))


def centralizer(G: FiniteGroup, x: int) -> Subgroup:
    return _mask_subgroup(G, G.commuting_matrix()[x])


def centralizer_of_set(G: FiniteGroup, elements) -> Subgroup:
    elements = np.asarray(list(elements), dtype=np.intp)
    mask = G.commuting_matrix()[elements].all(axis=0) if elements.size else np.ones(G.order, bool)
    return _mask_subgroup(G, mask)


def centralizer_orders(G: FiniteGroup) -> np.ndarray:
    return G.memo("centralizer_orders", lambda: G.commuting_matrix().sum(axis=1))


def conjugacy_classes(G: FiniteGroup) -> ClassData:
    def compute():
        t, inv = G.table, G.inverses
        n = G.order
        ar = np.arange(n)
        # conj[g, x] = g^-1 x g; the class of x is column x, labelled by its minimum
        conj = t[t[inv[:, None], ar[None, :]], ar[:, None]]
        reps, class_of = np.unique(conj.min(axis=0), return_inverse=True)
        class_of = np.asarray(class_of, dtype=np.int64).ravel()
        classes = tuple(tuple(int(y) for y in np.flatnonzero(class_of == k)) for k in range(len(reps)))
        cent = centralizer_orders(G)
        sizes = np.bincount(class_of)[class_of]
        assert (sizes * cent == n).all(), "orbit-stabilizer violated"
        class_of.setflags(write=False)
        return ClassData(classes, class_of, int((sizes == 1).sum()))

    return G.memo("classes", compute)


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    t, inv = G.table, G.inverses
    m = np.asarray(S.members)
    conj = t[t[inv[:, None], m[None, :]], np.arange(G.order)[:, None]]
    return bool(S.mask[conj].all())


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup | None = None) -> Subgroup:
    """``[A, B]``, generated by all ``a^-1 b^-1 a b``."""
    B = A if B is None else B
    t, inv = G.table, G.inverses
    a = np.asarray(A.members)[:, None]
    b = np.asarray(B.members)[None, :]
    comms = t[t[t[inv[a], inv[b]], a], b]
    return subgroup_closure(G, np.unique(comms))


def derived_series(G: FiniteGroup) -> list[Subgroup]:
    def compute():
        series = [_mask_subgroup(G, np.ones(G.order, bool))]
        while True:
            nxt = commutator_subgroup(G, series[-1])
            if nxt == series[-1]:
                return series
            series.append(nxt)

    return G.memo("derived_series", compute)


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1].order == 1


def commutator_table(G: FiniteGroup) -> np.ndarray:
    """``C[x, g] = [x, g]`` for all pairs."""

    def compute():
        t, inv = G.table, G.inverses
        ar = np.arange(G.order)
        c = t[t[t[inv[:, None], inv[None, :]], ar[:, None]], ar[None, :]]
        c.setflags(write=False)
        return c

    return G.memo("commutators", compute)


def upper_central_series(G: FiniteGroup) -> list[Subgroup]:
    """``Z_0 = 1 <= Z_1 = Z(G) <= Z_2 <= ...`` until it stabilizes."""

    def compute():
        comm = commutator_table(G)
        mask = np.zeros(G.order, bool)
        mask[0] = True
        series = [_mask_subgroup(G, mask)]
        while True:
            # Z_{i+1} = {x : [x, g] in Z_i for all g}
            nxt = mask[comm].all(axis=1)
            if (nxt == mask).all():
                return series
            mask = nxt
            series.append(_mask_subgroup(G, mask))

    return G.memo("upper_central_series", compute)


def nilpotency_class(G: FiniteGroup) -> int | None:
    series = upper_central_series(G)
    if series[-1].order != G.order:
        return None
    return len(series) - 1


def normal_subgroups(G: FiniteGroup, *, cap: int = NORMAL_SEARCH_CAP) -> list[Subgroup]:
    """All normal subgroups, sorted by order and then by member list.

    A normal subgroup is a union of conjugacy classes, hence the join of the
    normal closures of its classes.  The lattice is explored from the trivial
    subgroup by joining one such closure at a time.
    """
    if G.order > cap:
        raise OrderLimitExceeded(cap, "normal subgroup search")

    def compute():
        n = G.order
        start = np.zeros(n, bool)
        start[0] = True
        # normal closures of single classes; every normal subgroup is a join of these
        atoms = {}
        for cls in conjugacy_classes(G).classes[1:]:
            m = _grow(G.table, start, list(cls))
            atoms.setdefault(m.tobytes(), (m, list(cls)))
        atoms = list(atoms.values())
        seen = {start.tobytes(): (start, [])}
        queue = [start.tobytes()]
        while queue:
            mask, gens = seen[queue.pop()]
            size = int(mask.sum())
            for atom, atom_gens in atoms:
                if not (atom & ~mask).any():
                    continue
                if size + int((atom & ~mask).sum()) > n // 2:
                    # Lagrange: a proper subgroup has at most n/2 elements
                    grown = np.ones(n, bool)
                else:
                    grown = _grow(G.table, mask, gens + atom_gens)
                key = grown.tobytes()
                if key not in seen:
                    seen[key] = (grown, gens + atom_gens)
                    queue.append(key)
        subs = [_mask_subgroup(G, m) for m, _ in seen.values()]
        subs.sort(key=lambda s: (s.order, s.members))
        return subs

    return G.memo(("normal_subgroups", cap), compute)


def quotient(G: FiniteGroup, N: Subgroup, name: str | None = None):
    """Return ``(G/N, projection)``; cosets are numbered by their smallest member."""
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    t = G.table
    n = G.order
    coset_of = np.full(n, -1, dtype=np.int64)
    reps = []
    m = np.asarray(N.members)
    for x in range(n):
        if coset_of[x] < 0:
            coset_of[t[x, m]] = len(reps)
            reps.append(x)
    reps = np.asarray(reps)
    table = coset_of[t[np.ix_(reps, reps)]]
    Q = FiniteGroup(table, name if name is not None else f"{G.name}/N{N.order}")
    # projection must be a homomorphism
    assert (coset_of[t] == table[coset_of[:, None], coset_of[None, :]]).all()
    coset_of.setflags(write=False)
    return Q, coset_of


def preimage(G: FiniteGroup, projection: np.ndarray, S: Subgroup) -> Subgroup:
    return _mask_subgroup(G, S.mask[projection])


def commutator_with_element(C: Subgroup, a: int) -> Subgroup:
    """``[C, a]``: the subgroup generated by ``c^-1 * c^a`` for c in C."""
    G = C.parent
    t, inv = G.table, G.inverses
    c = np.asarray(C.members)
    conj = t[t[inv[a], c], a]
    return subgroup_closure(G, t[inv[c], conj])


def conjugate_subgroup(C: Subgroup, a: int) -> Subgroup:
    G = C.parent
    t, inv = G.table, G.inverses
    c = np.asarray(C.members)
    return Subgroup(G, t[t[inv[a], c], a])


def set_product(G: FiniteGroup, A, B) -> frozenset:
    a = np.asarray(list(A), dtype=np.intp)
    b = np.asarray(list(B), dtype=np.intp)
    return frozenset(np.unique(G.table[np.ix_(a, b)]).tolist())


def ac_partition(G: FiniteGroup) -> CentralizerPartition:
    """Distinct centralizers of non-central elements, and whether all are abelian."""

    def compute():
        if G.is_abelian():
            raise AbelianGroup(f"{G.name} is abelian")
        cm = G.commuting_matrix()
        Z = center(G)
        seen = {}
        for x in range(G.order):
            if x in Z:
                continue
            key = cm[x].tobytes()
            if key not in seen:
                seen[key] = _mask_subgroup(G, cm[x])
        comps = sorted(seen.values(), key=lambda s: s.members)
        is_ac = all(c.is_abelian() for c in comps)
        if is_ac:
            omega = len(comps)
            # |G| = -(omega - 1)|Z| + sum |S|
            assert G.order == -(omega - 1) * Z.order + sum(c.order for c in comps)
            for i, c1 in enumerate(comps):
                for c2 in comps[i + 1 :]:
                    assert (c1.mask & c2.mask).sum() == Z.order
        return CentralizerPartition(tuple(comps), is_ac)

    return G.memo("ac_partition", compute)


def is_ac_group(G: FiniteGroup) -> bool:
    return G.is_abelian() or ac_partition(G).is_ac


def is_frobenius_kernel(G: FiniteGroup, N: Subgroup) -> bool:
    """Every non-identity element of N has its whole centralizer inside N."""
    cm = G.commuting_matrix()
    rows = cm[np.asarray(N.members[1:], dtype=np.intp)]
    return bool(not (rows & ~N.mask).any())


def _find_complement(G: FiniteGroup, N: Subgroup) -> Subgroup | None:
    target = G.order // N.order
    t = G.table
    n_members = np.asarray(N.members)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    cosets = []
    for x in range(G.order):
        if coset_of[x] < 0:
            members = t[x, n_members]
            coset_of[members] = len(cosets)
            cosets.append(np.sort(members))

    def search(mask, gens):
        size = int(mask.sum())
        if size == target:
            return mask
        covered = np.zeros(len(cosets), bool)
        covered[coset_of[mask]] = True
        k = int(np.argmin(covered))
        for x in cosets[k]:
            grown = _grow(t, mask, gens + [int(x)])
            s = int(grown.sum())
            if s > target or target % s or (grown & N.mask).sum() > 1:
                continue
            found = search(grown, gens + [int(x)])
            if found is not None:
                return found
        return None

    start = np.zeros(G.order, bool)
    start[0] = True
    found = search(start, [])
    return None if found is None else _mask_subgroup(G, found)


def frobenius_structure(G: FiniteGroup, *, cap: int = NORMAL_SEARCH_CAP) -> FrobeniusStructure | None:
    """Frobenius kernel (largest qualifying normal subgroup) and a complement, or None."""

    def compute():
        candidates = [
            N for N in normal_subgroups(G, cap=cap) if 1 < N.order < G.order and is_frobenius_kernel(G, N)
        ]
        if not candidates:
            return None
        best = max(N.order for N in candidates)
        kernel = min((N for N in candidates if N.order == best), key=lambda N: N.members)
        complement = _find_complement(G, kernel)
        if complement is None:
            raise KernelFoundNoComplement(f"{G.name}: kernel of order {kernel.order} has no complement")
        return FrobeniusStructure(kernel, complement)

    return G.memo(("frobenius", cap), compute)


def p_group_profile(P: FiniteGroup) -> PGroupProfile:
    pk = prime_power(P.order)
    if pk is None:
        raise NotPGroup(f"{P.name} has order {P.order}, not a prime power")
    if P.is_abelian():
        raise AbelianGroup(f"{P.name} is abelian")
    p, n = pk
    r = prime_power(center(P).order)[1]
    exps = set()
    for size in set(conjugacy_classes(P).sizes):
        if size > 1:
            exps.add(prime_power(size)[1])
    a_list = tuple(sorted(exps))
    u = reduce(gcd, a_list, n - r)
    profile = PGroupProfile(p, n, r, a_list, u)
    assert 1 <= r < n and a_list[0] >= 1 and all(a < n for a in a_list)
    assert all(a % u == 0 for a in a_list) and (n - r) % u == 0
    return profile


def class_size_multiset(G: FiniteGroup) -> list[int]:
    return conjugacy_classes(G).size_multiset()


def element_order_multiset(G: FiniteGroup) -> list[int]:
    return sorted(int(x) for x in G.element_orders())


def sylow_like_parts(G: FiniteGroup) -> dict[int, Subgroup]:
    """For a nilpotent group: prime -> Sylow subgroup (elements of p-power order)."""
    orders = G.element_orders()
    primes = sorted({p for o in set(orders.tolist()) if o > 1 for p in _prime_factors(o)})
    return {p: _mask_subgroup(G, np.array([_is_p_power(int(o), p) for o in orders])) for p in primes}


def _prime_factors(n: int) -> set[int]:
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def counter_of(values) -> dict[int, int]:
    return dict(sorted(Counter(values).items()))
