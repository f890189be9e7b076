"""Finite groups as Cayley tables.

Every group is an ``order x order`` integer table with the identity at index
0.  Elements are plain indices; the table is the single source of truth, so
multiplication is one array lookup everywhere downstream.

Element indexing of the built-in families is fixed:

* ``cyclic(n)``: index ``k`` is ``g**k``.
* ``dihedral(n)``: ``r**k`` at ``k`` and ``s*r**k`` at ``n + k``.
* ``dicyclic(n)``: ``a**k`` at ``k`` and ``a**k * x`` at ``2n + k``.
* ``semidihedral(m)``: ``a**k`` at ``k`` and ``a**k * x`` at ``m + k``.
* ``symmetric(n)`` / ``alternating(n)``: permutations in lexicographic order
  of their image arrays.
* ``heisenberg(p)``: the unitriangular matrix ``[[1, a, c], [0, 1, b],
  [0, 0, 1]]`` at ``a*p*p + b*p + c``.
* ``affine(p)``: the map ``x -> a*x + b`` on ``Z/p``, identity first, then
  ``(a, b)`` in lexicographic order.
* ``matrix_group``: identity first, then the remaining matrices
  ``(a, b, c, d)`` in lexicographic order.

Permutations are image arrays acting on the right: ``(a*b)[i] = b[a[i]]``,
i.e. apply ``a`` first.
"""

from __future__ import annotations

import itertools
import threading
from math import gcd

import numpy as np

from .errors import (
    BadParameter,
    NoIdentityAtZero,
    NoInverse,
    NotAPermutation,
    NotAssociative,
    NotLatinSquare,
    NotPrime,
    OrderLimitExceeded,
)

DEFAULT_ORDER_CAP = 20000
# Associativity is checked on all n**3 triples up to this order, and on a
# fixed-seed sample of ASSOCIATIVITY_SAMPLES random triples above it.
EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 512
ASSOCIATIVITY_SAMPLES = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(n: int):
    """Return ``(p, k)`` with ``n == p**k`` and p prime, or None."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


class FiniteGroup:
    """Immutable finite group given by its Cayley table.

    ``table[a, b]`` is the index of ``a*b``; index 0 is the identity.
    Derived data (conjugacy classes, centralizers, ...) is memoised per
    instance through :meth:`memo`, which initialises each entry exactly once
    even when several threads ask for it concurrently.
    """

    def __init__(self, table, name: str = "", generators=None):
        table = np.array(table, dtype=np.int32)
        table.setflags(write=False)
        self._table = table
        self.name = name
        self.generators = None if generators is None else tuple(int(g) for g in generators)
        inv = np.argmax(table == 0, axis=1).astype(np.int32)
        inv.setflags(write=False)
        self._inverses = inv
        self._memo = {}
        self._lock = threading.RLock()

    def __getstate__(self):
        return {"table": self._table, "name": self.name, "generators": self.generators}

    def __setstate__(self, state):
        self.__init__(state["table"], state["name"], state["generators"])

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def order(self) -> int:
        return len(self._table)

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def identity(self) -> int:
        return 0

    @property
    def inverses(self) -> np.ndarray:
        return self._inverses

    def mul(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inverses[a])

    def conj(self, x: int, g: int) -> int:
        """``x**g = g^-1 * x * g``."""
        t = self._table
        return int(t[t[self._inverses[g], x], g])

    def commutator(self, x: int, y: int) -> int:
        """``[x, y] = x^-1 * y^-1 * x * y``."""
        t, inv = self._table, self._inverses
        return int(t[t[t[inv[x], inv[y]], x], y])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        result, base = 0, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def memo(self, key, factory):
        try:
            return self._memo[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._memo:
                self._memo[key] = factory()
            return self._memo[key]

    def element_orders(self) -> np.ndarray:
        def compute():
            t = self._table
            n = self.order
            orders = np.ones(n, dtype=np.int64)
            cur = np.arange(n)
            done = cur == 0
            k = 1
            while not done.all():
                cur = t[cur, np.arange(n)]
                k += 1
                hit = (cur == 0) & ~done
                orders[hit] = k
                done |= hit
            orders[0] = 1
            orders.setflags(write=False)
            return orders

        return self.memo("element_orders", compute)

    def commuting_matrix(self) -> np.ndarray:
        """Boolean matrix ``M[x, y] = (x*y == y*x)``."""

        def compute():
            m = self._table == self._table.T
            m.setflags(write=False)
            return m

        return self.memo("commuting", compute)

    def is_abelian(self) -> bool:
        return bool(self.commuting_matrix().all())

    def regular_permutations(self, elements) -> list[list[int]]:
        """Right-regular images ``x -> x*g`` for each ``g`` in *elements*."""
        return [self._table[:, g].tolist() for g in elements]

    def check_invariants(self, *, rng_seed: int = 0) -> None:
        """Re-run the full validation suite, raising on the first failure."""
        _validate_table(self._table, rng_seed=rng_seed)


class Subgroup:
    """A subset of a parent group closed under multiplication and inverses."""

    def __init__(self, parent: FiniteGroup, members):
        self.parent = parent
        mask = np.zeros(parent.order, dtype=bool)
        mask[np.asarray(list(members), dtype=np.intp)] = True
        mask.setflags(write=False)
        self.mask = mask
        self.members = tuple(int(i) for i in np.flatnonzero(mask))
        assert parent.order % len(self.members) == 0, "Lagrange violated"

    @classmethod
    def from_mask(cls, parent, mask):
        return cls(parent, np.flatnonzero(mask))

    def __len__(self):
        return len(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return bool(self.mask[x])

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __le__(self, other):
        return bool(np.all(other.mask[self.mask]))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name!r})"

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.from_mask(self.parent, self.mask & other.mask)

    def is_abelian(self) -> bool:
        m = np.asarray(self.members)
        return bool(self.parent.commuting_matrix()[np.ix_(m, m)].all())

    def is_closed(self) -> bool:
        m = np.asarray(self.members)
        t = self.parent.table
        return bool(self.mask[t[np.ix_(m, m)]].all() and self.mask[self.parent.inverses[m]].all())

    def as_group(self, name: str | None = None) -> FiniteGroup:
        """The subgroup as a standalone group; member ``members[i]`` becomes index ``i``."""
        m = np.asarray(self.members)
        relabel = np.full(self.parent.order, -1, dtype=np.int64)
        relabel[m] = np.arange(len(m))
        sub = relabel[self.parent.table[np.ix_(m, m)]]
        return FiniteGroup(sub, name if name is not None else f"sub({self.parent.name})")


# ----------------------------------------------------------------------
# validation


def _validate_table(table: np.ndarray, *, rng_seed: int = 0) -> None:
    n = len(table)
    ar = np.arange(n)
    if table.ndim != 2 or table.shape != (n, n):
        raise NotLatinSquare("table is not square")
    if n == 0:
        raise NotLatinSquare("empty table")
    if table.min() < 0 or table.max() >= n:
        raise NotLatinSquare("entries out of range")
    if not (np.sort(table, axis=1) == ar).all() or not (np.sort(table, axis=0) == ar[:, None]).all():
        raise NotLatinSquare("a row or column is not a permutation")
    # two-sided identity
    ids = [e for e in range(n) if (table[e] == ar).all() and (table[:, e] == ar).all()]
    if not ids:
        raise NoInverse("no two-sided identity element")
    if ids[0] != 0:
        raise NoIdentityAtZero(ids[0])
    inv = np.argmax(table == 0, axis=1)
    if not (table[ar, inv] == 0).all() or not (table[inv, ar] == 0).all():
        bad = int(np.flatnonzero((table[ar, inv] != 0) | (table[inv, ar] != 0))[0])
        raise NoInverse(f"element {bad} has no two-sided inverse")
    _check_associative(table, rng_seed=rng_seed)


def _check_associative(table: np.ndarray, *, rng_seed: int = 0) -> None:
    n = len(table)
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            # left[b, c] = (a*b)*c ; right[b, c] = a*(b*c)
            left = table[table[a]]
            right = table[a][table]
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise NotAssociative((a, b, c))
        return
    rng = np.random.default_rng(rng_seed)
    a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
    bad = table[table[a, b], c] != table[a, table[b, c]]
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NotAssociative((a[i], b[i], c[i]))


# ----------------------------------------------------------------------
# constructors


def from_cayley_table(table, name: str = "", *, relabel: bool = False) -> FiniteGroup:
    """Validate *table* and wrap it as a group.

    With ``relabel=True`` an identity sitting at a non-zero index is swapped
    into position 0 instead of raising :class:`NoIdentityAtZero`.
    """
    arr = np.array(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.size == 0:
        raise NotLatinSquare("table must be a non-empty square array")
    try:
        _validate_table(arr)
    except NoIdentityAtZero as exc:
        if not relabel:
            raise
        e = exc.identity
        perm = np.arange(len(arr))
        perm[[0, e]] = perm[[e, 0]]
        # perm is an involution, so it is its own inverse
        arr = perm[arr[np.ix_(perm, perm)]]
        _validate_table(arr)
    return FiniteGroup(arr, name)


def _perm_codes(perms: np.ndarray):
    deg = perms.shape[1]
    if deg <= 15:
        weights = deg ** np.arange(deg, dtype=np.int64)
        return perms.astype(np.int64) @ weights
    return None


def _perm_table(perms: np.ndarray) -> np.ndarray:
    """Cayley table of a list of permutations closed under composition."""
    n = len(perms)
    table = np.empty((n, n), dtype=np.int32)
    codes = _perm_codes(perms)
    if codes is not None:
        order = np.argsort(codes)
        sorted_codes = codes[order]
        for a in range(n):
            # row b of perms[:, perms[a]] is b[a[i]], i.e. a*b
            prod_codes = _perm_codes(perms[:, perms[a]])
            table[a] = order[np.searchsorted(sorted_codes, prod_codes)]
    else:
        index = {p.tobytes(): i for i, p in enumerate(perms)}
        for a in range(n):
            prods = perms[:, perms[a]]
            table[a] = [index[row.tobytes()] for row in prods]
    return table


def from_permutation_generators(degree: int, gens, name: str = "", *, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close *gens* (0-based image arrays) under right multiplication."""
    ident = tuple(range(degree))
    gen_tuples = []
    for g in gens:
        g = tuple(int(x) for x in g)
        if sorted(g) != list(ident):
            raise NotAPermutation(f"{list(g)} is not a permutation of 0..{degree - 1}")
        gen_tuples.append(g)
    elements = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elements):
        e = elements[i]
        for g in gen_tuples:
            prod = tuple(g[e[j]] for j in range(degree))
            if prod not in index:
                if len(elements) >= cap:
                    raise OrderLimitExceeded(cap)
                index[prod] = len(elements)
                elements.append(prod)
        i += 1
    perms = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
    table = _perm_table(perms)
    gen_idx = [index[g] for g in gen_tuples]
    return FiniteGroup(table, name or f"perm{degree}", generators=gen_idx)


def _group_from_perm_list(perms, name: str) -> FiniteGroup:
    arr = np.array(perms, dtype=np.int64)
    return FiniteGroup(_perm_table(arr), name)


def matrix_group(kind: str, dim: int, p: int, *, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """GL(2, p) or SL(2, p) over the prime field with p elements."""
    kind = kind.upper()
    if kind not in ("GL", "SL"):
        raise BadParameter(f"unknown matrix group kind {kind!r}")
    if dim != 2:
        raise BadParameter("only dimension 2 is supported")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p > 13:
        raise BadParameter("p must be at most 13")
    mats = []
    for a, b, c, d in itertools.product(range(p), repeat=4):
        det = (a * d - b * c) % p
        if det == 0 or (kind == "SL" and det != 1):
            continue
        if (a, b, c, d) != (1, 0, 0, 1):
            mats.append((a, b, c, d))
    mats.insert(0, (1, 0, 0, 1))
    if len(mats) > cap:
        raise OrderLimitExceeded(cap)
    m = np.array(mats, dtype=np.int64)
    codes = ((m[:, 0] * p + m[:, 1]) * p + m[:, 2]) * p + m[:, 3]
    lookup = np.full(p**4, -1, dtype=np.int64)
    lookup[codes] = np.arange(len(m))
    n = len(m)
    table = np.empty((n, n), dtype=np.int32)
    e, f, g, h = m.T
    for i, (a, b, c, d) in enumerate(mats):
        prod = (
            (((a * e + b * g) % p * p + (a * f + b * h) % p) * p + (c * e + d * g) % p) * p
            + (c * f + d * h) % p
        )
        table[i] = lookup[prod]
    return FiniteGroup(table, f"{kind}2:{p}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None, *, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """``G x H`` with the pair ``(g, h)`` at index ``g*|H| + h``."""
    n, m = G.order, H.order
    if n * m > cap:
        raise OrderLimitExceeded(cap)
    tg = G.table.astype(np.int64)
    th = H.table.astype(np.int64)
    table = (tg[:, None, :, None] * m + th[None, :, None, :]).reshape(n * m, n * m)
    return FiniteGroup(table, name if name is not None else f"{G.name}x{H.name}")


# ----------------------------------------------------------------------
# families


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParameter("cyclic group needs n >= 1")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, f"cyclic:{n}", generators=[1 % n])


def _two_coset_table(n: int, mult) -> np.ndarray:
    """Table for elements ``(e, k)`` at index ``e*n + k`` with e in {0, 1}."""
    table = np.empty((2 * n, 2 * n), dtype=np.int32)
    for e1, k1, e2, k2 in itertools.product(range(2), range(n), range(2), range(n)):
        e, k = mult(e1, k1, e2, k2)
        table[e1 * n + k1, e2 * n + k2] = e * n + k
    return table


def dihedral(n: int) -> FiniteGroup:
    """Order ``2n``: rotations ``r**k`` then reflections ``s*r**k``."""
    if n < 1:
        raise BadParameter("dihedral group needs n >= 1")

    def mult(e1, k1, e2, k2):
        # r**k * s = s * r**-k
        return (e1 + e2) % 2, ((-k1 if e2 else k1) + k2) % n

    return FiniteGroup(_two_coset_table(n, mult), f"dihedral:{n}", generators=[1 % n, n])


def dicyclic(n: int) -> FiniteGroup:
    """Order ``4n``: ``<a, x | a^2n = 1, x^2 = a^n, x^-1 a x = a^-1>``."""
    if n < 2:
        raise BadParameter("dicyclic group needs n >= 2")
    m = 2 * n

    def mult(e1, k1, e2, k2):
        if not e1:
            return e2, (k1 + k2) % m
        # a^k1 x a^k2 x^e2 = a^(k1-k2) x^(1+e2)
        return (1 + e2) % 2, (k1 - k2 + (n if e2 else 0)) % m

    return FiniteGroup(_two_coset_table(m, mult), f"dicyclic:{n}", generators=[1, m])


def semidihedral(m: int) -> FiniteGroup:
    """Order ``2m``, m a power of two >= 8: ``x a x = a^(m/2 - 1)``."""
    if m < 8 or m & (m - 1):
        raise BadParameter("semidihedral group needs m a power of two, m >= 8")
    twist = m // 2 - 1

    def mult(e1, k1, e2, k2):
        # x a^k = a^(k*twist) x
        return (e1 + e2) % 2, (k1 + (k2 * twist if e1 else k2)) % m

    return FiniteGroup(_two_coset_table(m, mult), f"semidihedral:{m}", generators=[1, m])


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 7:
        raise BadParameter("symmetric group parameter must be in 1..7")
    perms = list(itertools.permutations(range(n)))
    return _group_from_perm_list(perms, f"symmetric:{n}")


def _is_even(p) -> bool:
    seen, parity = set(), 0
    for i in range(len(p)):
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length:
            parity ^= (length - 1) & 1
    return parity == 0


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 7:
        raise BadParameter("alternating group parameter must be in 1..7")
    perms = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return _group_from_perm_list(perms, f"alternating:{n}")


def heisenberg(p: int) -> FiniteGroup:
    """Extraspecial group of order ``p**3`` and exponent p (p odd)."""
    if p == 2 or not is_prime(p):
        raise BadParameter("heisenberg group needs an odd prime")
    ar = np.arange(p**3)
    a, b, c = ar // (p * p), (ar // p) % p, ar % p
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return FiniteGroup(na * p * p + nb * p + nc, f"heisenberg:{p}")


def affine(p: int) -> FiniteGroup:
    """``AGL(1, p)``: maps ``x -> a*x + b``, a Frobenius group of order ``p(p-1)``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    maps = [(1, 0)] + [(a, b) for a in range(1, p) for b in range(p) if (a, b) != (1, 0)]
    index = {m: i for i, m in enumerate(maps)}
    n = len(maps)
    table = np.empty((n, n), dtype=np.int32)
    for i, (a, b) in enumerate(maps):
        for j, (c, d) in enumerate(maps):
            # apply (a, b) first, then (c, d)
            table[i, j] = index[(c * a % p, (c * b + d) % p)]
    return FiniteGroup(table, f"affine:{p}")


FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "dicyclic": dicyclic,
    "semidihedral": semidihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "heisenberg": heisenberg,
    "affine": affine,
    "GL2": lambda p: matrix_group("GL", 2, p),
    "SL2": lambda p: matrix_group("SL", 2, p),
}


def standard_family(family: str, parameter: int) -> FiniteGroup:
    try:
        build = FAMILIES[family]
    except KeyError:
        raise BadParameter(f"unknown family {family!r}") from None
    if not isinstance(parameter, int) or parameter < 1:
        raise BadParameter(f"parameter must be a positive integer, got {parameter!r}")
    return build(parameter)


# ----------------------------------------------------------------------
# closures


SQUARING_LIMIT = 2048


def _grow(table: np.ndarray, mask: np.ndarray, gens) -> np.ndarray:
    """Mask of the subgroup generated by the subgroup *mask* together with *gens*.

    Small groups close by repeated squaring of the element set (about log2(n)
    rounds of set products); large ones by breadth-first right multiplication.
    """
    gens = np.asarray(gens, dtype=np.intp)
    mask = mask.copy()
    if len(table) <= SQUARING_LIMIT:
        mask[gens] = True
        while True:
            members = np.flatnonzero(mask)
            grown = np.zeros_like(mask)
            grown[table[members[:, None], members[None, :]]] = True
            if grown.sum() == members.size:
                return mask
            mask = grown
    frontier = np.flatnonzero(mask)
    while frontier.size:
        prod = np.unique(table[np.ix_(frontier, gens)])
        new = prod[~mask[prod]]
        mask[new] = True
        frontier = new
    return mask


def closure_mask(G: FiniteGroup, seed) -> np.ndarray:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens = []
    for s in np.unique(np.asarray(list(seed), dtype=np.intp)):
        if not mask[s]:
            gens.append(int(s))
            mask = _grow(G.table, mask, gens)
    return mask


def subgroup_closure(G: FiniteGroup, seed) -> Subgroup:
    """Smallest subgroup of G containing every index in *seed*."""
    return Subgroup.from_mask(G, closure_mask(G, seed))


def join(G: FiniteGroup, *subgroups_or_sets) -> Subgroup:
    seed = set()
    for s in subgroups_or_sets:
        seed.update(int(x) for x in s)
    return subgroup_closure(G, seed)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
