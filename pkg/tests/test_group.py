import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncg import errors
from ncg.group import (
    FiniteGroup,
    Subgroup,
    direct_product,
    from_cayley_table,
    from_permutation_generators,
    matrix_group,
    standard_family,
    subgroup_closure,
)
from ncg.structure import center, element_order_multiset

import oracles
from conftest import catalog, group

SMALL_NAMES = [
    "cyclic:1", "cyclic:6", "dihedral:3", "dihedral:4", "dicyclic:2", "dicyclic:3",
    "dihedral:8", "semidihedral:8", "symmetric:4", "alternating:4", "heisenberg:3",
    "affine:5", "GL2:2", "GL2:3", "SL2:3", "C3^2:C2", "M16", "cyclic:3xdihedral:4",
]


# ----------------------------------------------------------------------
# from_cayley_table


def test_trivial_table():
    G = from_cayley_table([[0]], "trivial")
    assert G.order == 1 and G.identity == 0 and G.is_abelian()


def test_c2_table():
    G = from_cayley_table([[0, 1], [1, 0]], "C2")
    assert G.order == 2
    assert G.inverses.tolist() == [0, 1]


def _two_sided_inverses(sq):
    return all(sq[x].index(0) == [row[x] for row in sq].index(0) for x in range(len(sq)))


def _nonassociative_loop():
    """First reduced 5x5 Latin square with two-sided inverses that fails brute-force associativity."""
    for sq in oracles.reduced_latin_squares(5):
        if _two_sided_inverses(sq) and not oracles.bf_is_associative(sq):
            return sq
    raise AssertionError("every order-5 loop is associative?")


def test_nonassociative_latin_square_rejected():
    sq = _nonassociative_loop()
    with pytest.raises(errors.NotAssociative):
        from_cayley_table(sq, "loop5")


def test_swapped_cyclic_table_rejected():
    # swapping two entries of C5 breaks a column, so this is caught before associativity
    t = [[(i + j) % 5 for j in range(5)] for i in range(5)]
    t[1][1], t[1][2] = t[1][2], t[1][1]
    with pytest.raises(errors.NotLatinSquare):
        from_cayley_table(t)


def test_associativity_oracle_agrees_on_all_order5_loops():
    # the associative reduced squares are the 4!/|Aut(C5)| = 6 labelings of C5
    loops = list(oracles.reduced_latin_squares(5))
    assoc = [sq for sq in loops if oracles.bf_is_associative(sq)]
    assert len(loops) == 56 and len(assoc) == 6
    for sq in loops:
        if sq in assoc:
            from_cayley_table(sq)
        else:
            expected = errors.NotAssociative if _two_sided_inverses(sq) else errors.NoInverse
            with pytest.raises(expected):
                from_cayley_table(sq)


def test_identity_not_at_zero_reports_index():
    t = [[(i + j - 2) % 5 for j in range(5)] for i in range(5)]  # identity is element 2
    with pytest.raises(errors.NoIdentityAtZero) as info:
        from_cayley_table(t)
    assert info.value.identity == 2


def test_relabel_moves_identity_to_zero():
    t = [[(i + j - 2) % 5 for j in range(5)] for i in range(5)]
    G = from_cayley_table(t, relabel=True)
    assert G.table[0].tolist() == list(range(5))
    G.check_invariants()


def test_not_latin():
    with pytest.raises(errors.NotLatinSquare):
        from_cayley_table([[0, 1], [0, 1]])
    with pytest.raises(errors.NotLatinSquare):
        from_cayley_table([[0, 2], [1, 0]])
    with pytest.raises(errors.NotLatinSquare):
        from_cayley_table([[0, 1, 2]])


def test_no_identity_raises_no_inverse():
    # x o y = -x - y (mod 3) is a quasigroup without any identity
    t = [[(-i - j) % 3 for j in range(3)] for i in range(3)]
    with pytest.raises(errors.NoInverse):
        from_cayley_table(t)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        from_cayley_table([[0, 0], [0, 0]])


# ----------------------------------------------------------------------
# permutations


def test_perm_s3():
    G = from_permutation_generators(3, [[1, 0, 2], [1, 2, 0]], "S3")
    assert G.order == len(oracles.bf_closure_perms(3, [[1, 0, 2], [1, 2, 0]])) == 6
    assert not G.is_abelian()


def test_perm_empty_generators():
    G = from_permutation_generators(4, [], "triv")
    assert G.order == 1


def test_perm_dihedral_16():
    rot = [(i + 1) % 8 for i in range(8)]
    ref = [(-i) % 8 for i in range(8)]
    G = from_permutation_generators(8, [rot, ref])
    assert G.order == len(oracles.bf_closure_perms(8, [rot, ref])) == 16
    assert len(G.generators) == 2


def test_perm_right_action():
    # (a*b)[i] = b[a[i]]: apply a first
    a, b = [1, 0, 2], [0, 2, 1]
    G = from_permutation_generators(3, [a, b])
    ia, ib = G.generators
    ab = G.mul(ia, ib)
    H = from_permutation_generators(3, [a, b, [b[a[i]] for i in range(3)]])
    assert H.generators[2] == H.mul(H.generators[0], H.generators[1])
    assert G.order == 6 and ab != G.mul(ib, ia)


def test_not_a_permutation():
    with pytest.raises(errors.NotAPermutation):
        from_permutation_generators(3, [[0, 0, 1]])
    with pytest.raises(errors.NotAPermutation):
        from_permutation_generators(3, [[0, 1]])


def test_perm_cap():
    gens = [[1, 0, 2, 3, 4, 5], [1, 2, 3, 4, 5, 0]]
    with pytest.raises(errors.OrderLimitExceeded):
        from_permutation_generators(6, gens, cap=100)
    assert from_permutation_generators(6, gens).order == 720


def test_perm_table_matches_composition_oracle():
    gens = [[1, 2, 3, 0, 4], [1, 0, 2, 3, 4], [0, 1, 2, 4, 3]]
    G = from_permutation_generators(5, gens)
    elems = sorted(oracles.bf_closure_perms(5, gens))
    assert G.order == len(elems)
    G.check_invariants()


# ----------------------------------------------------------------------
# matrix groups


@pytest.mark.parametrize("kind,p,order", [("GL", 2, 6), ("GL", 3, 48), ("SL", 3, 24), ("SL", 5, 120), ("GL", 5, 480)])
def test_matrix_group_orders(kind, p, order):
    G = matrix_group(kind, 2, p)
    assert G.order == order == ((p * p - 1) * (p * p - p) // (1 if kind == "GL" else p - 1))
    G.check_invariants()


def test_matrix_group_errors():
    with pytest.raises(errors.NotPrime):
        matrix_group("GL", 2, 4)
    with pytest.raises(errors.BadParameter):
        matrix_group("GL", 3, 2)
    with pytest.raises(errors.BadParameter):
        matrix_group("GL", 2, 17)


def test_gl23_center_is_scalars():
    G = matrix_group("GL", 2, 3)
    assert oracles.bf_center(G) == set(center(G).members)
    assert center(G).order == 2


# ----------------------------------------------------------------------
# direct products


def test_klein_four():
    V = direct_product(group("cyclic:2"), group("cyclic:2"))
    assert V.order == 4 and V.is_abelian()
    assert set(V.element_orders().tolist()) == {1, 2}


def test_c3_x_d4_center():
    G = direct_product(group("cyclic:3"), group("dihedral:4"))
    assert G.order == 24
    assert center(G).order == len(oracles.bf_center(G)) == 6


def test_trivial_times_g_identical_table():
    D = group("dihedral:4")
    assert np.array_equal(direct_product(group("cyclic:1"), D).table, D.table)


def test_direct_product_layout():
    G, H = group("dihedral:3"), group("cyclic:4")
    P = direct_product(G, H)
    for g1, h1, g2, h2 in [(1, 2, 4, 3), (5, 1, 3, 3), (0, 0, 2, 1)]:
        assert P.mul(g1 * 4 + h1, g2 * 4 + h2) == G.mul(g1, g2) * 4 + H.mul(h1, h2)


def test_direct_product_cap():
    with pytest.raises(errors.OrderLimitExceeded):
        direct_product(group("symmetric:4"), group("symmetric:4"), cap=500)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL_NAMES[:12]), st.sampled_from(["cyclic:2", "cyclic:3", "dihedral:3", "dicyclic:2"]))
def test_direct_product_orders_are_lcm(a, b):
    G, H = group(a), group(b)
    P = direct_product(G, H)
    assert P.order == G.order * H.order
    og, oh, op = G.element_orders(), H.element_orders(), P.element_orders()
    for g in range(G.order):
        for h in range(H.order):
            assert op[g * H.order + h] == oracles.lcm(int(og[g]), int(oh[h]))


# ----------------------------------------------------------------------
# families


def test_q8():
    Q = standard_family("dicyclic", 2)
    assert Q.order == 8
    assert len(oracles.bf_center(Q)) == 2


def test_heisenberg3_classes():
    H = standard_family("heisenberg", 3)
    assert H.order == 27
    sizes = sorted(len(c) for c in oracles.bf_classes(H))
    assert sizes == [1] * 3 + [3] * 8
    assert set(H.element_orders().tolist()) == {1, 3}


def test_dihedral4_center():
    D = standard_family("dihedral", 4)
    assert D.order == 8
    assert oracles.bf_center(D) == {0, 2}  # e and r^2


def test_dihedral_indexing():
    D = standard_family("dihedral", 5)
    r, s = 1, 5
    assert D.power(r, 5) == 0 and D.mul(s, s) == 0
    for k in range(5):
        assert D.power(r, k) == k
        assert D.mul(s, D.power(r, k)) == 5 + k


@pytest.mark.parametrize("n", [2, 4, 8])
def test_generalized_quaternion_unique_involution(n):
    Q = standard_family("dicyclic", n)
    orders = [oracles.bf_element_order(Q, x) for x in range(Q.order)]
    assert orders.count(2) == 1
    assert Q.element_orders().tolist() == orders


def test_dicyclic_non_power_has_unique_involution_too():
    # every dicyclic group has a single involution; only 2-powers are quaternion
    Q = standard_family("dicyclic", 3)
    assert Q.element_orders().tolist().count(2) == 1


def test_semidihedral16():
    S = standard_family("semidihedral", 8)
    assert S.order == 16
    assert len(oracles.bf_center(S)) == 2
    assert oracles.bf_nilpotency_class(S) == 3


@pytest.mark.parametrize(
    "family,param,err",
    [
        ("dihedral", 0, errors.BadParameter),
        ("dicyclic", 1, errors.BadParameter),
        ("heisenberg", 2, errors.BadParameter),
        ("heisenberg", 9, errors.BadParameter),
        ("symmetric", 8, errors.BadParameter),
        ("alternating", 9, errors.BadParameter),
        ("semidihedral", 12, errors.BadParameter),
        ("nonsense", 3, errors.BadParameter),
        ("affine", 6, errors.NotPrime),
    ],
)
def test_family_errors(family, param, err):
    with pytest.raises(err):
        standard_family(family, param)


@pytest.mark.parametrize(
    "family,param,order",
    [
        ("cyclic", 7, 7), ("dihedral", 6, 12), ("dicyclic", 5, 20), ("symmetric", 5, 120),
        ("alternating", 5, 60), ("heisenberg", 5, 125), ("affine", 7, 42), ("semidihedral", 16, 32),
    ],
)
def test_family_orders(family, param, order):
    assert standard_family(family, param).order == order


def test_every_builtin_group_passes_invariants():
    for G in catalog(64):
        G.check_invariants()


def test_sampled_associativity_above_exhaustive_limit():
    # GL(2,5) has order 480, so use S6 (720) for the sampled path
    G = standard_family("symmetric", 6)
    G.check_invariants()
    t = G.table.copy()
    # corrupt a 2x2 block while keeping a Latin square: swap two columns entirely
    t[:, [5, 7]] = t[:, [7, 5]]
    with pytest.raises(errors.GroupConstructionError):
        from_cayley_table(t)


# ----------------------------------------------------------------------
# rebuilding from permutations


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL_NAMES), st.data())
def test_rebuild_from_regular_permutations(name, data):
    G = group(name)
    # a generating set: start from random elements and extend until it generates
    seeds = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    gens = list(seeds)
    while subgroup_closure(G, gens).order < G.order:
        missing = [x for x in range(G.order) if x not in subgroup_closure(G, gens)]
        gens.append(missing[0])
    H = from_permutation_generators(G.order, G.regular_permutations(gens))
    assert H.order == G.order
    assert element_order_multiset(H) == element_order_multiset(G)


# ----------------------------------------------------------------------
# closures and subgroups


def test_closure_of_empty_is_trivial():
    assert subgroup_closure(group("symmetric:4"), []).members == (0,)


def test_closure_rotation_in_d4():
    D = group("dihedral:4")
    S = subgroup_closure(D, [1])
    assert S.members == (0, 1, 2, 3)
    assert set(S.members) == oracles.bf_closure(D, {1})


def test_closure_s3_perm_generators():
    G = from_permutation_generators(3, [[1, 0, 2], [1, 2, 0]])
    assert subgroup_closure(G, G.generators).order == 6


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_NAMES), st.data())
def test_closure_matches_oracle(name, data):
    G = group(name)
    seed = data.draw(st.sets(st.integers(0, G.order - 1), max_size=3))
    S = subgroup_closure(G, seed)
    assert set(S.members) == oracles.bf_closure(G, seed)
    assert S.is_closed()


def test_large_group_closure_path():
    # order above the squaring limit uses the breadth-first branch
    G = standard_family("alternating", 7)
    assert G.order == 2520
    S = subgroup_closure(G, [1, 2])
    assert set(S.members) == oracles.bf_closure(G, {1, 2})
    assert S.is_closed()


def test_subgroup_lagrange_asserted():
    with pytest.raises(AssertionError):
        Subgroup(group("symmetric:3"), [0, 1, 2, 3])


def test_subgroup_as_group():
    D = group("dihedral:4")
    S = subgroup_closure(D, [1])
    C4 = S.as_group("C4")
    assert C4.order == 4 and C4.is_abelian()
    C4.check_invariants()


def test_pickle_round_trip():
    import pickle

    D = group("dihedral:5")
    E = pickle.loads(pickle.dumps(D))
    assert np.array_equal(E.table, D.table) and E.name == D.name


def test_table_is_read_only():
    D = group("dihedral:3")
    with pytest.raises(ValueError):
        D.table[0, 0] = 1


def test_constructor_accepts_lists():
    G = FiniteGroup([[0, 1], [1, 0]], "C2")
    assert G.mul(1, 1) == 0
