import random

import pytest

from _oracles import naive_h1_invariants
from normone.cohomology import (
    ComputationTooLargeError,
    TateGroup,
    coflasque_report,
    flasque_report,
    is_coflasque,
    is_flasque,
    tate_cohomology,
    tate_h0,
    tate_h1,
    tate_h_minus1,
)
from normone.lattice import (
    AugmentationSequence,
    direct_sum,
    dual,
    norm_one_lattice,
    permutation_lattice,
    restrict,
    trivial_lattice,
)
from normone.perms import (
    FiniteGroup,
    Permutation,
    Subgroup,
    make_symmetric,
    point_stabilizer,
    subgroups_up_to_conjugacy,
)


def P(text, degree):
    return Permutation.parse(text, degree)


def cyclic(p):
    return FiniteGroup.from_generators(
        [Permutation.from_cycles([list(range(1, p + 1))], p)], p)


def sign_lattice():
    from normone.lattice import from_generator_matrices
    from normone.intmat import IntMatrix
    C2 = cyclic(2)
    return from_generator_matrices(
        C2, {C2.generators[0]: IntMatrix([[-1]], 1, 1)})


def whole(G):
    return Subgroup(G, G)


def test_h0_of_trivial_lattice_is_z_mod_p():
    for p in (2, 3, 5):
        G = cyclic(p)
        got = tate_h0(trivial_lattice(G, 1), whole(G))
        assert got.invariants == (p,)


def test_sign_lattice_cohomology():
    M = sign_lattice()
    H = whole(M.group)
    assert tate_h_minus1(M, H).invariants == (2,)
    assert tate_h0(M, H).is_trivial
    assert tate_h1(M, H).invariants == (2,)


def test_tate_degree_dispatch_and_str():
    M = sign_lattice()
    H = whole(M.group)
    assert str(tate_cohomology(M, H, -1)) == "[2]"
    assert str(tate_cohomology(M, H, 0)) == "0"
    with pytest.raises(ValueError):
        tate_cohomology(M, H, 2)
    assert TateGroup(0, (2, 4)).order == 8


def test_permutation_lattices_are_flasque_and_coflasque():
    S4 = make_symmetric(4)
    M = permutation_lattice(S4, point_stabilizer(S4, 4))
    assert is_flasque(M)
    assert is_coflasque(M)
    rep = flasque_report(M)
    assert all(group.is_trivial for _, group in rep)
    assert len(rep) == 11  # one entry per subgroup class


def test_norm_one_h_minus1_is_index():
    for n in (3, 4, 5):
        Sn = make_symmetric(n)
        J = norm_one_lattice(Sn, point_stabilizer(Sn, n))
        got = tate_h_minus1(J, whole(Sn))
        assert got.invariants == (n,)


def test_augmentation_kernel_h1():
    # H^1(G, I_G) = Z/|G| for the full augmentation ideal
    V4 = FiniteGroup.from_generators(
        [P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)], 4)
    aug = AugmentationSequence(V4, Subgroup(V4, FiniteGroup.trivial(4)))
    assert tate_h1(aug.kernel, whole(V4)).invariants == (4,)
    C3 = cyclic(3)
    aug3 = AugmentationSequence(C3, Subgroup(C3, FiniteGroup.trivial(3)))
    assert tate_h1(aug3.kernel, whole(C3)).invariants == (3,)


def test_h1_against_naive_oracle():
    S3 = make_symmetric(3)
    H3 = point_stabilizer(S3, 3)
    lattices = [
        permutation_lattice(S3, H3),
        norm_one_lattice(S3, H3),
        dual(norm_one_lattice(S3, H3)),
    ]
    subs = [["(1 2)"], ["(1 2 3)"], ["(1 2)", "(1 2 3)"]]
    for M in lattices:
        for gens in subs:
            Hg = FiniteGroup.from_generators(
                [P(s, 3) for s in gens], 3)
            got = tate_h1(M, Subgroup(S3, Hg))
            assert list(got.invariants) == naive_h1_invariants(M, Hg)


def test_h1_against_naive_oracle_random_s4():
    rng = random.Random(2718)
    S4 = make_symmetric(4)
    classes = [c for c in subgroups_up_to_conjugacy(S4) if c.order > 1]
    H4 = point_stabilizer(S4, 4)
    J = norm_one_lattice(S4, H4)
    M = permutation_lattice(S4, H4)
    for _ in range(12):
        sub = rng.choice(classes)
        lat = rng.choice([J, M])
        got = tate_h1(lat, sub)
        assert list(got.invariants) == naive_h1_invariants(lat, sub.group)


def test_duality_swaps_degrees_one_and_minus_one():
    S4 = make_symmetric(4)
    H4 = point_stabilizer(S4, 4)
    J = norm_one_lattice(S4, H4)
    K = dual(J)
    for sub in subgroups_up_to_conjugacy(S4):
        if sub.order == 1:
            continue
        assert tate_h1(K, sub).invariants == tate_h_minus1(J, sub).invariants
        assert tate_h_minus1(K, sub).invariants == tate_h1(J, sub).invariants


def _primary_parts(invariants):
    parts = []
    for d in invariants:
        x = d
        f = 2
        while f * f <= x:
            if x % f == 0:
                q = 1
                while x % f == 0:
                    x //= f
                    q *= f
                parts.append(q)
            f += 1
        if x > 1:
            parts.append(x)
    return sorted(parts)


def test_shapiro_and_additivity_seeded():
    # lattice Z[H/Q] over H has the cohomology of Z over Q; direct sums
    # add up primary components
    rng = random.Random(40961)
    S5 = make_symmetric(5)
    classes = subgroups_up_to_conjugacy(S5)
    trials = 0
    while trials < 50:
        H = rng.choice(classes)
        if H.order == 1 or not H.group.is_enumerable():
            continue
        qclasses = subgroups_up_to_conjugacy(H.group)
        Q = rng.choice(qclasses)
        if H.order // Q.order > 16:
            continue
        trials += 1
        M = permutation_lattice(H.group, Subgroup(H.group, Q.group))
        HH = whole(H.group)
        assert tate_h_minus1(M, HH).is_trivial
        assert tate_h1(M, HH).is_trivial
        got = tate_h0(M, HH)
        want = tate_h0(trivial_lattice(Q.group, 1), whole(Q.group))
        assert _primary_parts(got.invariants) == _primary_parts(want.invariants)
        # additivity on a direct sum with a trivial summand
        D = direct_sum([M, trivial_lattice(H.group, 1)])
        sum_h0 = tate_h0(D, HH)
        expect = _primary_parts(list(got.invariants) + [H.order])
        assert _primary_parts(sum_h0.invariants) == expect


def test_cost_gate():
    S4 = make_symmetric(4)
    M = permutation_lattice(S4, point_stabilizer(S4, 4))
    with pytest.raises(ComputationTooLargeError):
        is_flasque(M, cutoff=10)


def test_coflasque_report_of_norm_one_lattice():
    S4 = make_symmetric(4)
    J = norm_one_lattice(S4, point_stabilizer(S4, 4))
    assert not is_coflasque(J)
    orders = {}
    for sub, group in coflasque_report(J):
        orders.setdefault(sub.order, []).append(str(group))
    # obstructions live at the 2-subgroups, not at the full group
    assert orders[24] == ["0"]
    assert orders[8] == ["[2]"]
    assert sorted(orders[4]) == ["0", "[2, 2]", "[4]"]
    assert sorted(orders[2]) == ["0", "[2]"]
