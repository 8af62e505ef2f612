import random

import numpy as np
import pytest

from dpx.core import (
    Subgroup,
    build_from_table,
    centralizer,
    closure,
    core,
    direct_product,
    element_order,
    is_normal,
    isomorphic,
    isomorphic_as_factorization,
    order_profile,
    read_cayley,
    read_cayley_text,
    recognize_dihedral,
    write_cayley,
    write_cayley_text,
)
from dpx.dihedral import cyclic_group, dihedral_group, dihedral_permutation_group
from dpx.errors import NotAGroup, SearchBudgetExceeded


def test_build_from_table_cyclic():
    g = cyclic_group(3)
    assert g.order == 3
    assert g.identity == 0
    assert g.inv(1) == 2
    assert element_order(g, 1) == 3


def test_build_from_table_rejects_bad_table():
    bad = [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
    with pytest.raises(NotAGroup):
        build_from_table(3, bad)


def test_build_from_table_rejects_shape_and_range():
    with pytest.raises(NotAGroup):
        build_from_table(2, [[0, 1, 0], [1, 0, 1]])
    with pytest.raises(NotAGroup):
        build_from_table(2, [[0, 5], [5, 0]])
    with pytest.raises(NotAGroup):
        build_from_table(3, [[0, 1], [1, 0]])


def test_identity_discovered_off_zero():
    # Relabel Z3 so that the identity sits at index 2.
    perm = [2, 0, 1]  # old -> new
    table = np.empty((3, 3), dtype=int)
    for a in range(3):
        for b in range(3):
            table[perm[a], perm[b]] = perm[(a + b) % 3]
    g = build_from_table(3, table)
    assert g.identity == 2


def test_associativity_witness_in_reason():
    # A Latin square with a two-sided identity that is not a group:
    # take Z5 and swap two entries off the identity row/column to keep
    # the Latin property but break associativity.
    t = (np.add.outer(np.arange(5), np.arange(5)) % 5).astype(int)
    t[1, 1], t[1, 2] = t[1, 2], t[1, 1]
    t[2, 1], t[2, 2] = t[2, 2], t[2, 1]
    with pytest.raises(NotAGroup) as exc:
        build_from_table(5, t)
    assert "associativity" in str(exc.value) or "permutation" in str(exc.value)


def test_closure_and_subgroup_invariants():
    d6 = dihedral_group(3, names=("x", "y"))
    h = closure(d6, [d6.generators["x"], d6.generators["y"]])
    assert h.order == 6
    rot = closure(d6, [d6.generators["x"]])
    assert rot.members == (0, 1, 2)
    refl = closure(d6, [d6.generators["y"]])
    assert refl.order == 2
    # closure of the witness reproduces the members
    assert closure(d6, rot.witness_generators).members == rot.members


def test_core_and_normality_in_dihedral():
    d = dihedral_group(5)
    rot = closure(d, [1])
    assert is_normal(d, rot)
    assert core(d, rot).members == rot.members
    refl = closure(d, [5])
    assert not is_normal(d, refl)
    assert core(d, refl).members == (0,)


def test_centralizer():
    d = dihedral_group(3)
    rot = closure(d, [1])
    cent = centralizer(d, rot)
    assert cent.members == rot.members  # center of D6 is trivial, rotations self-centralize
    whole = centralizer(d, [0])
    assert whole.order == 6


def test_recognize_dihedral_verdicts():
    d10 = dihedral_group(5).as_subgroup()
    v = recognize_dihedral(d10)
    assert v.kind == "dihedral"
    g = d10.parent
    assert element_order(g, v.rotation_generator) == 5
    assert element_order(g, v.reflection) == 2
    assert g.conjugate(v.rotation_generator, v.reflection) == g.inv(v.rotation_generator)

    assert recognize_dihedral(cyclic_group(2).as_subgroup()).kind == "cyclic"
    assert recognize_dihedral(cyclic_group(4).as_subgroup()).kind == "cyclic"
    assert recognize_dihedral(cyclic_group(6).as_subgroup()).kind == "cyclic"
    klein = direct_product(cyclic_group(2), cyclic_group(2))
    assert recognize_dihedral(klein.as_subgroup()).kind == "other"
    # order 4 and order 2 are never dihedral even though D4, D2 exist abstractly
    d4 = dihedral_group(2).as_subgroup()
    assert recognize_dihedral(d4).kind == "other"
    c2 = closure(dihedral_group(3), [3])
    assert recognize_dihedral(c2).kind == "cyclic"


def test_order_profile_direct_product():
    prod = direct_product(dihedral_group(3), dihedral_group(3))
    profile = order_profile(prod)
    assert sum(profile.values()) == 36
    assert profile == {1: 1, 2: 15, 3: 8, 6: 12}


def test_isomorphic_identity_map():
    d = dihedral_group(3)
    assert list(isomorphic(d, d)) == list(range(6))


def test_isomorphic_across_constructions():
    a = dihedral_group(7)
    b = dihedral_permutation_group(7)
    phi = isomorphic(a, b)
    assert phi is not None
    # explicit homomorphism check on all pairs
    assert np.array_equal(phi[a.table], b.table[phi[:, None], phi[None, :]])


def test_isomorphic_distinguishes():
    assert isomorphic(cyclic_group(6), dihedral_group(3)) is None
    assert isomorphic(cyclic_group(6), cyclic_group(7)) is None


def test_isomorphic_budget():
    a = dihedral_group(9)
    b = dihedral_permutation_group(9)
    with pytest.raises(SearchBudgetExceeded):
        isomorphic(a, b, node_budget=0)


def test_isomorphic_as_factorization_respects_factors():
    d6 = dihedral_group(3, names=("x", "y"))
    c2 = cyclic_group(2)
    g = direct_product(d6, c2)
    h1 = closure(g, [g.generators["x"], g.generators["y"]])
    k1 = closure(g, [g.generators["g"]])
    phi = isomorphic_as_factorization(g, h1, k1, g, h1, k1)
    assert phi is not None
    assert {int(phi[x]) for x in h1.members} == set(h1.members)
    # asking to swap the factors is impossible here (orders differ)
    assert isomorphic_as_factorization(g, h1, k1, g, k1, h1) is None


def test_cayley_round_trip(tmp_path):
    g = dihedral_group(3)
    text = write_cayley_text(g)
    assert text.splitlines()[0] == "order=6"
    h = read_cayley_text(text)
    assert write_cayley_text(h) == text  # bit-exact round trip
    p = tmp_path / "d6.csv"
    write_cayley(g, p)
    assert write_cayley_text(read_cayley(p)) == text


def test_cayley_rejects_corruption():
    g = dihedral_group(3)
    lines = write_cayley_text(g).splitlines()
    lines[1] = lines[1].replace("1", "2", 1)
    with pytest.raises(NotAGroup):
        read_cayley_text("\n".join(lines))
    with pytest.raises(NotAGroup):
        read_cayley_text("norder\n0")


def test_direct_product_independent_constructions_agree():
    a = direct_product(dihedral_group(3), dihedral_group(5))
    b = direct_product(dihedral_permutation_group(3), dihedral_permutation_group(5))
    assert order_profile(a) == order_profile(b)
    assert isomorphic(a, b) is not None


def test_subgroup_equality_and_membership():
    d = dihedral_group(3)
    r1 = closure(d, [1])
    r2 = closure(d, [2])
    assert r1 == r2
    assert 1 in r1 and 3 not in r1


def test_core_matches_naive_on_random_subgroups():
    rng = random.Random(7)
    g = direct_product(dihedral_group(3), dihedral_group(3))
    for _ in range(10):
        seed = [rng.randrange(g.order) for _ in range(rng.randint(1, 3))]
        s = closure(g, seed)
        got = core(g, s)
        naive = set(s.members)
        for x in range(g.order):
            xi = g.inv(x)
            naive &= {g.mul(g.mul(xi, m), x) for m in s.members}
        assert got.member_set == naive
        assert is_normal(g, got)
