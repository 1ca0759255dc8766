import numpy as np
import pytest

from ellrank.errors import ValidationError
from ellrank.groups import (FiniteGroup, burnside_orbit_count, conjugacy_classes, cyclic_group,
                            dihedral_group, direct_product, elementary_abelian_group,
                            group_from_permutations, inversion_automorphism, orbit_count,
                            parse_group_spec, quaternion_group, semidirect_product,
                            sigma_subgroup, symmetric_group, trivial_sigma)

# Latin square with identity and two-sided inverses that is not associative
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def test_preset_cyclic_1_is_trivial():
    g = parse_group_spec("cyclic 1")
    assert g.order == 1
    assert g.identity == 0


def test_preset_symmetric_3():
    g = parse_group_spec("symmetric 3")
    assert g.order == 6
    assert conjugacy_classes(g).count == 3


def test_generated_cyclic_3():
    g = group_from_permutations([[1, 2, 0]])
    assert g.order == 3
    assert g.is_abelian


def test_generated_order_is_deterministic():
    a = group_from_permutations([[1, 2, 3, 0], [1, 0, 3, 2]])
    b = group_from_permutations([[1, 2, 3, 0], [1, 0, 3, 2]])
    assert np.array_equal(a.mult, b.mult)
    assert a.content_hash == b.content_hash


def test_direct_product_parse():
    g = parse_group_spec("cyclic 2 x cyclic 3")
    assert g.order == 6
    assert g.is_abelian
    assert g.exponent == 6


def test_quaternion_classes():
    q8 = quaternion_group()
    part = conjugacy_classes(q8)
    assert part.sizes == (1, 1, 2, 2, 2)


def test_dihedral_structure():
    d6 = dihedral_group(6)
    assert d6.order == 12
    assert not d6.is_abelian
    assert sum(part_size for part_size in conjugacy_classes(d6).sizes) == 12


def test_elementary_abelian():
    g = elementary_abelian_group(3, 2)
    assert g.order == 9
    assert g.exponent == 3
    with pytest.raises(ValidationError):
        elementary_abelian_group(4, 2)


def test_table_validation_rejects_nonassociative():
    with pytest.raises(ValidationError, match="associative"):
        FiniteGroup(NONASSOC_LOOP)


def test_table_validation_rejects_non_permutation_row():
    with pytest.raises(ValidationError, match="permutation"):
        FiniteGroup([[0, 1], [1, 1]])


def test_table_validation_rejects_missing_identity():
    # Latin square without a two-sided identity
    with pytest.raises(ValidationError, match="identity"):
        FiniteGroup([[1, 0, 2], [2, 1, 0], [0, 2, 1]])


def test_large_table_sampled_validation():
    table = cyclic_group(300).mult
    g = FiniteGroup(table)  # order above the exhaustive limit: sampling path
    assert g.order == 300


def test_order_cap():
    with pytest.raises(ValidationError, match="cap"):
        group_from_permutations([[1, 2, 3, 4, 5, 6, 0]], order_cap=5)


def test_conjugacy_identity_class_first():
    for g in (symmetric_group(4), quaternion_group(), dihedral_group(5)):
        part = conjugacy_classes(g)
        assert part.classes[0] == (g.identity,)
        assert sum(part.sizes) == g.order
        rest = [(len(c), c[0]) for c in part.classes[1:]]
        assert rest == sorted(rest)


def test_abelian_classes_are_singletons():
    g = cyclic_group(7)
    assert conjugacy_classes(g).sizes == (1,) * 7


def test_sigma_subgroup_closure():
    c5 = cyclic_group(5)
    sig = sigma_subgroup(c5, [[(2 * x) % 5 for x in range(5)]])
    assert sig.order == 4


def test_sigma_trivial():
    g = cyclic_group(4)
    assert sigma_subgroup(g, []).order == 1
    assert trivial_sigma(g).order == 1


def test_sigma_inversion_order_two():
    c3 = cyclic_group(3)
    sig = sigma_subgroup(c3, [inversion_automorphism(c3).perm])
    assert sig.order == 2


def test_sigma_rejects_non_automorphism():
    c4 = cyclic_group(4)
    with pytest.raises(ValidationError, match=r"pair \("):
        sigma_subgroup(c4, [[0, 2, 1, 3]])
    with pytest.raises(ValidationError, match="identity"):
        sigma_subgroup(c4, [[1, 0, 3, 2]])


def test_semidirect_trivial_sigma_is_isomorphic():
    g = symmetric_group(3)
    h, g_embed, _ = semidirect_product(g, trivial_sigma(g))
    assert h.order == 6
    assert conjugacy_classes(h).count == conjugacy_classes(g).count
    assert list(g_embed) == list(range(6))
    assert np.array_equal(h.mult, g.mult)


def test_semidirect_c3_inversion_is_s3():
    c3 = cyclic_group(3)
    sig = sigma_subgroup(c3, [inversion_automorphism(c3).perm])
    h, g_embed, s_embed = semidirect_product(c3, sig)
    assert h.order == 6
    assert not h.is_abelian
    assert conjugacy_classes(h).count == 3
    # embeddings are group homomorphisms onto their images
    for a in range(3):
        for b in range(3):
            assert h.mul(g_embed[a], g_embed[b]) == g_embed[c3.mul(a, b)]
    for a in range(2):
        for b in range(2):
            assert h.mul(s_embed[a], s_embed[b]) == s_embed[int(sig.composition[a, b])]


def test_semidirect_twisting_law():
    g = elementary_abelian_group(2, 3)
    swap = sigma_subgroup(g, [[0, 2, 1, 3, 4, 6, 5, 7]])
    h, g_embed, s_embed = semidirect_product(g, swap)
    sigma0 = swap.elements[1]
    for x in range(g.order):
        left = h.mul(s_embed[1], g_embed[x])
        right = h.mul(g_embed[sigma0(x)], s_embed[1])
        assert left == right


def test_semidirect_order_cap():
    g = cyclic_group(40)
    sig = sigma_subgroup(g, [inversion_automorphism(g).perm])
    with pytest.raises(ValidationError, match="cap"):
        semidirect_product(g, sig, order_cap=50)


def test_orbit_count_examples():
    c3 = cyclic_group(3)
    sig = sigma_subgroup(c3, [inversion_automorphism(c3).perm])
    assert orbit_count(c3, sig) == 2
    c5 = cyclic_group(5)
    sig5 = sigma_subgroup(c5, [[(2 * x) % 5 for x in range(5)]])
    assert orbit_count(c5, sig5) == 2
    g = symmetric_group(4)
    assert orbit_count(g, trivial_sigma(g)) == 24


def test_orbit_count_matches_burnside():
    import random
    rng = random.Random(11)
    groups = [cyclic_group(n) for n in (6, 8, 9, 12, 15, 36)]
    groups.append(elementary_abelian_group(2, 3))
    for g in groups:
        sig = sigma_subgroup(g, [inversion_automorphism(g).perm])
        assert orbit_count(g, sig) == burnside_orbit_count(g, sig)
    c7 = cyclic_group(7)
    sig7 = sigma_subgroup(c7, [[(3 * x) % 7 for x in range(7)]])
    assert orbit_count(c7, sig7) == burnside_orbit_count(c7, sig7) == 2


def test_rebuild_determinism():
    a = parse_group_spec("dihedral 7")
    b = parse_group_spec("dihedral 7")
    assert a.content_hash == b.content_hash
    assert np.array_equal(a.inverse, b.inverse)


def test_unknown_preset():
    with pytest.raises(ValidationError, match="preset"):
        parse_group_spec("sporadic monster")


def test_element_orders_and_exponent():
    s4 = symmetric_group(4)
    assert max(s4.element_orders) == 4
    assert s4.exponent == 12
    assert quaternion_group().exponent == 4
