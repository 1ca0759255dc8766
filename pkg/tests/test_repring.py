import random

import pytest

from ellrank.characters import character_table
from ellrank.errors import ValidationError
from ellrank.groups import cyclic_group, parse_group_spec, quaternion_group, symmetric_group
from ellrank.repring import (VirtualCharacter, chi_pullback_line_bundle, delta_multiplicity,
                             dual, irreducible_class, regular_class, vc_from_json_dict,
                             vc_to_json_dict, zero_class)


def test_regular_class_examples():
    t1 = character_table(cyclic_group(1))
    assert regular_class(t1).coeffs == (1,)
    assert regular_class(t1).dimension == 1
    t3 = character_table(symmetric_group(3))
    assert regular_class(t3).coeffs == (1, 1, 2)
    assert regular_class(t3).dimension == 6
    t4 = character_table(cyclic_group(4))
    assert regular_class(t4).coeffs == (1, 1, 1, 1)


def test_delta_multiplicity():
    t = character_table(symmetric_group(3))
    reg = regular_class(t)
    for a in range(3):
        assert delta_multiplicity(reg, a) == t.degrees[a]
        assert delta_multiplicity(zero_class(t), a) == 0
    sgn = next(i for i in range(3) if t.degrees[i] == 1
               and any(int(v) != 1 for v in t.values[i]))
    chi = VirtualCharacter(t, tuple(2 if i == 0 else 0 for i in range(3)))
    combo = 4 * regular_class(t) - 2 * chi
    assert delta_multiplicity(combo, sgn) == 4
    with pytest.raises(ValidationError):
        delta_multiplicity(reg, 5)


def test_delta_linearity():
    t = character_table(quaternion_group())
    rng = random.Random(2)
    for _ in range(20):
        v = VirtualCharacter(t, tuple(rng.randint(-9, 9) for _ in range(5)))
        w = VirtualCharacter(t, tuple(rng.randint(-9, 9) for _ in range(5)))
        for a in range(5):
            assert delta_multiplicity(v + w, a) == delta_multiplicity(v, a) \
                + delta_multiplicity(w, a)


def test_dual_regular_self():
    for g in (symmetric_group(4), cyclic_group(6), quaternion_group()):
        t = character_table(g)
        assert dual(regular_class(t)).coeffs == regular_class(t).coeffs


def test_dual_is_involution():
    t = character_table(parse_group_spec("cyclic 5"))
    rng = random.Random(9)
    for _ in range(20):
        v = VirtualCharacter(t, tuple(rng.randint(-7, 7) for _ in range(5)))
        assert dual(dual(v)).coeffs == v.coeffs


def test_dual_swaps_conjugate_cyclic3_characters():
    t = character_table(cyclic_group(3))
    perm = t.dual_permutation
    assert perm[0] == 0
    assert perm[1] == 2 and perm[2] == 1
    v = VirtualCharacter(t, (0, 5, -3))
    assert dual(v).coeffs == (0, -3, 5)


def test_dual_fixes_real_characters():
    t = character_table(symmetric_group(4))  # all characters real
    assert t.dual_permutation == tuple(range(5))


def test_chi_pullback():
    t = character_table(symmetric_group(3))
    chi0 = zero_class(t)
    assert chi_pullback_line_bundle(chi0, 0).coeffs == (0, 0, 0)
    assert chi_pullback_line_bundle(chi0, 3).coeffs == (3, 3, 6)
    v = VirtualCharacter(t, (1, -2, 4))
    out = chi_pullback_line_bundle(v, 5)
    assert out.dimension == v.dimension + 5 * 6


def test_mixed_table_arithmetic_rejected():
    ta = character_table(cyclic_group(3))
    tb = character_table(cyclic_group(4))
    with pytest.raises(ValidationError, match="incomparable"):
        regular_class(ta) + VirtualCharacter(tb, (1, 0, 0, 0))


def test_coefficient_length_checked():
    t = character_table(cyclic_group(3))
    with pytest.raises(ValidationError):
        VirtualCharacter(t, (1, 2))


def test_json_round_trip():
    t = character_table(quaternion_group())
    v = VirtualCharacter(t, (1, -2, 0, 7, 3))
    doc = vc_to_json_dict(v)
    assert vc_from_json_dict(doc, t) == v
    other = character_table(cyclic_group(5))
    with pytest.raises(ValidationError):
        vc_from_json_dict(doc, other)


def test_irreducible_class_basis():
    t = character_table(symmetric_group(3))
    v = irreducible_class(t, 2)
    assert v.coeffs == (0, 0, 1)
    assert v.dimension == 2
