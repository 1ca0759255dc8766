import random

import pytest

from ellrank.characters import character_table
from ellrank.errors import ValidationError
from ellrank.groups import cyclic_group, parse_group_spec, symmetric_group
from ellrank.sheaves import (ConstructibleSheafData, conductor, gos_euler, isotypic_piece,
                             local_conductors, sheaf_from_json_dict, sheaf_to_json_dict, tensor)


def test_conductor_examples():
    assert conductor(ConstructibleSheafData(3, {})) == 0
    assert conductor(ConstructibleSheafData(2, {"x": 1})) == 1
    f = ConstructibleSheafData(2, {"x": 1, "y": 0})
    assert conductor(f) == 3
    assert local_conductors(f) == {"x": 1, "y": 2}


def test_redundant_stalks_dropped():
    f = ConstructibleSheafData(2, {"x": 2, "y": 1})
    assert f.exceptional_labels == ("y",)
    assert f.stalk("x") == 2
    assert f.stalk("z") == 2


def test_skyscraper():
    s = ConstructibleSheafData(0, {"x": 2, "y": 3})
    assert conductor(s) == -5
    assert gos_euler(0, s) == 5


def test_stalk_above_rank_warns():
    with pytest.warns(UserWarning, match="above rank"):
        ConstructibleSheafData(1, {"x": 5})


def test_tensor_locally_free_factor():
    f = ConstructibleSheafData(1, {"x": 0})
    g = ConstructibleSheafData(3, {})
    out = tensor(f, g)
    assert out.rank == 3
    assert local_conductors(out)["x"] == 3  # rank(G) * c_x(F)


def test_tensor_with_unit():
    f = ConstructibleSheafData(2, {"x": 1})
    unit = ConstructibleSheafData(1, {})
    assert tensor(f, unit) == f
    assert tensor(unit, f) == f


def test_tensor_rejects_shared_exceptional_point():
    f = ConstructibleSheafData(2, {"x": 1})
    g = ConstructibleSheafData(2, {"x": 0})
    with pytest.raises(ValidationError, match="locally free"):
        tensor(f, g)


def test_tensor_conductor_rule_random_disjoint():
    rng = random.Random(101)
    for _ in range(60):
        rf = rng.randint(1, 4)
        rg = rng.randint(1, 4)
        f = ConstructibleSheafData(
            rf, {f"p{i}": rng.randint(0, rf) for i in range(rng.randint(0, 3))})
        g = ConstructibleSheafData(
            rg, {f"q{i}": rng.randint(0, rg) for i in range(rng.randint(0, 3))})
        out = tensor(f, g)
        assert conductor(out) == rg * conductor(f) + rf * conductor(g)


def test_gos_examples():
    for genus in (0, 1, 2):
        assert gos_euler(genus, ConstructibleSheafData(1, {})) == 2 - 2 * genus
    assert gos_euler(0, ConstructibleSheafData(2, {"x": 0, "y": 0})) == 0


def test_conductor_additive_over_pointwise_sums():
    f = ConstructibleSheafData(2, {"x": 1})
    g = ConstructibleSheafData(3, {"x": 2, "y": 0})
    direct_sum = ConstructibleSheafData(5, {"x": 3, "y": 2})
    assert conductor(direct_sum) == conductor(f) + conductor(g)


def test_isotypic_trivial_character():
    t = character_table(symmetric_group(3))
    piece = isotypic_piece(t, 0, {"b0": 1, "b1": 3})
    assert piece.rank == 1
    assert conductor(piece) == 0


def test_isotypic_sign_character_z2():
    t = character_table(cyclic_group(2))
    piece = isotypic_piece(t, 1, {"b0": 1})
    assert piece.rank == 1
    assert piece.stalk("b0") == 0
    assert local_conductors(piece) == {"b0": 1}


def test_isotypic_stalk_sum_identity():
    """sum over irreducibles of deg * fixed-dim = index of the inertia
    subgroup, the dimension of the full pushforward stalk."""
    rng = random.Random(8)
    for spec in ("symmetric 4", "quaternion 8", "cyclic 12", "dihedral 6"):
        g = parse_group_spec(spec)
        t = character_table(g)
        non_identity = [x for x in range(g.order) if x != g.identity]
        for gen in rng.sample(non_identity, 3):
            pieces = [isotypic_piece(t, a, {"b": gen}) for a in range(t.n_irreducibles)]
            total = sum(t.degrees[a] * pieces[a].stalk("b")
                        for a in range(t.n_irreducibles))
            assert total == g.order // g.element_orders[gen]


def test_json_round_trip():
    f = ConstructibleSheafData(2, {"x": 1, "y": 0})
    assert sheaf_from_json_dict(sheaf_to_json_dict(f)) == f
