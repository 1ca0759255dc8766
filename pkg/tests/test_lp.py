import random
from fractions import Fraction

import pytest

from ellrank.errors import ValidationError
from ellrank.lp import (INFEASIBLE, OPTIMAL, UNBOUNDED, LinearProgram, enumerate_vertices,
                        fraction_from_json, fraction_to_json, lp_to_json_dict,
                        max_over_vertices, solve_lp)


def test_basic_optimum():
    res = solve_lp(LinearProgram((1, 1), ((1, 0), (0, 1)), (1, 2)))
    assert res.status == OPTIMAL
    assert res.value == 3
    assert res.optimizer == (1, 2)


def test_infeasible():
    assert solve_lp(LinearProgram((1,), ((1,),), (-1,))).status == INFEASIBLE


def test_unbounded():
    assert solve_lp(LinearProgram((1,), (), ())).status == UNBOUNDED


def test_unit_square_vertices():
    verts = enumerate_vertices(LinearProgram((1, 1), ((1, 0), (0, 1)), (1, 1)))
    assert len(verts) == 4


def test_empty_feasible_region_vertices():
    assert enumerate_vertices(LinearProgram((1,), ((1,),), (-2,))) == []


def test_rational_data():
    lp = LinearProgram((Fraction(1, 3),), ((Fraction(2, 5),),), (Fraction(3, 7),))
    res = solve_lp(lp)
    assert res.status == OPTIMAL
    assert res.optimizer[0] == Fraction(15, 14)
    assert res.value == Fraction(1, 3) * Fraction(15, 14)


def test_floats_rejected():
    with pytest.raises(ValidationError):
        LinearProgram((0.5,), ((1,),), (1,))


def test_negative_rhs_phase_one():
    # x + y >= 2 encoded as -x - y <= -2, maximize -x - y: optimum -2
    lp = LinearProgram((-1, -1), ((-1, -1),), (-2,))
    res = solve_lp(lp)
    assert res.status == OPTIMAL
    assert res.value == -2
    assert sum(res.optimizer) == 2


def test_degenerate_equality_like():
    # x <= 1 and -x <= -1 pins x = 1
    lp = LinearProgram((5,), ((1,), (-1,)), (1, -1))
    res = solve_lp(lp)
    assert res.status == OPTIMAL
    assert res.optimizer == (1,)
    assert res.value == 5


def test_random_lps_match_vertex_oracle():
    rng = random.Random(20250810)
    checked = 0
    for trial in range(200):
        n = rng.randint(1, 6)
        m = rng.randint(1, 6)
        # mix signed and non-negative right-hand sides: both phases get exercised
        lo = -5 if trial % 3 == 0 else 0
        lp = LinearProgram(
            tuple(rng.randint(-5, 5) for _ in range(n)),
            tuple(tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(m))
            + ((1,) * n,),
            tuple(rng.randint(lo, 5) for _ in range(m)) + (5,),
        )
        res = solve_lp(lp)
        oracle = max_over_vertices(lp)
        if res.status == OPTIMAL:
            assert oracle == res.value
            assert all(x >= 0 for x in res.optimizer)
            for row, b in zip(lp.matrix, lp.bounds):
                assert sum(c * x for c, x in zip(row, res.optimizer)) <= b
            assert sum(c * x for c, x in zip(lp.objective, res.optimizer)) == res.value
            checked += 1
        elif res.status == INFEASIBLE:
            assert oracle is None
        else:
            raise AssertionError("bounded feasible region cannot be unbounded")
    assert checked > 120


def test_permutation_invariance():
    rng = random.Random(77)
    for _ in range(25):
        n, m = 4, 4
        obj = [rng.randint(-4, 4) for _ in range(n)]
        mat = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(0, 6) for _ in range(m)]
        base = solve_lp(LinearProgram(tuple(obj), tuple(map(tuple, mat)), tuple(b)))
        rows = list(range(m))
        cols = list(range(n))
        rng.shuffle(rows)
        rng.shuffle(cols)
        permuted = LinearProgram(
            tuple(obj[c] for c in cols),
            tuple(tuple(mat[r][c] for c in cols) for r in rows),
            tuple(b[r] for r in rows),
        )
        other = solve_lp(permuted)
        assert other.status == base.status
        if base.status == OPTIMAL:
            assert other.value == base.value


def test_determinism():
    lp = LinearProgram((3, 1, 2), ((1, 1, 3), (2, 2, 5), (4, 1, 2)), (30, 24, 36))
    first = solve_lp(lp)
    second = solve_lp(lp)
    assert first == second
    assert first.value == max_over_vertices(lp)


def test_bigint_fallback_matches_oracle():
    big = 10 ** 14
    lp = LinearProgram((big, big + 1), ((big, 1), (1, big)), (big * big, big * big))
    res = solve_lp(lp)
    assert res.status == OPTIMAL
    assert res.value == max_over_vertices(lp)


def test_vertex_guard_limits():
    with pytest.raises(ValidationError):
        enumerate_vertices(LinearProgram((1,) * 9, (), ()))
    with pytest.raises(ValidationError):
        enumerate_vertices(LinearProgram((1,), ((1,),) * 25, (1,) * 25))


def test_json_serialization():
    lp = LinearProgram((Fraction(1, 2),), ((Fraction(3),),), (Fraction(5, 4),))
    doc = lp_to_json_dict(lp)
    assert doc["objective"][0] == {"num": "1", "den": "2"}
    assert fraction_from_json(fraction_to_json(Fraction(-7, 3))) == Fraction(-7, 3)
