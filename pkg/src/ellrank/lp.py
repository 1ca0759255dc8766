"""Exact rational linear programming.

solve_lp runs a dense two-phase tableau simplex with Bland's anti-cycling
rule. The tableau is kept fraction-free: an integer matrix T together with a
scalar denominator d represents the rational tableau T/d, and each pivot
updates T by the Bareiss-style cross-multiplication step whose divisions are
exact. Arithmetic runs in int64 while entries stay small and falls back to
Python integers when they do not, so results are exact in all cases.

enumerate_vertices is the independent brute-force oracle: it solves every
n-subset of constraint hyperplanes with Fraction arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import InternalInvariantError, ValidationError

_INT64_GUARD = 1 << 30
_VERTEX_DIM_LIMIT = 8
_VERTEX_CONSTRAINT_LIMIT = 24

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise ValidationError("floating-point LP data is not allowed; pass int, Fraction or str")
    return Fraction(x)


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x  subject to  matrix . x <= bounds, x >= 0."""

    objective: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    bounds: tuple[Fraction, ...]

    def __post_init__(self):
        obj = tuple(_as_fraction(v) for v in self.objective)
        rows = tuple(tuple(_as_fraction(v) for v in row) for row in self.matrix)
        b = tuple(_as_fraction(v) for v in self.bounds)
        if len(rows) != len(b):
            raise ValidationError("constraint matrix and bounds disagree on row count")
        for row in rows:
            if len(row) != len(obj):
                raise ValidationError("constraint row length differs from objective length")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "bounds", b)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    @property
    def n_constraints(self) -> int:
        return len(self.bounds)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None
    optimizer: tuple[Fraction, ...] | None


class _NeedBigInts(Exception):
    pass


def solve_lp(lp: LinearProgram) -> LPResult:
    """Exact optimum with an optimal basic solution as certificate.

    Deterministic: Bland's rule picks the lowest-index entering column and
    breaks ratio-test ties by the lowest basis variable index."""
    try:
        return _solve(lp, np.int64)
    except (_NeedBigInts, OverflowError):
        return _solve(lp, object)


def _solve(lp: LinearProgram, dtype) -> LPResult:
    n, m = lp.n_vars, lp.n_constraints
    row_scale = [lcm(*(v.denominator for v in (*row, rhs)))
                 for row, rhs in zip(lp.matrix, lp.bounds)] if m else []
    obj_scale = lcm(*(v.denominator for v in lp.objective)) if n else 1
    a_int = [[int(v * s) for v in row] for row, s in zip(lp.matrix, row_scale)]
    b_int = [int(v * s) for v, s in zip(lp.bounds, row_scale)]
    c_int = [int(v * obj_scale) for v in lp.objective]
    if dtype is not object:
        magnitude = max((abs(v) for row in (*a_int, b_int, c_int) for v in row), default=0)
        if magnitude >= _INT64_GUARD:
            raise _NeedBigInts

    neg_rows = [i for i in range(m) if b_int[i] < 0]
    n_art = len(neg_rows)
    # columns: structural | slacks | artificials | rhs
    # rows: constraints, then the phase-2 and phase-1 objective rows
    width = n + m + n_art + 1
    tab = np.zeros((m + 2, width), dtype=dtype)
    basis = [0] * m
    art_col = {}
    next_art = n + m
    for i in range(m):
        sign = -1 if i in neg_rows else 1
        for j, v in enumerate(a_int[i]):
            tab[i, j] = sign * v
        tab[i, n + i] = sign
        tab[i, width - 1] = sign * b_int[i]
        if sign < 0:
            tab[i, next_art] = 1
            basis[i] = next_art
            art_col[i] = next_art
            next_art += 1
        else:
            basis[i] = n + i
    for j, v in enumerate(c_int):
        tab[m, j] = -v
    for i in neg_rows:
        tab[m + 1, art_col[i]] = 1
    for i in neg_rows:
        tab[m + 1] = tab[m + 1] - tab[i]

    state = _Tableau(tab, basis, n, m, dtype)

    if n_art:
        unbounded = state.run_simplex(phase1=True, allowed_cols=range(n + m + n_art))
        if unbounded:
            raise InternalInvariantError("phase-1 objective cannot be unbounded")
        if state.objective_rhs(phase1=True) != 0:
            return LPResult(INFEASIBLE, None, None)
        state.drive_out_artificials(set(art_col.values()))

    unbounded = state.run_simplex(phase1=False, allowed_cols=range(n + m))
    if unbounded:
        return LPResult(UNBOUNDED, None, None)

    d = state.denom
    x = [Fraction(0)] * n
    for i, var in enumerate(state.basis):
        if var < n:
            x[var] = Fraction(int(state.tab[i, -1]), d)
    value = state.objective_rhs(phase1=False) / obj_scale
    return LPResult(OPTIMAL, value, tuple(x))


class _Tableau:
    """Fraction-free simplex tableau: integer matrix tab plus denominator
    denom; the rational tableau is tab/denom and denom may be negative."""

    def __init__(self, tab, basis, n_vars, n_rows, dtype):
        self.tab = tab
        self.basis = basis
        self.n_vars = n_vars
        self.n_rows = n_rows
        self.denom = 1
        self.dtype = dtype

    def _positive(self, value) -> bool:
        """Sign of the rational entry value/denom."""
        return (value > 0) == (self.denom > 0) and value != 0

    def _objective_row(self, phase1: bool) -> int:
        return self.n_rows + (1 if phase1 else 0)

    def objective_rhs(self, phase1: bool) -> Fraction:
        return Fraction(int(self.tab[self._objective_row(phase1), -1]), self.denom)

    def pivot(self, r: int, s: int) -> None:
        tab = self.tab
        piv = int(tab[r, s])
        if piv == 0:
            raise InternalInvariantError("attempted pivot on a zero entry")
        saved = tab[r].copy()
        col = tab[:, s].copy()
        tab *= piv
        tab -= np.outer(col, saved)
        tab //= self.denom
        tab[r] = saved
        self.denom = piv
        self.basis[r] = s
        if self.dtype is not object and int(np.abs(tab).max()) >= _INT64_GUARD:
            raise _NeedBigInts

    def run_simplex(self, phase1: bool, allowed_cols) -> bool:
        """Bland-rule simplex on the selected objective row. True if unbounded."""
        tab = self.tab
        objective_row = self._objective_row(phase1)
        limit = 1000 + 50 * tab.shape[0] * tab.shape[1]
        for _ in range(limit):
            entering = None
            zrow = tab[objective_row]
            for j in allowed_cols:
                if zrow[j] != 0 and not self._positive(int(zrow[j])):
                    entering = j
                    break
            if entering is None:
                return False
            leaving = None
            for i in range(self.n_rows):
                if not self._positive(int(tab[i, entering])):
                    continue
                if leaving is None:
                    leaving = i
                    continue
                lhs = int(tab[i, -1]) * int(tab[leaving, entering])
                rhs = int(tab[leaving, -1]) * int(tab[i, entering])
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[leaving]):
                    leaving = i
            if leaving is None:
                return True
            self.pivot(leaving, entering)
        raise InternalInvariantError("simplex exceeded its iteration limit")

    def drive_out_artificials(self, art_cols: set[int]) -> None:
        """Pivot basic artificials onto real columns; drop redundant rows."""
        keep_rows = []
        for i in range(self.n_rows):
            if self.basis[i] not in art_cols:
                keep_rows.append(i)
                continue
            pivot_col = None
            for j in range(self.n_vars + self.n_rows):
                if j not in art_cols and self.tab[i, j] != 0:
                    pivot_col = j
                    break
            if pivot_col is not None:
                self.pivot(i, pivot_col)
                keep_rows.append(i)
        if len(keep_rows) != self.n_rows:
            extra = [self.n_rows, self.n_rows + 1]  # the two objective rows
            self.tab = self.tab[keep_rows + extra]
            self.basis = [self.basis[i] for i in keep_rows]
            self.n_rows = len(keep_rows)
        drop = sorted(art_cols, reverse=True)
        for col in drop:
            self.tab = np.delete(self.tab, col, axis=1)


# ---------------------------------------------------------------------------
# Brute-force vertex oracle

def enumerate_vertices(lp: LinearProgram) -> list[tuple[Fraction, ...]]:
    """All basic feasible solutions, exactly; the independent oracle for
    solve_lp on small instances."""
    n, m = lp.n_vars, lp.n_constraints
    if n > _VERTEX_DIM_LIMIT:
        raise ValidationError(f"vertex enumeration limited to dimension {_VERTEX_DIM_LIMIT}")
    if m > _VERTEX_CONSTRAINT_LIMIT:
        raise ValidationError(
            f"vertex enumeration limited to {_VERTEX_CONSTRAINT_LIMIT} constraints")
    rows = [list(r) + [b] for r, b in zip(lp.matrix, lp.bounds)]
    for j in range(n):
        unit = [Fraction(0)] * (n + 1)
        unit[j] = Fraction(-1)
        rows.append(unit)  # -x_j <= 0
    vertices = set()
    for combo in itertools.combinations(range(len(rows)), n):
        system = [rows[i] for i in combo]
        x = _solve_square([r[:n] for r in system], [r[n] for r in system])
        if x is None:
            continue
        if _feasible(lp, x):
            vertices.add(tuple(x))
    return sorted(vertices)


def _solve_square(a, b):
    n = len(b)
    aug = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def _feasible(lp: LinearProgram, x) -> bool:
    if any(v < 0 for v in x):
        return False
    for row, b in zip(lp.matrix, lp.bounds):
        if sum(c * v for c, v in zip(row, x)) > b:
            return False
    return True


def max_over_vertices(lp: LinearProgram) -> Fraction | None:
    verts = enumerate_vertices(lp)
    if not verts:
        return None
    return max(sum(c * v for c, v in zip(lp.objective, x)) for x in verts)


# ---------------------------------------------------------------------------
# Serialization (debugging aid)

def fraction_to_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def fraction_from_json(doc) -> Fraction:
    return Fraction(int(doc["num"]), int(doc["den"]))


def lp_to_json_dict(lp: LinearProgram) -> dict:
    return {
        "objective": [fraction_to_json(v) for v in lp.objective],
        "matrix": [[fraction_to_json(v) for v in row] for row in lp.matrix],
        "bounds": [fraction_to_json(v) for v in lp.bounds],
    }
