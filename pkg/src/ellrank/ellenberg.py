"""Build and solve the Ellenberg-constant linear program.

Variables are the irreducibles of the semidirect product, the objective is
the coset-character pairing, and the constraints say the restriction stays
below the regular character of the acting group. The polytope is compact,
so the optimum always exists and is reported as an exact rational with an
optimal vertex certificate in the deterministic irreducible order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import CharacterTable, character_table, coset_character, restriction_matrix
from .errors import InternalInvariantError, ValidationError
from .groups import FiniteGroup, SigmaAction, orbit_count, semidirect_product
from .lp import OPTIMAL, LinearProgram, solve_lp

_EPSILON_MEMO: dict[tuple[str, str], tuple[Fraction, tuple[Fraction, ...]]] = {}


@dataclass(frozen=True)
class EpsilonProgram:
    """The exact LP whose optimum is epsilon(G, Sigma)."""

    table_big: CharacterTable
    table_small: CharacterTable
    restriction: tuple[tuple[int, ...], ...]
    coset_coeffs: tuple[int, ...]
    regular_coeffs: tuple[int, ...]
    lp: LinearProgram


def build_epsilon_program(group: FiniteGroup, sigma: SigmaAction) -> EpsilonProgram:
    """One variable per irreducible of G x| Sigma, constrained by one row per
    irreducible of G; both tables are built at the product's field prime so
    the restriction pairing is well-defined."""
    product, g_embed, sigma_embed = semidirect_product(group, sigma)
    table_big = character_table(product)
    table_small = character_table(group, prime=table_big.prime)
    restriction = restriction_matrix(table_big, table_small, g_embed)
    coset = coset_character(table_big, sigma_embed)
    degrees = table_small.degrees
    lp = LinearProgram(
        objective=tuple(Fraction(c) for c in coset),
        matrix=tuple(tuple(Fraction(v) for v in row) for row in restriction),
        bounds=tuple(Fraction(d) for d in degrees),
    )
    return EpsilonProgram(table_big, table_small, restriction, coset, degrees, lp)


def epsilon(group: FiniteGroup, sigma: SigmaAction) -> tuple[Fraction, tuple[Fraction, ...]]:
    """epsilon(G, Sigma) together with an optimal character certificate."""
    key = (group.content_hash, sigma.content_hash)
    cached = _EPSILON_MEMO.get(key)
    if cached is not None:
        return cached
    program = build_epsilon_program(group, sigma)
    result = solve_lp(program.lp)
    if result.status != OPTIMAL:
        raise InternalInvariantError(
            f"epsilon program must be solvable (zero is feasible, constraints are "
            f"bounded) but the solver reported {result.status!r}")
    out = (result.value, result.optimizer)
    _EPSILON_MEMO[key] = out
    return out


def epsilon_value(group: FiniteGroup, sigma: SigmaAction) -> Fraction:
    return epsilon(group, sigma)[0]


def epsilon_refined(group: FiniteGroup, sigma: SigmaAction, ceilings) -> Fraction:
    """Optimum of the epsilon LP with the regular-character bounds replaced by
    explicit per-irreducible ceilings.

    This tightening is a heuristic: the theorem behind the rank bound only
    justifies the uniform ceilings deg * N, so reports label this value
    accordingly rather than as a proved bound."""
    ceil = [int(c) for c in ceilings]
    if any(c < 0 for c in ceil):
        raise ValidationError("refined ceilings must be non-negative")
    program = build_epsilon_program(group, sigma)
    if len(ceil) != len(program.regular_coeffs):
        raise ValidationError(
            f"expected {len(program.regular_coeffs)} ceilings, got {len(ceil)}")
    lp = LinearProgram(program.lp.objective, program.lp.matrix,
                       tuple(Fraction(c) for c in ceil))
    result = solve_lp(lp)
    if result.status != OPTIMAL:
        raise InternalInvariantError(f"refined epsilon LP reported {result.status!r}")
    return result.value


def epsilon_orbit_pair(group: FiniteGroup, sigma: SigmaAction) -> tuple[Fraction, int]:
    """(epsilon, orbit count); for abelian groups the two must agree, and the
    caller is expected to treat a mismatch as a hard failure."""
    value = epsilon_value(group, sigma)
    orbits = orbit_count(group, sigma)
    if group.is_abelian and value != orbits:
        raise InternalInvariantError(
            f"abelian group: epsilon {value} differs from orbit count {orbits}")
    return value, orbits
