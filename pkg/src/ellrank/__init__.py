"""ellrank: exact Ellenberg constants and Mordell-Weil rank bounds for
elliptic surfaces under Galois covers of the base curve."""

from .bounds import (BoundReport, compute_bounds, conductor_discriminant, per_alpha_ceilings,
                     report_from_json_dict, report_to_json_dict, report_to_text)
from .characters import (CharacterTable, character_table, coset_character, cyclic_subgroup,
                         fixed_subspace_dim, inner_product, restriction_matrix)
from .ellenberg import (EpsilonProgram, build_epsilon_program, epsilon, epsilon_refined,
                      epsilon_value)
from .errors import EllrankError, InternalInvariantError, LiftRangeError, ValidationError
from .groups import (Automorphism, ClassPartition, FiniteGroup, SigmaAction,
                     burnside_orbit_count, conjugacy_classes, cyclic_group, dihedral_group,
                     direct_product, elementary_abelian_group, group_from_permutations,
                     inversion_automorphism, orbit_count, parse_group_spec, quaternion_group,
                     semidirect_product, sigma_subgroup, symmetric_group, trivial_sigma)
from .lp import (LinearProgram, LPResult, enumerate_vertices, max_over_vertices, solve_lp)
from .repring import (VirtualCharacter, chi_pullback_line_bundle, delta_multiplicity, dual,
                      irreducible_class, regular_class, zero_class)
from .sheaves import (ConstructibleSheafData, conductor, gos_euler, isotypic_piece,
                      local_conductors, tensor)
from .surfaces import (CoverSpec, KodairaFiber, PairedSpec, SurfaceSpec, chi_g_constant_sheaf,
                       equivariant_gos, h1_r1_class, h2_dimension, h2_structure,
                       isotypic_sheaf, mw_quotient_class, riemann_hurwitz_genus)

__version__ = "0.1.0"
