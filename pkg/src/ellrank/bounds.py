"""Assemble the Mordell-Weil rank bounds into one comparable report.

All bounds are exact rationals. A negative raw bound is clamped to zero in
the report (rank is non-negative, so the bound holds vacuously) and the
clamping is flagged rather than treated as an error, which keeps sweeps
total over arbitrary valid specs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import character_table, cyclic_subgroup, fixed_subspace_dim
from .ellenberg import build_epsilon_program, epsilon, epsilon_refined
from .errors import InternalInvariantError
from .groups import orbit_count
from .lp import fraction_from_json, fraction_to_json
from .repring import delta_multiplicity
from .surfaces import PairedSpec, SurfaceSpec, mw_quotient_class, riemann_hurwitz_genus

SILVERMAN_NOTE = ("applies to abelian groups and unramified covers; the original "
                  "statement additionally assumed a weak form of the Tate conjecture, "
                  "which this tool does not model")
REFINED_NOTE = ("heuristic: per-irreducible ceilings tighten the epsilon program "
                "beyond what the proved bound uses")


def conductor_discriminant(surface: SurfaceSpec):
    """(c_E, d_E, per-point breakdown); enforces the divisibility and
    ordering facts required of a non-isotrivial surface."""
    surface.validate()
    breakdown = {label: {"c": fiber.c, "d": fiber.d, "components": fiber.m}
                 for label, fiber in surface.bad_fibers}
    return surface.conductor_degree, surface.discriminant_degree, breakdown


def per_alpha_ceilings(spec: PairedSpec) -> tuple[int, ...]:
    """Multiplicity of each irreducible in the Mordell-Weil quotient class,
    computed both from the class and from the closed form; they must agree."""
    mw = mw_quotient_class(spec)
    table = mw.table
    closed = _closed_form_ceilings(spec, table)
    from_class = tuple(delta_multiplicity(mw, a) for a in range(table.n_irreducibles))
    if closed != from_class:
        raise InternalInvariantError(
            f"per-irreducible ceilings disagree: class gives {from_class}, "
            f"closed form gives {closed}")
    return from_class


def _closed_form_ceilings(spec: PairedSpec, table) -> tuple[int, ...]:
    surface, cover = spec.surface, spec.cover
    base = surface.conductor_degree - surface.discriminant_degree // 6 \
        + 2 * surface.base_genus - 2
    fixed_dims = []
    for _, gen in cover.branch_points:
        subgroup = cyclic_subgroup(cover.group, gen)
        fixed_dims.append([fixed_subspace_dim(table, a, subgroup)
                           for a in range(table.n_irreducibles)])
    out = []
    for a in range(table.n_irreducibles):
        deg = table.degrees[a]
        out.append(deg * base + sum(deg - dims[a] for dims in fixed_dims))
    return tuple(out)


@dataclass(frozen=True)
class BoundReport:
    """Every rank bound for one paired spec, raw and clamped, plus the data
    they came from. Holds plain values only so it serializes losslessly."""

    group_order: int
    group_hash: str
    sigma_order: int
    abelian: bool
    unramified: bool
    disjoint: bool
    base_genus: int
    cover_genus: int
    conductor_degree: int
    discriminant_degree: int
    ramification_degree: int
    n_value: int
    epsilon: Fraction
    orbit_count: int
    degrees: tuple[int, ...]
    per_alpha: tuple[int, ...]
    bound_thm11: Fraction
    bound_cor12: Fraction | None
    bound_silverman: Fraction | None
    bound_ellenberg: Fraction
    bound_five_sixths: Fraction
    clamped_thm11: Fraction = field(init=False)
    clamped_ellenberg: Fraction = field(init=False)
    clamped_five_sixths: Fraction = field(init=False)
    refined_bound: Fraction | None = None
    silverman_note: str = SILVERMAN_NOTE
    refined_note: str = REFINED_NOTE

    def __post_init__(self):
        object.__setattr__(self, "clamped_thm11", max(Fraction(0), self.bound_thm11))
        object.__setattr__(self, "clamped_ellenberg", max(Fraction(0), self.bound_ellenberg))
        object.__setattr__(self, "clamped_five_sixths", max(Fraction(0), self.bound_five_sixths))

    @property
    def was_clamped(self) -> bool:
        return self.bound_thm11 < 0


def compute_bounds(spec: PairedSpec, *, include_refined: bool = False) -> BoundReport:
    spec.validate()
    surface, cover = spec.surface, spec.cover
    c_e, d_e, _ = conductor_discriminant(surface)
    g = surface.base_genus
    deg_s = cover.ramification_degree
    eps, _certificate = epsilon(cover.group, cover.sigma)
    orbits = orbit_count(cover.group, cover.sigma)
    abelian = cover.group.is_abelian
    if abelian and eps != orbits:
        raise InternalInvariantError(
            f"abelian group but epsilon {eps} differs from orbit count {orbits}")
    n_value = c_e - d_e // 6 + 2 * g - 2 + deg_s
    unramified = deg_s == 0
    per_alpha = per_alpha_ceilings(spec)
    if any(b < 0 for b in per_alpha):
        # geometric realizability is never checked; negative multiplicities
        # mean no actual surface/cover pair realizes this configuration
        warnings.warn("quotient class has negative multiplicities; "
                      "the spec is likely not geometrically realizable")
    table = character_table(cover.group)
    refined = None
    if include_refined:
        refined = _refined_bound(spec)
    return BoundReport(
        group_order=cover.group.order,
        group_hash=cover.group.content_hash,
        sigma_order=cover.sigma.order,
        abelian=abelian,
        unramified=unramified,
        disjoint=True,
        base_genus=g,
        cover_genus=riemann_hurwitz_genus(cover, g),
        conductor_degree=c_e,
        discriminant_degree=d_e,
        ramification_degree=deg_s,
        n_value=n_value,
        epsilon=eps,
        orbit_count=orbits,
        degrees=table.degrees,
        per_alpha=per_alpha,
        bound_thm11=eps * n_value,
        bound_cor12=Fraction(orbits * n_value) if abelian else None,
        bound_silverman=Fraction(orbits * (c_e + 4 * g - 4)) if abelian and unramified else None,
        bound_ellenberg=eps * (c_e + 4 * g - 4 + 2 * deg_s),
        bound_five_sixths=eps * (Fraction(5 * c_e, 6) + 2 * g - 2 + deg_s),
        refined_bound=refined,
    )


def _refined_bound(spec: PairedSpec) -> Fraction:
    """Optimum of the epsilon LP with per-irreducible ceilings taken from the
    Mordell-Weil quotient class. The ceilings are recomputed against the
    program's own subgroup table: fixed-space dimensions and degrees are
    rational integers, hence independent of the working prime."""
    cover = spec.cover
    program = build_epsilon_program(cover.group, cover.sigma)
    ceil = _closed_form_ceilings(spec, program.table_small)
    return epsilon_refined(cover.group, cover.sigma, tuple(max(0, c) for c in ceil))


# ---------------------------------------------------------------------------
# Serialization

def _frac_or_none(q: Fraction | None):
    return None if q is None else fraction_to_json(q)


def report_to_json_dict(report: BoundReport) -> dict:
    return {
        "group": {
            "order": report.group_order,
            "hash": report.group_hash,
            "sigma_order": report.sigma_order,
            "abelian": report.abelian,
            "degrees": list(report.degrees),
        },
        "surface": {
            "base_genus": report.base_genus,
            "cover_genus": report.cover_genus,
            "conductor_degree": report.conductor_degree,
            "discriminant_degree": report.discriminant_degree,
            "ramification_degree": report.ramification_degree,
            "unramified": report.unramified,
            "disjoint": report.disjoint,
        },
        "epsilon": fraction_to_json(report.epsilon),
        "orbit_count": report.orbit_count,
        "n_value": report.n_value,
        "per_alpha": list(report.per_alpha),
        "bounds": {
            "thm11": fraction_to_json(report.bound_thm11),
            "cor12": _frac_or_none(report.bound_cor12),
            "silverman": _frac_or_none(report.bound_silverman),
            "ellenberg": fraction_to_json(report.bound_ellenberg),
            "five_sixths": fraction_to_json(report.bound_five_sixths),
        },
        "clamped": {
            "thm11": fraction_to_json(report.clamped_thm11),
            "ellenberg": fraction_to_json(report.clamped_ellenberg),
            "five_sixths": fraction_to_json(report.clamped_five_sixths),
            "was_clamped": report.was_clamped,
        },
        "refined": (None if report.refined_bound is None else {
            "bound": fraction_to_json(report.refined_bound),
            "note": report.refined_note,
        }),
        "notes": {"silverman": report.silverman_note},
    }


def report_from_json_dict(doc: dict) -> BoundReport:
    bounds = doc["bounds"]
    refined = doc.get("refined")
    return BoundReport(
        group_order=doc["group"]["order"],
        group_hash=doc["group"]["hash"],
        sigma_order=doc["group"]["sigma_order"],
        abelian=doc["group"]["abelian"],
        unramified=doc["surface"]["unramified"],
        disjoint=doc["surface"]["disjoint"],
        base_genus=doc["surface"]["base_genus"],
        cover_genus=doc["surface"]["cover_genus"],
        conductor_degree=doc["surface"]["conductor_degree"],
        discriminant_degree=doc["surface"]["discriminant_degree"],
        ramification_degree=doc["surface"]["ramification_degree"],
        n_value=doc["n_value"],
        epsilon=fraction_from_json(doc["epsilon"]),
        orbit_count=doc["orbit_count"],
        degrees=tuple(doc["group"]["degrees"]),
        per_alpha=tuple(doc["per_alpha"]),
        bound_thm11=fraction_from_json(bounds["thm11"]),
        bound_cor12=None if bounds["cor12"] is None else fraction_from_json(bounds["cor12"]),
        bound_silverman=(None if bounds["silverman"] is None
                         else fraction_from_json(bounds["silverman"])),
        bound_ellenberg=fraction_from_json(bounds["ellenberg"]),
        bound_five_sixths=fraction_from_json(bounds["five_sixths"]),
        refined_bound=None if refined is None else fraction_from_json(refined["bound"]),
        silverman_note=doc["notes"]["silverman"],
        refined_note=REFINED_NOTE if refined is None else refined["note"],
    )


def _fmt(q) -> str:
    if q is None:
        return "n/a"
    if isinstance(q, Fraction) and q.denominator == 1:
        return str(q.numerator)
    return str(q)


def report_to_text(report: BoundReport) -> str:
    rows = [
        ("group order", str(report.group_order)),
        ("sigma order", str(report.sigma_order)),
        ("abelian", "yes" if report.abelian else "no"),
        ("base genus", str(report.base_genus)),
        ("cover genus", str(report.cover_genus)),
        ("conductor degree c_E", str(report.conductor_degree)),
        ("discriminant degree d_E", str(report.discriminant_degree)),
        ("branch points deg S", str(report.ramification_degree)),
        ("epsilon", _fmt(report.epsilon)),
        ("orbit count", str(report.orbit_count)),
        ("N = c_E - d_E/6 + 2g - 2 + deg S", str(report.n_value)),
        ("per-irreducible ceilings", " ".join(map(str, report.per_alpha))),
        ("rank bound (main)", f"{_fmt(report.clamped_thm11)} (raw {_fmt(report.bound_thm11)})"),
        ("rank bound (abelian form)", _fmt(report.bound_cor12)),
        ("rank bound (unramified abelian)", _fmt(report.bound_silverman)),
        ("rank bound (prior general)", _fmt(report.bound_ellenberg)),
        ("rank bound (5/6 variant)", _fmt(report.bound_five_sixths)),
    ]
    if report.refined_bound is not None:
        rows.append(("rank bound (refined, heuristic)", _fmt(report.refined_bound)))
    width = max(len(k) for k, _ in rows)
    lines = [f"{k.ljust(width)} : {v}" for k, v in rows]
    if report.bound_silverman is not None:
        lines.append(f"note: unramified abelian bound {report.silverman_note}")
    if report.refined_bound is not None:
        lines.append(f"note: refined bound is {report.refined_note}")
    return "\n".join(lines) + "\n"
