"""Elliptic surface and Galois cover data: Kodaira fiber bookkeeping,
Riemann-Hurwitz genus, and the equivariant Euler-characteristic classes of
the pushforward machinery."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources

from .characters import character_table, cyclic_subgroup
from .errors import InternalInvariantError, ValidationError
from .groups import FiniteGroup, SigmaAction
from .repring import VirtualCharacter, regular_class
from .sheaves import ConstructibleSheafData, gos_euler, isotypic_piece

_KODAIRA_RE = re.compile(r"^(I{1,3}|IV)(?:_?(\d+))?(\*?)$")


@lru_cache(maxsize=1)
def kodaira_families() -> dict:
    """The shipped read-only table of local fiber invariants."""
    with resources.files("ellrank.data").joinpath("kodaira_fibers.json").open() as fh:
        return json.load(fh)["families"]


@dataclass(frozen=True)
class KodairaFiber:
    """One singular fiber: its Kodaira kind plus the derived local exponents
    (d discriminant, c conductor) and component count m."""

    kind: str
    n: int
    d: int
    c: int
    m: int

    @staticmethod
    def from_kind(kind: str) -> "KodairaFiber":
        name, n = _parse_kind(kind)
        families = kodaira_families()
        fam = families[name]
        if fam["parametric"]:
            if n is None or n < fam["min_n"]:
                raise ValidationError(f"Kodaira kind {kind!r} needs a parameter n >= {fam['min_n']}")
            return KodairaFiber(name.replace("n", str(n)), n, fam["d0"] + n, fam["c"], fam["m0"] + n)
        if n not in (None, 0):
            raise ValidationError(f"Kodaira kind {name!r} takes no parameter")
        return KodairaFiber(name, 0, fam["d0"], fam["c"], fam["m0"])


def _parse_kind(kind: str) -> tuple[str, int | None]:
    text = str(kind).strip().replace(" ", "")
    match = _KODAIRA_RE.match(text.upper())
    if not match:
        raise ValidationError(f"unknown Kodaira kind {kind!r}")
    roman, digits, star = match.groups()
    n = int(digits) if digits is not None else None
    if roman == "I" and star == "":
        if n is None:
            raise ValidationError("kind I_n needs n >= 1")
        if n == 0:
            raise ValidationError("I_0 is a smooth fiber, not a bad one")
        return "In", n
    if roman == "I" and star == "*":
        if n is None or n == 0:
            return "I0*", None
        return "In*", n
    name = roman + star
    if name not in kodaira_families():
        raise ValidationError(f"unknown Kodaira kind {kind!r}")
    return name, n


@dataclass(frozen=True)
class SurfaceSpec:
    """A non-isotrivial relatively minimal elliptic surface over a base curve,
    described by its genus and its singular fiber configuration."""

    base_genus: int
    bad_fibers: tuple[tuple[str, KodairaFiber], ...]

    def __init__(self, base_genus: int, bad_fibers):
        if base_genus < 0:
            raise ValidationError("base genus must be non-negative")
        if isinstance(bad_fibers, dict):
            items = list(bad_fibers.items())
        else:
            items = list(bad_fibers)
        fibers = []
        seen = set()
        for label, fiber in sorted((str(k), v) for k, v in items):
            if label in seen:
                raise ValidationError(f"duplicate fiber label {label!r}")
            seen.add(label)
            if not isinstance(fiber, KodairaFiber):
                fiber = KodairaFiber.from_kind(fiber)
            fibers.append((label, fiber))
        object.__setattr__(self, "base_genus", int(base_genus))
        object.__setattr__(self, "bad_fibers", tuple(fibers))

    @cached_property
    def conductor_degree(self) -> int:
        return sum(f.c for _, f in self.bad_fibers)

    @cached_property
    def discriminant_degree(self) -> int:
        return sum(f.d for _, f in self.bad_fibers)

    @property
    def fiber_labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.bad_fibers)

    def validate(self) -> None:
        c_e, d_e = self.conductor_degree, self.discriminant_degree
        if d_e == 0:
            raise ValidationError("no singular fibers: the surface is isotrivial, rejected")
        if d_e % 12 != 0:
            raise ValidationError(f"discriminant degree {d_e} is not divisible by 12")
        if d_e < 12:
            raise ValidationError(f"discriminant degree {d_e} is below 12")
        if c_e < 1:
            raise ValidationError("conductor degree must be at least 1")
        if c_e > d_e:
            raise InternalInvariantError("conductor degree exceeded discriminant degree")


@dataclass(frozen=True)
class CoverSpec:
    """A Galois cover of the base curve: the group, the outer action, and the
    branch points with their (cyclic) inertia generators."""

    group: FiniteGroup
    sigma: SigmaAction
    branch_points: tuple[tuple[str, int], ...]

    def __init__(self, group: FiniteGroup, sigma: SigmaAction, branch_points=()):
        if isinstance(branch_points, dict):
            items = list(branch_points.items())
        else:
            items = list(branch_points)
        points = []
        seen = set()
        for label, gen in sorted((str(k), int(v)) for k, v in items):
            if label in seen:
                raise ValidationError(f"duplicate branch label {label!r}")
            seen.add(label)
            if not 0 <= gen < group.order:
                raise ValidationError(f"inertia generator {gen} out of range at {label!r}")
            if gen == group.identity:
                raise ValidationError(
                    f"trivial inertia at {label!r}: drop the label instead of listing it")
            points.append((label, gen))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "branch_points", tuple(points))

    @property
    def branch_labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.branch_points)

    @property
    def ramification_degree(self) -> int:
        return len(self.branch_points)

    def inertia_orders(self) -> dict[str, int]:
        return {label: self.group.element_orders[gen] for label, gen in self.branch_points}


@dataclass(frozen=True)
class PairedSpec:
    """A surface together with a cover whose branch locus avoids the
    conductor support; the standing hypothesis of the rank bound."""

    surface: SurfaceSpec
    cover: CoverSpec

    def validate(self) -> None:
        self.surface.validate()
        overlap = set(self.surface.fiber_labels) & set(self.cover.branch_labels)
        if overlap:
            raise ValidationError(
                f"label {sorted(overlap)[0]!r} appears in both the bad-fiber and "
                "branch loci; the supports must be disjoint")


def riemann_hurwitz_genus(cover: CoverSpec, base_genus: int) -> int:
    """Genus of the covering curve from the ramification data."""
    if base_genus < 0:
        raise ValidationError("base genus must be non-negative")
    n = cover.group.order
    chi = n * (2 - 2 * base_genus)
    for _, gen in cover.branch_points:
        e = cover.group.element_orders[gen]
        chi -= n - n // e
    if chi % 2 != 0:
        raise ValidationError(f"cover has non-integral genus (Euler characteristic {chi})")
    genus = (2 - chi) // 2
    if genus < 0:
        raise ValidationError(f"cover specification forces negative genus {genus}")
    return genus


def isotypic_sheaf(cover: CoverSpec, alpha: int) -> ConstructibleSheafData:
    """The alpha-isotypic constituent of the pushforward of the constant
    sheaf along the cover, as sheaf data on the base."""
    table = character_table(cover.group)
    return isotypic_piece(table, alpha, dict(cover.branch_points))


def chi_g_constant_sheaf(cover: CoverSpec, base_genus: int) -> VirtualCharacter:
    """Equivariant Euler characteristic of the constant sheaf on the covering
    curve; the alpha-multiplicity is the Euler characteristic of the
    alpha-isotypic piece downstairs."""
    table = character_table(cover.group)
    coeffs = tuple(gos_euler(base_genus, isotypic_sheaf(cover, alpha))
                   for alpha in range(table.n_irreducibles))
    out = VirtualCharacter(table, coeffs)
    expected = 2 - 2 * riemann_hurwitz_genus(cover, base_genus)
    if out.dimension != expected:
        raise InternalInvariantError(
            f"equivariant Euler characteristic has dimension {out.dimension}, "
            f"Riemann-Hurwitz expects {expected}")
    return out


def equivariant_gos(rank_f: int, cond_f: int, cover: CoverSpec,
                    base_genus: int) -> VirtualCharacter:
    """Equivariant Euler characteristic of the pullback of a constructible
    sheaf with the given rank and conductor, assuming its conductor locus is
    disjoint from the branch locus."""
    if rank_f < 0:
        raise ValidationError("sheaf rank must be non-negative")
    table = character_table(cover.group)
    chi = chi_g_constant_sheaf(cover, base_genus)
    return int(rank_f) * chi - int(cond_f) * regular_class(table)


def h1_r1_class(spec: PairedSpec) -> VirtualCharacter:
    """Class of H^1 of the degree-one direct image of the constant sheaf on
    the pulled-back surface: c_E [reg] - 2 chi_G."""
    spec.validate()
    table = character_table(spec.cover.group)
    c_e = spec.surface.conductor_degree
    chi = chi_g_constant_sheaf(spec.cover, spec.surface.base_genus)
    return c_e * regular_class(table) - 2 * chi


def mw_quotient_class(spec: PairedSpec) -> VirtualCharacter:
    """The class that bounds the complexified Mordell-Weil group from above:
    (c_E - d_E/6) [reg] - chi_G."""
    spec.validate()
    d_e = spec.surface.discriminant_degree
    if d_e == 0:
        raise ValidationError("isotrivial surface rejected")
    if d_e % 12 != 0:
        raise ValidationError(f"discriminant degree {d_e} is not divisible by 12")
    table = character_table(spec.cover.group)
    c_e = spec.surface.conductor_degree
    chi = chi_g_constant_sheaf(spec.cover, spec.surface.base_genus)
    return (c_e - d_e // 6) * regular_class(table) - chi


def h2_dimension(spec: PairedSpec) -> int:
    """dim H^2 of the structure sheaf of the pulled-back surface."""
    spec.validate()
    d_e = spec.surface.discriminant_degree
    if d_e % 12 != 0:
        raise ValidationError(f"discriminant degree {d_e} is not divisible by 12")
    genus_up = riemann_hurwitz_genus(spec.cover, spec.surface.base_genus)
    return (d_e // 12) * spec.cover.group.order - (1 - genus_up)


def h2_structure(d_e: int, chi_structure: VirtualCharacter) -> VirtualCharacter:
    """(d_E/12) [reg] - chi(O); the caller supplies the equivariant structure
    sheaf class, whose computation is outside this tool's scope."""
    if d_e % 12 != 0:
        raise ValidationError(f"discriminant degree {d_e} is not divisible by 12")
    return (d_e // 12) * regular_class(chi_structure.table) - chi_structure


def full_stalk_dimension(cover: CoverSpec, label: str) -> int:
    """Dimension of the pushforward stalk at a branch point: the coset count
    of the inertia subgroup."""
    gens = dict(cover.branch_points)
    if label not in gens:
        return cover.group.order
    inertia = cyclic_subgroup(cover.group, gens[label])
    return cover.group.order // len(inertia)
