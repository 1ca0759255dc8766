"""Numerical model of constructible sheaves of complex vector spaces on a
smooth projective curve: a generic rank plus finitely many exceptional stalk
dimensions. Point labels are opaque strings; position never matters to any
formula here."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

from .characters import CharacterTable, cyclic_subgroup, fixed_subspace_dim
from .errors import ValidationError


@dataclass(frozen=True)
class ConstructibleSheafData:
    """rank plus the stalk dimensions at the points where they differ.

    Points with stalk equal to the rank are dropped at construction, so the
    stored exceptional locus is canonical. A stalk above the rank is allowed
    (skyscraper-style input) but draws a warning when the rank is positive.
    """

    rank: int
    stalks: tuple[tuple[str, int], ...]

    def __init__(self, rank: int, exceptional_stalks=None):
        if rank < 0:
            raise ValidationError("sheaf rank must be non-negative")
        items = dict(exceptional_stalks or {})
        cleaned = []
        for label, dim in sorted(items.items()):
            dim = int(dim)
            if dim < 0:
                raise ValidationError(f"stalk dimension at {label!r} must be non-negative")
            if dim == rank:
                continue
            if dim > rank and rank > 0:
                warnings.warn(f"stalk {dim} above rank {rank} at point {label!r}")
            cleaned.append((str(label), dim))
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "stalks", tuple(cleaned))

    @cached_property
    def stalk_map(self) -> dict[str, int]:
        return dict(self.stalks)

    def stalk(self, label: str) -> int:
        return self.stalk_map.get(label, self.rank)

    @property
    def exceptional_labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.stalks)


def local_conductors(sheaf: ConstructibleSheafData) -> dict[str, int]:
    """c_x = rank - dim(stalk at x) for each listed point."""
    return {label: sheaf.rank - dim for label, dim in sheaf.stalks}


def conductor(sheaf: ConstructibleSheafData) -> int:
    return sum(sheaf.rank - dim for _, dim in sheaf.stalks)


def tensor(f: ConstructibleSheafData, g: ConstructibleSheafData) -> ConstructibleSheafData:
    """Tensor product under the standing assumption that at every point at
    most one factor fails to be locally free there."""
    overlap = set(f.exceptional_labels) & set(g.exceptional_labels)
    if overlap:
        raise ValidationError(
            f"tensor factors are both exceptional at {sorted(overlap)}; "
            "one factor must be locally free near each point")
    stalks = {label: dim * g.rank for label, dim in f.stalks}
    stalks.update({label: f.rank * dim for label, dim in g.stalks})
    return ConstructibleSheafData(f.rank * g.rank, stalks)


def gos_euler(genus: int, sheaf: ConstructibleSheafData) -> int:
    """Euler characteristic: rank * (2 - 2 genus) - conductor."""
    if genus < 0:
        raise ValidationError("genus must be non-negative")
    return sheaf.rank * (2 - 2 * genus) - conductor(sheaf)


def isotypic_piece(table: CharacterTable, alpha: int, branch_points) -> ConstructibleSheafData:
    """The isotypic piece of the pushforward of the constant sheaf along a
    Galois cover: rank deg(alpha), and at each branch point the stalk is the
    dimension of the inertia-fixed subspace.

    branch_points maps labels to inertia generators (element indices)."""
    group = table.group
    stalks = {}
    for label, gen in branch_points.items():
        subgroup = cyclic_subgroup(group, int(gen))
        stalks[label] = fixed_subspace_dim(table, alpha, subgroup)
    return ConstructibleSheafData(table.degrees[alpha], stalks)


def sheaf_to_json_dict(sheaf: ConstructibleSheafData) -> dict:
    return {"rank": sheaf.rank, "stalks": {label: dim for label, dim in sheaf.stalks}}


def sheaf_from_json_dict(doc: dict) -> ConstructibleSheafData:
    return ConstructibleSheafData(int(doc["rank"]), doc.get("stalks", {}))
