"""Arithmetic in the Grothendieck group of finitely generated complex
group-algebra modules: virtual characters as integer coefficient vectors
over the irreducibles of a fixed character table."""

from __future__ import annotations

from dataclasses import dataclass

from .characters import CharacterTable
from .errors import ValidationError


@dataclass(frozen=True)
class VirtualCharacter:
    """An integer combination of irreducibles; coefficients may be negative."""

    table: CharacterTable
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.table.n_irreducibles:
            raise ValidationError(
                f"coefficient vector has length {len(self.coeffs)}, "
                f"expected {self.table.n_irreducibles}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def dimension(self) -> int:
        return sum(c * d for c, d in zip(self.coeffs, self.table.degrees))

    def _check_same_table(self, other: "VirtualCharacter") -> None:
        if self.table.group.content_hash != other.table.group.content_hash \
                or self.table.prime != other.table.prime:
            raise ValidationError("virtual characters over different tables are incomparable")

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check_same_table(other)
        return VirtualCharacter(self.table, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check_same_table(other)
        return VirtualCharacter(self.table, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter(self.table, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar: int) -> "VirtualCharacter":
        if not isinstance(scalar, int):
            return NotImplemented
        return VirtualCharacter(self.table, tuple(scalar * a for a in self.coeffs))

    __mul__ = __rmul__


def zero_class(table: CharacterTable) -> VirtualCharacter:
    return VirtualCharacter(table, (0,) * table.n_irreducibles)


def irreducible_class(table: CharacterTable, alpha: int) -> VirtualCharacter:
    coeffs = [0] * table.n_irreducibles
    coeffs[alpha] = 1
    return VirtualCharacter(table, tuple(coeffs))


def regular_class(table: CharacterTable) -> VirtualCharacter:
    """The class of the group algebra: each irreducible with its degree."""
    return VirtualCharacter(table, table.degrees)


def delta_multiplicity(v: VirtualCharacter, alpha: int) -> int:
    """Multiplicity of the alpha-th irreducible; linear in v."""
    if not 0 <= alpha < len(v.coeffs):
        raise ValidationError(f"irreducible index {alpha} out of range")
    return v.coeffs[alpha]


def dual(v: VirtualCharacter) -> VirtualCharacter:
    """Image under the duality involution, which permutes irreducibles by
    value composition with inversion."""
    perm = v.table.dual_permutation
    coeffs = [0] * len(v.coeffs)
    for alpha, c in enumerate(v.coeffs):
        coeffs[perm[alpha]] = c
    return VirtualCharacter(v.table, tuple(coeffs))


def chi_pullback_line_bundle(chi0: VirtualCharacter, deg_line: int) -> VirtualCharacter:
    """Euler class of the pullback of a line bundle along the quotient cover:
    the base class shifted by deg times the regular class."""
    return chi0 + int(deg_line) * regular_class(chi0.table)


def vc_to_json_dict(v: VirtualCharacter) -> dict:
    return {"group_hash": v.table.group.content_hash, "coeffs": list(v.coeffs)}


def vc_from_json_dict(doc: dict, table: CharacterTable) -> VirtualCharacter:
    if doc.get("group_hash") != table.group.content_hash:
        raise ValidationError("serialized virtual character belongs to a different group")
    return VirtualCharacter(table, tuple(int(c) for c in doc["coeffs"]))
