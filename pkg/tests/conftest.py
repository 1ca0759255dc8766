"""Shared pools and random-spec generators for the test suite."""

from __future__ import annotations

import random

import pytest

from ellrank.groups import (FiniteGroup, SigmaAction, inversion_automorphism, parse_group_spec,
                            sigma_subgroup, trivial_sigma)
from ellrank.surfaces import CoverSpec, KodairaFiber, PairedSpec, SurfaceSpec, \
    riemann_hurwitz_genus

_FIBER_KINDS = ["I1", "I2", "I3", "I4", "I6", "II", "III", "IV",
                "I0*", "I1*", "I2*", "IV*", "III*", "II*"]


def small_group_pool(max_order: int) -> list[FiniteGroup]:
    specs = ["cyclic 1", "cyclic 2", "cyclic 3", "cyclic 4", "cyclic 5", "cyclic 6",
             "cyclic 8", "cyclic 12", "cyclic 24", "cyclic 36",
             "dihedral 3", "dihedral 4", "dihedral 6", "dihedral 12",
             "symmetric 3", "symmetric 4", "quaternion 8",
             "elementary abelian 2^2", "elementary abelian 2^3", "elementary abelian 2^4",
             "elementary abelian 2^5", "elementary abelian 3^2", "elementary abelian 3^3",
             "elementary abelian 5^2", "elementary abelian 7^2",
             "cyclic 2 x cyclic 4", "cyclic 3 x cyclic 3 x cyclic 2",
             "dihedral 5", "cyclic 30"]
    pool = [parse_group_spec(s) for s in specs]
    return [g for g in pool if g.order <= max_order]


def random_sigma(rng: random.Random, group: FiniteGroup) -> SigmaAction:
    """Trivial sigma, or the inversion action when the group is abelian."""
    if group.is_abelian and rng.random() < 0.4:
        return sigma_subgroup(group, [inversion_automorphism(group).perm])
    return trivial_sigma(group)


def random_surface(rng: random.Random, max_fibers: int = 8,
                   base_genus: int | None = None) -> SurfaceSpec:
    """A valid fiber configuration: 12 | d_E, d_E >= 12, at most max_fibers."""
    genus = rng.randint(0, 2) if base_genus is None else base_genus
    k = rng.randint(0, max_fibers - 1)
    fibers = {}
    total_d = 0
    for i in range(k):
        kind = rng.choice(_FIBER_KINDS)
        fiber = KodairaFiber.from_kind(kind)
        fibers[f"f{i}"] = fiber
        total_d += fiber.d
    residue = (-total_d) % 12
    last = residue if residue else 12
    fibers[f"f{k}"] = KodairaFiber.from_kind(f"I{last}")
    return SurfaceSpec(genus, fibers)


def random_cover(rng: random.Random, group: FiniteGroup, base_genus: int,
                 max_branch: int = 4, sigma: SigmaAction | None = None) -> CoverSpec:
    """A cover with integral non-negative Riemann-Hurwitz genus; resamples the
    branch data until the spec is consistent."""
    sig = sigma if sigma is not None else trivial_sigma(group)
    non_identity = [g for g in range(group.order) if g != group.identity]
    for _ in range(300):
        branch = {}
        if non_identity:
            for i in range(rng.randint(0, max_branch)):
                branch[f"b{i}"] = rng.choice(non_identity)
        cover = CoverSpec(group, sig, branch)
        try:
            riemann_hurwitz_genus(cover, base_genus)
        except Exception:
            continue
        return cover
    raise RuntimeError(f"no valid cover found for order {group.order}, genus {base_genus}")


def random_paired_spec(rng: random.Random, pool: list[FiniteGroup],
                       max_fibers: int = 8, max_branch: int = 4) -> PairedSpec:
    for _ in range(60):
        group = rng.choice(pool)
        sigma = random_sigma(rng, group)
        surface = random_surface(rng, max_fibers)
        try:
            cover = random_cover(rng, group, surface.base_genus, max_branch, sigma)
        except RuntimeError:
            continue
        spec = PairedSpec(surface, cover)
        spec.validate()
        return spec
    raise RuntimeError("failed to generate a valid paired spec")


@pytest.fixture(scope="session")
def pool24() -> list[FiniteGroup]:
    return small_group_pool(24)


@pytest.fixture(scope="session")
def pool60() -> list[FiniteGroup]:
    return small_group_pool(60)
