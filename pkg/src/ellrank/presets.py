"""Shipped presets: group specs, (group, sigma) pairs for epsilon runs, and
full surface/cover configurations. Preset names are stable identifiers;
regression baselines depend on them."""

from __future__ import annotations

from .errors import ValidationError
from .groups import FiniteGroup, parse_group_spec

_ELEM_ABELIAN = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5),
                 (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)]


def _group_catalog() -> dict[str, dict]:
    catalog: dict[str, dict] = {}
    for n in range(1, 37):
        catalog[f"cyclic-{n}"] = {
            "config": {"group": f"cyclic {n}"},
            "order": n,
            "description": f"cyclic group of order {n}",
        }
    for n in range(3, 25):
        catalog[f"dihedral-{n}"] = {
            "config": {"group": f"dihedral {n}"},
            "order": 2 * n,
            "description": f"dihedral group of order {2 * n}",
        }
    for n in range(3, 6):
        order = {3: 6, 4: 24, 5: 120}[n]
        catalog[f"symmetric-{n}"] = {
            "config": {"group": f"symmetric {n}"},
            "order": order,
            "description": f"symmetric group on {n} letters (order {order})",
        }
    catalog["quaternion-8"] = {
        "config": {"group": "quaternion 8"},
        "order": 8,
        "description": "quaternion group of order 8",
    }
    for p, k in _ELEM_ABELIAN:
        catalog[f"elementary-abelian-{p}-{k}"] = {
            "config": {"group": f"elementary abelian {p}^{k}"},
            "order": p ** k,
            "description": f"elementary abelian group of order {p}^{k} = {p ** k}",
        }
    return catalog


def _mult_map_perm(n: int, m: int) -> list[int]:
    return [(m * x) % n for x in range(n)]


def _pair_catalog() -> dict[str, dict]:
    return {
        "cyclic3-inversion": {
            "config": {"group": "cyclic 3", "sigma": {"generators": [_mult_map_perm(3, 2)]}},
            "description": "cyclic group of order 3 with the inversion action",
        },
        "cyclic5-mult2": {
            "config": {"group": "cyclic 5", "sigma": {"generators": [_mult_map_perm(5, 2)]}},
            "description": "cyclic group of order 5 with the order-4 action x -> 2x",
        },
        "cyclic7-mult3": {
            "config": {"group": "cyclic 7", "sigma": {"generators": [_mult_map_perm(7, 3)]}},
            "description": "cyclic group of order 7 with the order-6 action x -> 3x",
        },
        "klein4-swap": {
            "config": {"group": "elementary abelian 2^2",
                       "sigma": {"generators": [[0, 2, 1, 3]]}},
            "description": "Klein four-group with the coordinate swap",
        },
    }


def _surface_catalog() -> dict[str, dict]:
    hesse_fibers = {f"f{i}": "I3" for i in range(4)}
    twelve_i1 = {f"f{i}": "I1" for i in range(12)}
    return {
        "hesse-trivialG": {
            "config": {"group": "cyclic 1", "base_genus": 0, "bad_fibers": hesse_fibers,
                       "branch_points": {}},
            "description": "rational elliptic surface with four I3 fibers, trivial cover",
        },
        "generic-12I1": {
            "config": {"group": "cyclic 1", "base_genus": 0, "bad_fibers": twelve_i1,
                       "branch_points": {}},
            "description": "generic rational elliptic surface with twelve I1 fibers, trivial cover",
        },
        "z3-branched-hesse": {
            "config": {"group": "cyclic 3", "base_genus": 0, "bad_fibers": hesse_fibers,
                       "branch_points": {"b0": 1, "b1": 1, "b2": 1}},
            "description": "Hesse fiber configuration under a degree-3 cyclic cover "
                           "branched at three points with full inertia",
        },
        "unramified-z2-genus1": {
            "config": {"group": "cyclic 2", "base_genus": 1, "bad_fibers": twelve_i1,
                       "branch_points": {}},
            "description": "twelve I1 fibers over a genus-1 base with an unramified "
                           "double cover",
        },
    }


GROUP_PRESETS = _group_catalog()
PAIR_PRESETS = _pair_catalog()
SURFACE_PRESETS = _surface_catalog()


def all_preset_names() -> list[str]:
    return [*GROUP_PRESETS, *PAIR_PRESETS, *SURFACE_PRESETS]


def preset_config(name: str) -> dict:
    """The config dict a preset expands to."""
    for catalog in (SURFACE_PRESETS, PAIR_PRESETS, GROUP_PRESETS):
        if name in catalog:
            return dict(catalog[name]["config"])
    raise ValidationError(f"unknown preset {name!r}")


def preset_group(name: str) -> FiniteGroup:
    return parse_group_spec(preset_config(name)["group"])


def shipped_groups_upto(max_order: int) -> list[tuple[str, FiniteGroup]]:
    """Every shipped group preset with order at most max_order."""
    out = []
    for name, entry in GROUP_PRESETS.items():
        if entry["order"] <= max_order:
            out.append((name, parse_group_spec(entry["config"]["group"])))
    return out


def catalog_lines() -> list[str]:
    lines = ["group presets:"]
    for name, entry in GROUP_PRESETS.items():
        lines.append(f"  {name:<28} {entry['description']}")
    lines.append("pair presets (group with sigma action):")
    for name, entry in PAIR_PRESETS.items():
        lines.append(f"  {name:<28} {entry['description']}")
    lines.append("surface presets:")
    for name, entry in SURFACE_PRESETS.items():
        lines.append(f"  {name:<28} {entry['description']}")
    return lines
