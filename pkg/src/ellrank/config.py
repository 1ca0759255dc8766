"""Run configuration: the single JSON format every CLI mode consumes."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import ValidationError
from .groups import FiniteGroup, SigmaAction, parse_group_spec, sigma_subgroup, trivial_sigma
from .presets import preset_config
from .surfaces import CoverSpec, PairedSpec, SurfaceSpec

VALID_MODES = ("bounds", "epsilon", "sweep", "validate")
VALID_FORMATS = ("text", "json")

_KNOWN_KEYS = {"preset", "group", "sigma", "base_genus", "bad_fibers",
               "branch_points", "mode", "format", "runs"}


def expand_preset(doc: dict) -> dict:
    """Resolve a top-level 'preset' reference; explicit keys override it."""
    if "preset" not in doc:
        return dict(doc)
    base = preset_config(str(doc["preset"]))
    for key, value in doc.items():
        if key != "preset":
            base[key] = value
    return base


@dataclass
class RunConfig:
    """Parsed and validated configuration for one run."""

    group: FiniteGroup
    sigma: SigmaAction
    base_genus: int = 0
    bad_fibers: dict = field(default_factory=dict)
    branch_points: dict = field(default_factory=dict)
    fmt: str = "text"
    mode: str | None = None

    @property
    def has_surface(self) -> bool:
        return bool(self.bad_fibers)

    @cached_property
    def cover(self) -> CoverSpec:
        return CoverSpec(self.group, self.sigma, self.branch_points)

    @cached_property
    def paired_spec(self) -> PairedSpec:
        if not self.has_surface:
            raise ValidationError("this mode needs a surface: provide 'bad_fibers'")
        surface = SurfaceSpec(self.base_genus, self.bad_fibers)
        return PairedSpec(surface, self.cover)


def parse_run_config(doc) -> RunConfig:
    if not isinstance(doc, dict):
        raise ValidationError("config must be a JSON object")
    doc = expand_preset(doc)
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    if "group" not in doc:
        raise ValidationError("config is missing the 'group' field")
    group = parse_group_spec(doc["group"])
    sigma_doc = doc.get("sigma")
    if sigma_doc is None:
        sigma = trivial_sigma(group)
    else:
        if not isinstance(sigma_doc, dict) or "generators" not in sigma_doc:
            raise ValidationError("'sigma' must be an object with a 'generators' list")
        sigma = sigma_subgroup(group, sigma_doc["generators"])
    base_genus = doc.get("base_genus", 0)
    if not isinstance(base_genus, int) or base_genus < 0:
        raise ValidationError("'base_genus' must be a non-negative integer")
    bad_fibers = doc.get("bad_fibers", {})
    if not isinstance(bad_fibers, dict):
        raise ValidationError("'bad_fibers' must map labels to Kodaira kinds")
    branch_points = doc.get("branch_points", {})
    if not isinstance(branch_points, dict):
        raise ValidationError("'branch_points' must map labels to inertia generators")
    branch_points = {k: _as_int(v, f"branch point {k!r}") for k, v in branch_points.items()}
    fmt = doc.get("format", "text")
    if fmt not in VALID_FORMATS:
        raise ValidationError(f"'format' must be one of {VALID_FORMATS}")
    mode = doc.get("mode")
    if mode is not None and mode not in VALID_MODES:
        raise ValidationError(f"'mode' must be one of {VALID_MODES}")
    return RunConfig(group=group, sigma=sigma, base_genus=base_genus,
                     bad_fibers=dict(bad_fibers), branch_points=branch_points,
                     fmt=fmt, mode=mode)


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{what} must be an integer element index")
    return value


def parse_sweep_config(doc) -> list[dict]:
    """A sweep config carries a 'runs' list of preset names or config objects."""
    if not isinstance(doc, dict) or "runs" not in doc:
        raise ValidationError("sweep config must be an object with a 'runs' list")
    runs = doc["runs"]
    if not isinstance(runs, list) or not runs:
        raise ValidationError("'runs' must be a non-empty list")
    out = []
    for i, entry in enumerate(runs):
        if isinstance(entry, str):
            out.append({"preset": entry})
        elif isinstance(entry, dict):
            out.append(entry)
        else:
            raise ValidationError(f"run {i} must be a preset name or a config object")
    return out


def validate_run_config(doc) -> RunConfig:
    """Full validation: parse, then check whatever spec the config describes."""
    cfg = parse_run_config(doc)
    cfg.cover  # validates sigma action and inertia generators
    if cfg.has_surface:
        cfg.paired_spec.validate()
    return cfg
