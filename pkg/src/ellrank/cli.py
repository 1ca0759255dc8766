"""Command-line front end.

Subcommands: bounds, epsilon, sweep, validate, presets. Every run is driven
by a JSON config (or a named preset) and emits a deterministic report on
stdout or to --out. Exit codes: 0 success, 2 validation error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .bounds import compute_bounds, report_to_json_dict, report_to_text
from .characters import CACHE_ENV_VAR
from .config import parse_run_config, parse_sweep_config, validate_run_config
from .ellenberg import epsilon
from .errors import InternalInvariantError, ValidationError
from .groups import orbit_count
from .lp import fraction_to_json
from .presets import catalog_lines

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellrank",
        description="Exact Ellenberg constants and Mordell-Weil rank bounds "
                    "for elliptic surfaces under Galois covers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, refined=False):
        p.add_argument("--config", metavar="PATH", help="JSON config file")
        p.add_argument("--preset", metavar="NAME", help="use a shipped preset")
        p.add_argument("--format", choices=("text", "json"), default=None)
        p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
        p.add_argument("--cache-dir", metavar="PATH", help="character-table cache directory")
        if refined:
            p.add_argument("--refined", action="store_true",
                           help="include the heuristic refined-ceiling bound")

    p_bounds = sub.add_parser("bounds", help="full rank-bound report for a paired spec")
    add_common(p_bounds, refined=True)
    p_eps = sub.add_parser("epsilon", help="epsilon constant and orbit count only")
    add_common(p_eps)
    p_sweep = sub.add_parser("sweep", help="run a list of configs")
    add_common(p_sweep, refined=True)
    p_sweep.add_argument("--jobs", type=int, default=1, metavar="N",
                         help="worker processes for the sweep (default 1)")
    p_val = sub.add_parser("validate", help="validate a config and exit")
    add_common(p_val)
    p_presets = sub.add_parser("presets", help="list shipped presets")
    p_presets.add_argument("--out", metavar="PATH")
    return parser


def _load_config(args) -> dict:
    if args.preset and args.config:
        raise ValidationError("give either --config or --preset, not both")
    if args.preset:
        return {"preset": args.preset}
    if not args.config:
        raise ValidationError("a config file or preset name is required")
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read config: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _epsilon_report(cfg) -> tuple[dict, str]:
    value, certificate = epsilon(cfg.group, cfg.sigma)
    orbits = orbit_count(cfg.group, cfg.sigma)
    doc = {
        "mode": "epsilon",
        "group": {"order": cfg.group.order, "hash": cfg.group.content_hash,
                  "abelian": cfg.group.is_abelian},
        "sigma_order": cfg.sigma.order,
        "epsilon": fraction_to_json(value),
        "orbit_count": orbits,
        "certificate": [fraction_to_json(v) for v in certificate],
    }
    cert = ", ".join(_frac_text(v) for v in certificate)
    text = (f"epsilon = {_frac_text(value)}\n"
            f"orbit count = {orbits}\n"
            f"certificate = ({cert})\n")
    return doc, text


def _run_single(doc: dict, mode: str, refined: bool) -> tuple[dict, str]:
    cfg = parse_run_config(doc)
    if mode == "epsilon" or (mode == "auto" and not cfg.has_surface):
        return _epsilon_report(cfg)
    report = compute_bounds(cfg.paired_spec, include_refined=refined)
    return report_to_json_dict(report), report_to_text(report)


def _sweep_worker(payload):
    index, doc, refined = payload
    try:
        json_doc, text = _run_single(doc, "auto", refined)
        return index, "ok", json_doc, text
    except ValidationError as exc:
        return index, "validation-error", {"error": str(exc)}, f"error: {exc}\n"


def _format_choice(args, cfg_fmt: str) -> str:
    return args.format if args.format else cfg_fmt


def _cmd_bounds(args) -> int:
    doc = _load_config(args)
    cfg = parse_run_config(doc)
    report = compute_bounds(cfg.paired_spec, include_refined=getattr(args, "refined", False))
    if _format_choice(args, cfg.fmt) == "json":
        _emit(_json_text(report_to_json_dict(report)), args.out)
    else:
        _emit(report_to_text(report), args.out)
    return EXIT_OK


def _cmd_epsilon(args) -> int:
    doc = _load_config(args)
    cfg = parse_run_config(doc)
    json_doc, text = _epsilon_report(cfg)
    _emit(_json_text(json_doc) if _format_choice(args, cfg.fmt) == "json" else text, args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    doc = _load_config(args)
    runs = parse_sweep_config(doc)
    refined = getattr(args, "refined", False)
    payloads = [(i, run, refined) for i, run in enumerate(runs)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = sorted(pool.map(_sweep_worker, payloads))
    else:
        results = [_sweep_worker(p) for p in payloads]
    fmt = args.format or doc.get("format", "text")
    if fmt == "json":
        out = [{"run": i, "status": status, "report": jd} for i, status, jd, _ in results]
        _emit(_json_text(out), args.out)
    else:
        blocks = [f"# run {i} [{status}]\n{text}" for i, status, _, text in results]
        _emit("\n".join(blocks), args.out)
    if any(status != "ok" for _, status, _, _ in results):
        return EXIT_VALIDATION
    return EXIT_OK


def _cmd_validate(args) -> int:
    doc = _load_config(args)
    cfg = validate_run_config(doc)
    kind = "paired surface/cover spec" if cfg.has_surface else "group/sigma spec"
    _emit(f"ok: valid {kind} (group order {cfg.group.order}, "
          f"sigma order {cfg.sigma.order})\n", args.out)
    return EXIT_OK


def _cmd_presets(args) -> int:
    _emit("\n".join(catalog_lines()) + "\n", getattr(args, "out", None))
    return EXIT_OK


_COMMANDS = {
    "bounds": _cmd_bounds,
    "epsilon": _cmd_epsilon,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "presets": _cmd_presets,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cache_dir", None):
        os.environ[CACHE_ENV_VAR] = args.cache_dir
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
