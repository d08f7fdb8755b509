"""Command-line interface: run experiments, list presets, check margins.

Exit codes: 0 success, 2 configuration error, 3 numerical-diagnostic
failure, 4 internal error.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, load_config, parse_overrides
from .lindblad import DiagnosticError
from .model import check_approx, derive_frame
from .presets import PRESETS
from .runner import run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIAGNOSTIC = 3
EXIT_INTERNAL = 4


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fredkinsim",
        description="Simulate a driven three-mode Fredkin-interaction system "
                    "(cat-state generation, Wigner tomography, entanglement, "
                    "open-system dynamics).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute an experiment and write CSV + manifest")
    run_p.add_argument("--config", help="INI config file (see README for the grammar)")
    run_p.add_argument("--preset", help="preset name (overrides config file preset)")
    run_p.add_argument("--out-dir", help="output directory (default: out/<name>)")
    run_p.add_argument("--override", action="append", default=[],
                       metavar="SECTION.KEY=VALUE",
                       help="override a single config key (repeatable)")

    sub.add_parser("presets", help="list available presets")

    chk = sub.add_parser("check", help="report approximation-condition margins")
    chk.add_argument("--config", help="INI config file")
    chk.add_argument("--preset", help="preset name")
    chk.add_argument("--override", action="append", default=[],
                     metavar="SECTION.KEY=VALUE")
    chk.add_argument("--n-b", type=int, default=1, help="mode-b excitation number")
    chk.add_argument("--n-c", type=int, default=1, help="mode-c excitation number")
    return ap


def _resolve_config(args):
    overrides = parse_overrides(args.override) if getattr(args, "override", None) else None
    if args.config is None and args.preset is None:
        raise ConfigError("either --config or --preset is required")
    return load_config(args.config, overrides=overrides, preset=args.preset,
                       out_dir=getattr(args, "out_dir", None))


def _cmd_run(args) -> int:
    cfg = _resolve_config(args)
    if getattr(args, "out_dir", None) is None and cfg.out_dir == "out":
        from dataclasses import replace
        cfg = replace(cfg, out_dir=f"out/{cfg.name}")
    manifest = run(cfg)
    print(f"wrote {len(manifest.outputs)} data file(s) to {cfg.out_dir}")
    for entry in manifest.outputs:
        print(f"  {entry['path']}  sha256={entry['sha256'][:12]}…  {entry['bytes']} bytes")
    return EXIT_OK


def _cmd_presets(_args) -> int:
    width = max(len(n) for n in PRESETS)
    print(f"{'name':<{width}}  description / parameters")
    for name, preset in PRESETS.items():
        print(f"{name:<{width}}  {preset.description}")
        print(f"{'':<{width}}    {preset.summary()}")
    return EXIT_OK


def _cmd_check(args) -> int:
    cfg = _resolve_config(args)
    print(f"approximation margins for '{cfg.name}' (threshold {10.0:g}):")
    ok = True
    for pt in cfg.sweep:
        m = check_approx(pt.params, n_b=args.n_b, n_c=args.n_c)
        fr = derive_frame(pt.params)
        flag = "satisfied" if m.satisfied else "NOT satisfied"
        print(f"  {pt.label}: r_b={m.r_b:.4g} r_c={m.r_c:.4g} "
              f"(xi_b={fr.xi_b:g}, xi_c={fr.xi_c:g}) -> {flag}")
        ok = ok and m.satisfied
    return EXIT_OK if ok else EXIT_DIAGNOSTIC


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "presets":
            return _cmd_presets(args)
        if args.command == "check":
            return _cmd_check(args)
        raise RuntimeError(f"unhandled command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DiagnosticError as exc:
        print(f"numerical diagnostic failure: {exc}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    except KeyboardInterrupt:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
