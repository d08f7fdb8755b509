"""Experiment configuration: flat key-value sections, fail-closed parsing.

A config file (INI-style) either names a preset or supplies a full inline
parameter set; every key is validated against a whitelist and unknown keys
are rejected.  Command-line overrides use the same ``section.key=value``
naming.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field, replace

from .fock import ModeDims
from .model import SingularFrameError, SystemParams
from .presets import PRESETS, Preset, SweepPoint, get_preset

OUTPUT_KINDS = ("negativity", "wigner", "probabilities", "fidelities", "open")

_PARAM_KEYS = ("omega_a", "g", "Omega_b", "Omega_c", "delta_b", "delta_c",
               "kappa_a", "kappa_b", "kappa_c", "nbar_a", "nbar_b", "nbar_c")
_REQUIRED_INLINE = ("omega_a", "g", "Omega_b", "Omega_c", "delta_b")

_SCHEMA: dict[str, tuple[str, ...]] = {
    "experiment": ("preset", "out_dir"),
    "params": _PARAM_KEYS,
    "dims": ("dim_a", "dim_b", "dim_c"),
    "grid": ("t_max", "samples"),
    "integrator": ("dt", "rotate_mode_a"),
    "outputs": OUTPUT_KINDS,
    "variants": ("exact_formulas", "open_hamiltonian", "displacement", "omega_a1"),
    "wigner": ("times", "grid_min", "grid_max", "grid_points", "line_points"),
}

_VARIANT_CHOICES = {
    "exact_formulas": ("errata", "verbatim"),
    "open_hamiltonian": ("app", "ext"),
    "displacement": ("steady", "transient"),
    "omega_a1": ("omega_a", "omega_c"),
}


class ConfigError(ValueError):
    """Malformed, unknown, or inconsistent configuration input."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved, runnable experiment description."""

    name: str
    sweep: tuple[SweepPoint, ...]
    outputs: tuple[str, ...]
    dims: ModeDims
    t_max: float
    samples: int
    dt: float
    rotate_mode_a: bool
    open_hamiltonian: str = "app"
    exact_variant: str = "errata"
    displacement: str = "steady"
    omega_a1: str = "omega_a"
    wigner_times: tuple[float, ...] = ()
    wigner_grid: tuple[float, float, int] = (-3.0, 3.0, 81)
    line_points: int = 161
    out_dir: str = "out"

    def __post_init__(self):
        if not self.sweep:
            raise ConfigError("experiment has no parameter points")
        if self.samples < 2:
            raise ConfigError("grid samples must be >= 2")
        if self.t_max <= 0:
            raise ConfigError("t_max must be > 0")
        if self.dt <= 0:
            raise ConfigError("dt must be > 0")
        for out in self.outputs:
            if out not in OUTPUT_KINDS:
                raise ConfigError(f"unknown output kind {out!r}")
        for key, choices in _VARIANT_CHOICES.items():
            attr = {"exact_formulas": "exact_variant"}.get(key, key)
            if getattr(self, attr) not in choices:
                raise ConfigError(f"{key} must be one of {choices}")


def config_from_preset(preset: Preset, out_dir: str = "out") -> ExperimentConfig:
    return ExperimentConfig(
        name=preset.name,
        sweep=preset.sweep,
        outputs=preset.outputs,
        dims=ModeDims(*preset.dims),
        t_max=preset.t_max,
        samples=preset.samples,
        dt=preset.dt,
        rotate_mode_a=preset.rotate_mode_a,
        open_hamiltonian=preset.open_hamiltonian,
        wigner_times=preset.wigner_times,
        out_dir=out_dir,
    )


def _parse_scalar(section: str, key: str, raw: str):
    raw = raw.strip()
    if section == "experiment":
        return raw
    if section == "variants":
        if raw not in _VARIANT_CHOICES[key]:
            raise ConfigError(
                f"variants.{key} must be one of {_VARIANT_CHOICES[key]}, got {raw!r}"
            )
        return raw
    if (section, key) == ("wigner", "times"):
        try:
            return tuple(float(x) for x in raw.split(",") if x.strip())
        except ValueError as exc:
            raise ConfigError(f"wigner.times must be a comma list of floats: {exc}") from None
    if section == "outputs" or (section, key) == ("integrator", "rotate_mode_a"):
        low = raw.lower()
        if low in ("true", "1", "yes", "on"):
            return True
        if low in ("false", "0", "no", "off"):
            return False
        raise ConfigError(f"{section}.{key} must be a boolean, got {raw!r}")
    if section == "dims" or key in ("samples", "grid_points", "line_points"):
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{section}.{key} must be an integer, got {raw!r}") from None
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key} must be a number, got {raw!r}") from None


def _validate_keys(data: dict[str, dict[str, str]]):
    for section, entries in data.items():
        if section not in _SCHEMA:
            raise ConfigError(
                f"unknown config section [{section}]; known: {', '.join(_SCHEMA)}"
            )
        for key in entries:
            if key not in _SCHEMA[section]:
                raise ConfigError(
                    f"unknown key {section}.{key}; allowed in [{section}]: "
                    + ", ".join(_SCHEMA[section])
                )


def parse_overrides(pairs: list[str]) -> dict[str, dict[str, str]]:
    """Parse ``section.key=value`` strings into the config dict shape."""
    out: dict[str, dict[str, str]] = {}
    for pair in pairs:
        if "=" not in pair or "." not in pair.split("=", 1)[0]:
            raise ConfigError(f"override must look like section.key=value, got {pair!r}")
        path, value = pair.split("=", 1)
        section, key = path.split(".", 1)
        out.setdefault(section.strip(), {})[key.strip()] = value
    return out


def load_config(source=None, overrides: dict[str, dict[str, str]] | None = None,
                preset: str | None = None, out_dir: str | None = None) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from an INI file/text plus overrides.

    ``source`` may be a path, a file object, or None (preset/overrides only).
    Precedence: preset defaults < config file < overrides < explicit args.
    """
    data: dict[str, dict[str, str]] = {}
    if source is not None:
        cp = configparser.ConfigParser(interpolation=None)
        cp.optionxform = str  # keys are case-sensitive
        try:
            if hasattr(source, "read"):
                cp.read_file(source)
            elif isinstance(source, str) and "\n" in source:
                cp.read_file(io.StringIO(source))
            else:
                with open(source) as fh:
                    cp.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot parse config: {exc}") from exc
        data = {s: dict(cp.items(s)) for s in cp.sections()}
    for section, entries in (overrides or {}).items():
        data.setdefault(section, {}).update(entries)
    _validate_keys(data)

    parsed: dict[str, dict[str, object]] = {
        s: {k: _parse_scalar(s, k, v) for k, v in entries.items()}
        for s, entries in data.items()
    }

    exp = parsed.get("experiment", {})
    preset_name = preset or exp.get("preset")
    if preset_name is not None and preset_name not in PRESETS:
        raise ConfigError(
            f"unknown preset {preset_name!r}; run the 'presets' subcommand for the list"
        )

    if preset_name:
        cfg = config_from_preset(get_preset(preset_name))
    else:
        inline = parsed.get("params", {})
        missing = [k for k in _REQUIRED_INLINE if k not in inline]
        if missing:
            raise ConfigError(
                "no preset selected and inline [params] incomplete; missing required "
                "keys: " + ", ".join(missing)
            )
        outputs = tuple(k for k in OUTPUT_KINDS if parsed.get("outputs", {}).get(k))
        if not outputs:
            raise ConfigError(
                "inline runs must enable at least one [outputs] kind: "
                + ", ".join(OUTPUT_KINDS)
            )
        try:
            params = SystemParams(**inline)
        except (SingularFrameError, ValueError, TypeError) as exc:
            raise ConfigError(f"invalid [params]: {exc}") from exc
        cfg = ExperimentConfig(
            name="inline",
            sweep=(SweepPoint("base", params),),
            outputs=outputs,
            dims=ModeDims(2, 20, 20),
            t_max=parsed.get("grid", {}).get("t_max", 6.283185307179586),
            samples=parsed.get("grid", {}).get("samples", 100),
            dt=parsed.get("integrator", {}).get("dt", 1e-3),
            rotate_mode_a=parsed.get("integrator", {}).get("rotate_mode_a", False),
        )

    # apply section overrides on top of the preset defaults
    updates: dict[str, object] = {}
    if "params" in parsed and preset_name:
        new_sweep = []
        for pt in cfg.sweep:
            try:
                new_sweep.append(SweepPoint(pt.label, replace(pt.params, **parsed["params"])))
            except (SingularFrameError, ValueError, TypeError) as exc:
                raise ConfigError(f"invalid [params] override: {exc}") from exc
        updates["sweep"] = tuple(new_sweep)
    if "dims" in parsed:
        d = parsed["dims"]
        base = cfg.dims
        updates["dims"] = ModeDims(
            int(d.get("dim_a", base.dim_a)),
            int(d.get("dim_b", base.dim_b)),
            int(d.get("dim_c", base.dim_c)),
        )
    for section, mapping in (
        ("grid", {"t_max": "t_max", "samples": "samples"}),
        ("integrator", {"dt": "dt", "rotate_mode_a": "rotate_mode_a"}),
        ("variants", {"exact_formulas": "exact_variant", "open_hamiltonian": "open_hamiltonian",
                      "displacement": "displacement", "omega_a1": "omega_a1"}),
        ("wigner", {"times": "wigner_times", "line_points": "line_points"}),
    ):
        for key, attr in mapping.items():
            if key in parsed.get(section, {}):
                updates[attr] = parsed[section][key]
    wg = parsed.get("wigner", {})
    if {"grid_min", "grid_max", "grid_points"} & set(wg):
        lo, hi, n = cfg.wigner_grid
        updates["wigner_grid"] = (
            float(wg.get("grid_min", lo)), float(wg.get("grid_max", hi)),
            int(wg.get("grid_points", n)),
        )
    if "outputs" in parsed and preset_name:
        enabled = tuple(k for k in OUTPUT_KINDS if parsed["outputs"].get(k))
        disabled = {k for k, v in parsed["outputs"].items() if v is False}
        kept = tuple(k for k in cfg.outputs if k not in disabled)
        merged = kept + tuple(k for k in enabled if k not in kept)
        if not merged:
            raise ConfigError("all outputs disabled")
        updates["outputs"] = merged
    if out_dir is not None:
        updates["out_dir"] = out_dir
    elif "out_dir" in exp:
        updates["out_dir"] = exp["out_dir"]

    if updates:
        cfg = replace(cfg, **updates)
    return cfg
