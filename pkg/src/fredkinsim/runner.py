"""Experiment execution: deterministic CSV emission plus a checksummed manifest.

Every run writes ``manifest.json`` first (status "running"), produces its
data files, then finalizes the manifest with per-file SHA-256 checksums.
All numeric CSV fields carry 17 significant digits; nothing in the pipeline
draws random numbers, so reruns are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import (
    DegenerateCatError,
    approx_solution,
    cat_to_state,
    detection_probs,
    exact_solution,
    fidelity_F,
    fidelity_Fpm,
    make_cat,
)
from .config import ExperimentConfig
from .entanglement import log_negativity_pure
from .fock import FockOperator, annihilation, creation, number, tensor3
from .lindblad import (
    DissipatorSpec,
    OPEN_OBSERVABLE_NAMES,
    evolve,
    initial_plus_density,
    make_open_observer,
)
from .model import build_H1_app, build_H1_ext, check_approx, derive_frame
from .wigner import line_cut, plane_slice, write_slice_csv

SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(float(x)) for x in row))
    path.write_text("\n".join(lines) + "\n", newline="\n")


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


@dataclass
class RunManifest:
    config: dict
    frames: dict
    approximation_check: dict
    outputs: list[dict]
    status: str = "running"
    schema_version: int = SCHEMA_VERSION
    tool: str = f"fredkinsim {__version__}"

    def to_json(self) -> str:
        payload = {
            "schema_version": self.schema_version,
            "tool": self.tool,
            "status": self.status,
            "config": self.config,
            "frames": self.frames,
            "approximation_check": self.approximation_check,
            "outputs": self.outputs,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _config_dict(cfg: ExperimentConfig) -> dict:
    d = {
        "name": cfg.name,
        "outputs": list(cfg.outputs),
        "dims": [cfg.dims.dim_a, cfg.dims.dim_b, cfg.dims.dim_c],
        "t_max": cfg.t_max,
        "samples": cfg.samples,
        "dt": cfg.dt,
        "rotate_mode_a": cfg.rotate_mode_a,
        "open_hamiltonian": cfg.open_hamiltonian,
        "exact_variant": cfg.exact_variant,
        "displacement": cfg.displacement,
        "omega_a1": cfg.omega_a1,
        "wigner_times": list(cfg.wigner_times),
        "wigner_grid": list(cfg.wigner_grid),
        "line_points": cfg.line_points,
        "out_dir": str(cfg.out_dir),
        "sweep": [{"label": pt.label, "params": asdict(pt.params)} for pt in cfg.sweep],
    }
    return d


def _grid(cfg: ExperimentConfig) -> np.ndarray:
    return np.linspace(0.0, cfg.t_max, cfg.samples)


# ---------------------------------------------------------------------------
# closed-system outputs
# ---------------------------------------------------------------------------

def _emit_negativity(cfg: ExperimentConfig, out: Path) -> list[Path]:
    params = cfg.sweep[0].params
    ts = _grid(cfg)
    rows = []
    for t in ts:
        sol = approx_solution(params, float(t))
        ns = []
        for sign in (+1, -1):
            try:
                cat = cat_to_state(make_cat(sol, sign), cfg.dims.dim_b, cfg.dims.dim_c)
                ns.append(log_negativity_pure(cat))
            except DegenerateCatError:
                ns.append(0.0)  # vanishing branch: no conditional state, no entanglement
        rows.append((t, ns[0], ns[1]))
    path = out / "negativity.csv"
    _write_csv(path, ["t", "N_plus", "N_minus"], rows)
    return [path]


def _emit_probabilities(cfg: ExperimentConfig, out: Path) -> list[Path]:
    params = cfg.sweep[0].params
    ts = _grid(cfg)
    rows = []
    for t in ts:
        pe = detection_probs(exact_solution(params, float(t), cfg.exact_variant))
        pa = detection_probs(approx_solution(params, float(t)))
        rows.append((t, pe[0], pe[1], pa[0], pa[1]))
    path = out / "probabilities.csv"
    _write_csv(path, ["t", "P_plus_exact", "P_minus_exact", "P_plus_approx", "P_minus_approx"],
               rows)
    return [path]


def _emit_fidelities(cfg: ExperimentConfig, out: Path) -> list[Path]:
    ts = _grid(cfg)
    header = ["t"]
    cols = [ts]
    for pt in cfg.sweep:
        f = np.empty(ts.size)
        fp = np.empty(ts.size)
        fm = np.empty(ts.size)
        for i, t in enumerate(ts):
            f[i] = fidelity_F(pt.params, float(t), cfg.exact_variant)
            fp[i] = fidelity_Fpm(pt.params, float(t), +1, cfg.exact_variant)
            try:
                fm[i] = fidelity_Fpm(pt.params, float(t), -1, cfg.exact_variant)
            except DegenerateCatError:
                fm[i] = float("nan")  # minus branch vanishes at t=0

        header += [f"F_{pt.label}", f"Fp_{pt.label}", f"Fm_{pt.label}"]
        cols += [f, fp, fm]
    path = out / "fidelity.csv"
    _write_csv(path, header, zip(*cols))
    return [path]


def _emit_wigner(cfg: ExperimentConfig, out: Path) -> list[Path]:
    params = cfg.sweep[0].params
    lo, hi, n = cfg.wigner_grid
    axis = np.linspace(lo, hi, n)
    line_axis = np.linspace(lo, hi, cfg.line_points)
    paths = []
    times = cfg.wigner_times or (1.85, math.pi)
    for t in times:
        sol = approx_solution(params, float(t))
        tag = f"{t:g}"
        for sign, sname in ((+1, "plus"), (-1, "minus")):
            state = cat_to_state(make_cat(sol, sign), cfg.dims.dim_b, cfg.dims.dim_c)
            meta = {"time": _fmt(t), "sign": sname}
            for plane in ("re_re", "im_im"):
                slc = plane_slice(state, plane, axis, axis)
                p = out / f"wigner_plane_{plane}_{sname}_t{tag}.csv"
                write_slice_csv(slc, p, metadata=meta)
                paths.append(p)
            for kind in ("re_diag", "im_diag"):
                slc = line_cut(state, kind, line_axis)
                p = out / f"wigner_line_{kind}_{sname}_t{tag}.csv"
                write_slice_csv(slc, p, metadata=meta)
                paths.append(p)
    return paths


# ---------------------------------------------------------------------------
# open-system outputs
# ---------------------------------------------------------------------------

def _transient_components(params, dims, which: str, omega_a1: str, dt: float, t_max: float):
    """Static part plus Hermitian components with chi(t)-dependent coefficients."""
    from .lindblad import displacement_track

    half_grid = np.arange(0.0, t_max + 4 * dt, dt / 2.0)
    track = displacement_track(params, half_grid, mode="transient")
    chi_b, chi_c = track.chi_b, track.chi_c
    g = params.g

    base = params.omega_a if omega_a1 == "omega_a" else params.delta_c
    na = tensor3(dims, op_a=number(dims.dim_a))
    nb = tensor3(dims, op_b=number(dims.dim_b))
    nc = tensor3(dims, op_c=number(dims.dim_c))
    static = params.delta_b * nb.matrix + params.delta_c * nc.matrix
    if which == "ext":
        bd_c = tensor3(dims, op_b=creation(dims.dim_b), op_c=annihilation(dims.dim_c))
        static = static + g * (na.matrix @ (bd_c.matrix + bd_c.matrix.conj().T))
    H_static = FockOperator(static, dims)

    b = tensor3(dims, op_b=annihilation(dims.dim_b)).matrix
    c = tensor3(dims, op_c=annihilation(dims.dim_c)).matrix
    re_b = FockOperator(na.matrix @ (b + b.conj().T), dims)
    im_b = FockOperator(na.matrix @ (1j * (b.conj().T - b)), dims)
    re_c = FockOperator(na.matrix @ (c + c.conj().T), dims)
    im_c = FockOperator(na.matrix @ (1j * (c.conj().T - c)), dims)

    def coeff(tab):
        def f(t):
            return float(np.interp(t, half_grid, tab))
        return f

    comps = [
        (FockOperator(na.matrix, dims), coeff(base + 2.0 * g * (chi_b.conj() * chi_c).real)),
        (re_b, coeff(g * chi_c.real)),
        (im_b, coeff(g * chi_c.imag)),
        (re_c, coeff(g * chi_b.real)),
        (im_c, coeff(g * chi_b.imag)),
    ]
    return H_static, comps


def _emit_open(cfg: ExperimentConfig, out: Path) -> list[Path]:
    dims = cfg.dims
    ts = _grid(cfg)
    build = build_H1_ext if cfg.open_hamiltonian == "ext" else build_H1_app
    paths = []
    for pt in cfg.sweep:
        diss = DissipatorSpec.from_params(pt.params)
        rho0 = initial_plus_density(dims)
        observer = make_open_observer(pt.params, dims, cfg.exact_variant)
        kwargs = {}
        if cfg.displacement == "transient":
            H, comps = _transient_components(pt.params, dims, cfg.open_hamiltonian,
                                             cfg.omega_a1, cfg.dt, cfg.t_max)
            kwargs["td_components"] = comps
        else:
            H = build(pt.params, dims, cfg.omega_a1)
        rotation = 0.0
        if cfg.rotate_mode_a:
            rotation = derive_frame(pt.params, cfg.omega_a1).omega_a_1
        traj = evolve(rho0, H, diss, ts, dt=cfg.dt, a_rotation=rotation,
                      observers={"open": observer}, **kwargs)
        traj.assert_healthy()
        obs = traj.observables["open"]
        rows = np.column_stack([traj.times, obs, traj.trace_dev, traj.min_eig])
        path = out / f"open_{pt.label}.csv"
        _write_csv(path, ["t", *OPEN_OBSERVABLE_NAMES, "trace_dev", "min_eig"], rows)
        paths.append(path)
    return paths


_EMITTERS = {
    "negativity": _emit_negativity,
    "probabilities": _emit_probabilities,
    "fidelities": _emit_fidelities,
    "wigner": _emit_wigner,
    "open": _emit_open,
}


def run(cfg: ExperimentConfig) -> RunManifest:
    """Execute all requested outputs; returns the finalized manifest."""
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    frames = {}
    margins = {}
    for pt in cfg.sweep:
        fr = derive_frame(pt.params, cfg.omega_a1)
        frames[pt.label] = {
            "xi_b": fr.xi_b, "xi_c": fr.xi_c, "g_b": fr.g_b, "g_c": fr.g_c,
            "omega_a_tilde": fr.omega_a_tilde,
            "chi_b_ss": [fr.chi_b_ss.real, fr.chi_b_ss.imag],
            "chi_c_ss": [fr.chi_c_ss.real, fr.chi_c_ss.imag],
            "omega_a_1": fr.omega_a_1,
        }
        chk = check_approx(pt.params)
        margins[pt.label] = {"r_b": chk.r_b, "r_c": chk.r_c,
                             "threshold": chk.threshold, "satisfied": chk.satisfied}

    manifest = RunManifest(config=_config_dict(cfg), frames=frames,
                           approximation_check=margins, outputs=[])
    manifest_path = out / "manifest.json"
    manifest_path.write_text(manifest.to_json(), newline="\n")

    produced: list[Path] = []
    for kind in cfg.outputs:
        produced.extend(_EMITTERS[kind](cfg, out))

    manifest.outputs = [
        {"path": p.name, "sha256": _sha256(p), "bytes": p.stat().st_size}
        for p in produced
    ]
    manifest.status = "complete"
    manifest_path.write_text(manifest.to_json(), newline="\n")
    return manifest
