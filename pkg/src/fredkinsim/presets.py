"""Preset registry: one experiment preset per reproduced figure.

Parameters are transcribed verbatim from the figure captions (in units of
delta_c), including the fig4 omega_a = 1.1 outlier.  The open-system sweeps
(fig6-fig8) default to Omega_b = Omega_c = 100, consistent with the
published displacement-amplitude range; the captions do not state the drive
amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import pi

from .model import SystemParams


@dataclass(frozen=True)
class SweepPoint:
    label: str
    params: SystemParams


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    outputs: tuple[str, ...]
    sweep: tuple[SweepPoint, ...]
    dims: tuple[int, int, int]
    t_max: float
    samples: int
    dt: float = 1e-3
    rotate_mode_a: bool = False
    open_hamiltonian: str = "app"
    wigner_times: tuple[float, ...] = ()

    def summary(self) -> str:
        p = self.sweep[0].params
        parts = [f"omega_a={p.omega_a:g}", f"g={p.g:g}",
                 f"Omega_b={p.Omega_b:g}", f"Omega_c={p.Omega_c:g}"]
        if len({pt.params.delta_b for pt in self.sweep}) > 1:
            dbs = ",".join(f"{pt.params.delta_b:g}" for pt in self.sweep)
            parts.append(f"delta_b in {{{dbs}}}")
        else:
            parts.append(f"delta_b={p.delta_b:g}")
        if any(pt.params.kappa_a or pt.params.kappa_b or pt.params.kappa_c
               for pt in self.sweep):
            parts.append(f"{len(self.sweep)} kappa combos")
        return ", ".join(parts)


def _closed(omega_a, g, Omega, delta_b, **kw) -> SystemParams:
    return SystemParams(omega_a=omega_a, g=g, Omega_b=Omega, Omega_c=Omega,
                        delta_b=delta_b, **kw)


def _kappa_sweep(base: SystemParams) -> tuple[SweepPoint, ...]:
    """Per-mode decay sweeps: one mode at 0.01/0.05/0.1, others at 0.001."""
    points = []
    for mode in ("a", "b", "c"):
        for kappa in (0.01, 0.05, 0.1):
            kappas = {"kappa_a": 0.001, "kappa_b": 0.001, "kappa_c": 0.001}
            kappas[f"kappa_{mode}"] = kappa
            points.append(SweepPoint(label=f"k{mode}{kappa:g}",
                                     params=replace(base, **kappas)))
    return tuple(points)


_CAT_BASE = _closed(omega_a=0.1, g=0.01, Omega=100.0, delta_b=2.0)
_OPEN_BASE_G001 = _CAT_BASE
_OPEN_BASE_G002 = _closed(omega_a=0.1, g=0.02, Omega=100.0, delta_b=2.0)

PRESETS: dict[str, Preset] = {}


def _register(p: Preset):
    PRESETS[p.name] = p


_register(Preset(
    name="fig2",
    description="closed-system logarithmic negativity N_pm(t) of the conditional cats",
    outputs=("negativity",),
    sweep=(SweepPoint("base", _CAT_BASE),),
    dims=(2, 20, 20),
    t_max=2 * pi,
    samples=2001,
))

_register(Preset(
    name="fig3",
    description="joint Wigner plane cuts and diagonal line cuts of the cats",
    outputs=("wigner",),
    sweep=(SweepPoint("base", _CAT_BASE),),
    dims=(2, 20, 20),
    t_max=2 * pi,
    samples=2,
    wigner_times=(1.85, pi),
))

_register(Preset(
    name="fig4",
    description="detection probabilities P_pm(t), exact branch (approx for comparison)",
    outputs=("probabilities",),
    sweep=(SweepPoint("base", _closed(omega_a=1.1, g=0.01, Omega=200.0, delta_b=2.0)),),
    dims=(2, 20, 20),
    t_max=2 * pi,
    samples=4001,
))

_register(Preset(
    name="fig5a",
    description="closed-system fidelity F(t) for delta_b/delta_c in {1.5, 1.7, 2.5}",
    outputs=("fidelities",),
    sweep=tuple(SweepPoint(f"db{db:g}", _closed(omega_a=0.1, g=0.01, Omega=50.0, delta_b=db))
                for db in (1.5, 1.7, 2.5)),
    dims=(2, 20, 20),
    t_max=2 * pi,
    samples=2001,
))

_register(Preset(
    name="fig5b",
    description="cat fidelities F_pm(t) for delta_b/delta_c in {1.5, 2.0, 3.0} (plus branch panel)",
    outputs=("fidelities",),
    sweep=tuple(SweepPoint(f"db{db:g}", _closed(omega_a=0.1, g=0.01, Omega=50.0, delta_b=db))
                for db in (1.5, 2.0, 3.0)),
    dims=(2, 20, 20),
    t_max=2 * pi,
    samples=2001,
))

_register(Preset(
    name="fig5c",
    description="cat fidelities F_pm(t) for delta_b/delta_c in {1.5, 2.0, 3.0} (minus branch panel)",
    outputs=("fidelities",),
    sweep=tuple(SweepPoint(f"db{db:g}", _closed(omega_a=0.1, g=0.01, Omega=50.0, delta_b=db))
                for db in (1.5, 2.0, 3.0)),
    dims=(2, 20, 20),
    t_max=2 * pi,
    samples=2001,
))

_register(Preset(
    name="fig6",
    description="open-system fidelities f(t), f_pm(t) under per-mode decay sweeps",
    outputs=("open",),
    sweep=_kappa_sweep(_OPEN_BASE_G001),
    dims=(2, 14, 14),
    t_max=2 * pi,
    samples=1257,
    dt=5e-3,
    rotate_mode_a=True,
    open_hamiltonian="ext",
))

_register(Preset(
    name="fig7",
    description="open-system detection probabilities P_pm(t), g=0.02 decay sweeps",
    outputs=("open",),
    sweep=_kappa_sweep(_OPEN_BASE_G002),
    dims=(2, 16, 16),
    t_max=2 * pi,
    samples=1257,
    dt=5e-3,
    rotate_mode_a=True,
    open_hamiltonian="app",
))

_register(Preset(
    name="fig8",
    description="open-system logarithmic negativity N_pm(t), g=0.02 decay sweeps",
    outputs=("open",),
    sweep=_kappa_sweep(_OPEN_BASE_G002),
    dims=(2, 16, 16),
    t_max=2 * pi,
    samples=1257,
    dt=5e-3,
    rotate_mode_a=True,
    open_hamiltonian="app",
))


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
