"""Joint two-mode Wigner function via displaced-parity expectation values.

W(z_b, z_c) = (4/pi^2) < D_b(z_b) P_b D_b^dag(z_b)  D_c(z_c) P_c D_c^dag(z_c) >

with P = (-1)^n the photon-number parity, so |W| <= 4/pi^2 everywhere.
Plane cuts sweep two of the four phase-space coordinates on a grid while the
other two are held fixed; line cuts sweep a diagonal.  Displaced-parity
operators are precomputed once per axis value and reused across the
orthogonal axis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from .entanglement import TwoModeDensity, TwoModeState
from .fock import parity

WIGNER_SCALE = 4.0 / np.pi**2

#: imaginary residue allowed in the displaced-parity expectation
IMAG_TOL = 1e-8


@dataclass(frozen=True)
class PhasePoint:
    z_b: complex
    z_c: complex

    def __post_init__(self):
        for z in (self.z_b, self.z_c):
            z = complex(z)
            if not (np.isfinite(z.real) and np.isfinite(z.imag)):
                raise ValueError(f"phase-space point must be finite, got {self!r}")


@dataclass(frozen=True)
class WignerSlice:
    """Tabulated W on a plane (values 2-D) or along a line (values 1-D).

    ``axis1``/``axis2`` are the swept coordinate values; for a line cut both
    have the same length and values[i] belongs to (axis1[i], axis2[i]).
    ``fixed`` documents the two held coordinates.
    """

    plane: str
    fixed: tuple[tuple[str, float], ...]
    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray

    @property
    def is_line(self) -> bool:
        return self.values.ndim == 1


def _displacement_block(dim: int, w: complex) -> np.ndarray:
    """Exact matrix elements <m|D(w)|n> of the untruncated displacement.

    Laguerre-polynomial closed form, so large |w| probes stay exact on the
    (dim x dim) block (unlike a truncated matrix exponential):
    <m|D(w)|n> = sqrt(n!/m!) w^{m-n} e^{-|w|^2/2} L_n^{(m-n)}(|w|^2), m >= n.
    """
    if w == 0:
        return np.eye(dim, dtype=complex)
    x = abs(w) ** 2
    ln_w = np.log(abs(w))
    phase = np.exp(1j * np.angle(w))
    m_idx = np.arange(dim)[:, None]
    n_idx = np.arange(dim)[None, :]
    k = m_idx - n_idx
    low = np.minimum(m_idx, n_idx)
    lag = eval_genlaguerre(low, np.abs(k), x)
    log_amp = (0.5 * (gammaln(low + 1) - gammaln(np.maximum(m_idx, n_idx) + 1))
               + np.abs(k) * ln_w - x / 2.0)
    out = lag * np.exp(log_amp) * phase ** k
    # m < n elements carry (-conj(w))^{n-m}; phase**k already gives conj(w)^{n-m}
    return out * np.where(k < 0, (-1.0) ** np.abs(k), 1.0)


def displaced_parity(dim: int, z: complex) -> np.ndarray:
    """D(z) P D^dag(z) = D(2z) P, from exact displacement matrix elements."""
    return _displacement_block(dim, 2.0 * z) @ parity(dim)


def _displaced_parity_expectation(state, op_b: np.ndarray, op_c: np.ndarray) -> complex:
    if isinstance(state, TwoModeState):
        psi = state.amplitudes
        return complex(np.vdot(psi, op_b @ psi @ op_c.T))
    if isinstance(state, TwoModeDensity):
        four = state.matrix.reshape(state.dim_b, state.dim_c, state.dim_b, state.dim_c)
        return complex(np.einsum("abcd,ca,db->", four, op_b, op_c))
    raise TypeError(f"expected TwoModeState or TwoModeDensity, got {type(state)!r}")


def _dims_of(state) -> tuple[int, int]:
    return state.dim_b, state.dim_c


def _comfort_check(dim_b: int, dim_c: int, zs_b, zs_c) -> None:
    worst_b = max((abs(z) ** 2 for z in zs_b), default=0.0)
    worst_c = max((abs(z) ** 2 for z in zs_c), default=0.0)
    if worst_b > dim_b / 4 or worst_c > dim_c / 4:
        warnings.warn(
            f"phase-space probe |z|^2 up to ({worst_b:.3g}, {worst_c:.3g}) exceeds "
            f"dim/4 = ({dim_b / 4:.3g}, {dim_c / 4:.3g}); values there probe the "
            "truncated tail of the state",
            stacklevel=3,
        )


def joint_wigner(state, p: PhasePoint) -> float:
    """W at a single phase-space point; asserts a real expectation value."""
    dim_b, dim_c = _dims_of(state)
    _comfort_check(dim_b, dim_c, [p.z_b], [p.z_c])
    val = WIGNER_SCALE * _displaced_parity_expectation(
        state, displaced_parity(dim_b, p.z_b), displaced_parity(dim_c, p.z_c)
    )
    if abs(val.imag) > IMAG_TOL:
        raise ValueError(f"non-real Wigner value {val!r} (imag residue > {IMAG_TOL})")
    return val.real


def _sweep(state, zs_b: Sequence[complex], zs_c: Sequence[complex],
           pairwise: bool) -> np.ndarray:
    dim_b, dim_c = _dims_of(state)
    _comfort_check(dim_b, dim_c, zs_b, zs_c)
    ops_b = [displaced_parity(dim_b, z) for z in zs_b]
    ops_c = [displaced_parity(dim_c, z) for z in zs_c]
    if pairwise:
        vals = np.empty(len(zs_b))
        pairs = zip(ops_b, ops_c)
        for i, (ob, oc) in enumerate(pairs):
            v = WIGNER_SCALE * _displaced_parity_expectation(state, ob, oc)
            if abs(v.imag) > IMAG_TOL:
                raise ValueError(f"non-real Wigner value at line index {i}: {v!r}")
            vals[i] = v.real
        return vals
    vals = np.empty((len(zs_b), len(zs_c)))
    for i, ob in enumerate(ops_b):
        for j, oc in enumerate(ops_c):
            v = WIGNER_SCALE * _displaced_parity_expectation(state, ob, oc)
            if abs(v.imag) > IMAG_TOL:
                raise ValueError(f"non-real Wigner value at grid ({i},{j}): {v!r}")
            vals[i, j] = v.real
    return vals


def _grid(spec) -> np.ndarray:
    arr = np.asarray(spec, dtype=float)
    if arr.size == 0:
        raise ValueError("empty Wigner grid")
    return arr


def plane_slice(state, plane: str, axis1, axis2,
                fixed: tuple[float, float] = (0.0, 0.0)) -> WignerSlice:
    """W on a 2-D cut of the 4-D phase space.

    ``plane="re_re"`` sweeps Re(z_b) x Re(z_c) with Im parts held at
    ``fixed``; ``plane="im_im"`` sweeps the imaginary parts with the real
    parts held.
    """
    a1, a2 = _grid(axis1), _grid(axis2)
    fb, fc = fixed
    if plane == "re_re":
        zs_b = [x + 1j * fb for x in a1]
        zs_c = [y + 1j * fc for y in a2]
        held = (("Im(z_b)", fb), ("Im(z_c)", fc))
    elif plane == "im_im":
        zs_b = [fb + 1j * x for x in a1]
        zs_c = [fc + 1j * y for y in a2]
        held = (("Re(z_b)", fb), ("Re(z_c)", fc))
    else:
        raise ValueError(f"plane must be 're_re' or 'im_im', got {plane!r}")
    return WignerSlice(plane=plane, fixed=held, axis1=a1, axis2=a2,
                       values=_sweep(state, zs_b, zs_c, pairwise=False))


def line_cut(state, kind: str, axis,
             fixed: tuple[float, float] | None = None) -> WignerSlice:
    """Diagonal line cuts through the joint Wigner function.

    ``kind="re_diag"``: Re(z_b) = Re(z_c) swept together, imaginary parts
    held at ``fixed`` (default (0.5, 0.4)).  ``kind="im_diag"``:
    Im(z_b) = Im(z_c) swept, real parts held (default (0.5, 0.0)).
    """
    s = _grid(axis)
    if kind == "re_diag":
        fb, fc = (0.5, 0.4) if fixed is None else fixed
        zs_b = [x + 1j * fb for x in s]
        zs_c = [x + 1j * fc for x in s]
        held = (("Im(z_b)", fb), ("Im(z_c)", fc))
    elif kind == "im_diag":
        fb, fc = (0.5, 0.0) if fixed is None else fixed
        zs_b = [fb + 1j * y for y in s]
        zs_c = [fc + 1j * y for y in s]
        held = (("Re(z_b)", fb), ("Re(z_c)", fc))
    else:
        raise ValueError(f"kind must be 're_diag' or 'im_diag', got {kind!r}")
    return WignerSlice(plane=kind, fixed=held, axis1=s, axis2=s.copy(),
                       values=_sweep(state, zs_b, zs_c, pairwise=True))


def write_slice_csv(slc: WignerSlice, path, metadata: dict | None = None) -> None:
    """Serialize a slice: comment header with plane metadata, then axis1,axis2,W."""
    lines = [f"# plane={slc.plane}"]
    lines.append("# fixed=" + ",".join(f"{k}={v:.17g}" for k, v in slc.fixed))
    for key, val in (metadata or {}).items():
        lines.append(f"# {key}={val}")
    lines.append("axis1,axis2,W")
    if slc.is_line:
        for x, y, w in zip(slc.axis1, slc.axis2, slc.values):
            lines.append(f"{x:.17g},{y:.17g},{w:.17g}")
    else:
        for i, x in enumerate(slc.axis1):
            for j, y in enumerate(slc.axis2):
                lines.append(f"{x:.17g},{y:.17g},{slc.values[i, j]:.17g}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
