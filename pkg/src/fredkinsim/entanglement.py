"""Logarithmic negativity of two-mode (b, c) states.

N = log2 || rho^{T_c} ||_1, with the partial transpose taken on mode c and
the trace norm evaluated as the sum of absolute eigenvalues (Hermitian
input) or singular values.  Pure states take a Schmidt shortcut that the
tests hold against the dense path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import DimensionError, _freeze


@dataclass(frozen=True)
class TwoModeState:
    """Pure state of modes (b, c); amplitudes indexed [i_b, i_c]."""

    amplitudes: np.ndarray
    dim_b: int
    dim_c: int

    def __post_init__(self):
        m = np.asarray(self.amplitudes, dtype=complex)
        if m.shape != (self.dim_b, self.dim_c):
            raise DimensionError(
                f"amplitudes shape {m.shape} != (dim_b, dim_c) = ({self.dim_b},{self.dim_c})"
            )
        nrm = np.linalg.norm(m)
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(f"two-mode state norm deviates from 1 by {abs(nrm - 1.0):.3e}")
        object.__setattr__(self, "amplitudes", _freeze(m))

    def density(self) -> "TwoModeDensity":
        flat = self.amplitudes.reshape(-1)
        return TwoModeDensity(np.outer(flat, flat.conj()), self.dim_b, self.dim_c)


@dataclass(frozen=True)
class TwoModeDensity:
    """Density operator of modes (b, c) with the row-major index i_b*dim_c + i_c."""

    matrix: np.ndarray
    dim_b: int
    dim_c: int

    def __post_init__(self):
        d = self.dim_b * self.dim_c
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (d, d):
            raise DimensionError(f"density shape {m.shape} != ({d},{d})")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > 1e-10:
            raise ValueError(f"two-mode density hermiticity defect {herm:.3e} > 1e-10")
        if abs(m.trace() - 1.0) > 1e-8:
            raise ValueError(f"two-mode density trace {m.trace()} != 1 within 1e-8")
        object.__setattr__(self, "matrix", _freeze(m))


def _as_four_index(rho: TwoModeDensity) -> np.ndarray:
    return rho.matrix.reshape(rho.dim_b, rho.dim_c, rho.dim_b, rho.dim_c)


def partial_transpose_c(rho: TwoModeDensity) -> np.ndarray:
    """Transpose the mode-c indices: ((ib,ic),(jb,jc)) -> ((ib,jc),(jb,ic))."""
    four = _as_four_index(rho)
    d = rho.dim_b * rho.dim_c
    return four.transpose(0, 3, 2, 1).reshape(d, d)


def partial_transpose_b(rho: TwoModeDensity) -> np.ndarray:
    """Transpose the mode-b indices instead (same negativity as mode c)."""
    four = _as_four_index(rho)
    d = rho.dim_b * rho.dim_c
    return four.transpose(2, 1, 0, 3).reshape(d, d)


def trace_norm(m: np.ndarray, method: str = "auto") -> float:
    """Sum of singular values; for Hermitian input, sum of |eigenvalues|.

    ``method``: "eig" (requires Hermitian), "svd", or "auto" (eig when the
    matrix is Hermitian to 1e-12, else svd).
    """
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m)):
        raise ValueError("trace norm of a matrix with non-finite entries")
    if method == "auto":
        method = "eig" if np.max(np.abs(m - m.conj().T)) < 1e-12 else "svd"
    if method == "eig":
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    if method == "svd":
        return float(np.sum(np.linalg.svd(m, compute_uv=False)))
    raise ValueError(f"unknown trace-norm method {method!r}")


def log_negativity(rho: TwoModeDensity, clamp: bool = True) -> float:
    """log2 of the trace norm of the partial transpose w.r.t. mode c.

    Positive-partial-transpose states give exactly 0; numerical negatives
    within -1e-9 are clamped to 0 unless ``clamp`` is False (the raw value
    is useful as a diagnostic).
    """
    n = float(np.log2(trace_norm(partial_transpose_c(rho))))
    if clamp and -1e-9 < n < 0.0:
        return 0.0
    return n


def log_negativity_pure(psi: TwoModeState, clamp: bool = True) -> float:
    """Negativity of a pure state via its Schmidt coefficients.

    For |psi> with Schmidt coefficients s_i the trace norm of the partially
    transposed projector is (sum_i s_i)^2, which the tests pin against the
    dense-matrix path.
    """
    s = np.linalg.svd(psi.amplitudes, compute_uv=False)
    n = float(2.0 * np.log2(np.sum(s)))
    if clamp and -1e-9 < n < 0.0:
        return 0.0
    return n
