"""Truncated-Fock-space linear algebra for a three-bosonic-mode system.

Everything is dense complex numpy over the composite Hilbert space of the
three modes (a, b, c), with the fixed mode order (a, b, c) and the row-major
composite index

    i = i_a * dim_b * dim_c + i_b * dim_c + i_c.

Single-mode operators and kets are plain ``numpy.ndarray``; composite
operators and states are wrapped in :class:`FockOperator`,
:class:`StateVector`, and :class:`DensityMatrix`, which carry their
:class:`ModeDims` and are immutable after construction (safe to share
between threads).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

#: Default cap on the total composite dimension; dense algebra above this
#: is not tractable on a desk machine.
DEFAULT_DIM_CAP = 65536

HERMITIAN_TOL = 1e-12


class DimensionError(ValueError):
    """Invalid or mismatched Hilbert-space dimensions."""


class TruncationError(RuntimeError):
    """A state or operator does not fit in the truncated Fock space."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class ModeDims:
    """Fock-level truncations (dim_a, dim_b, dim_c) of the three modes."""

    dim_a: int
    dim_b: int
    dim_c: int
    cap: int = field(default=DEFAULT_DIM_CAP, compare=False, repr=False)

    def __post_init__(self):
        for name in ("dim_a", "dim_b", "dim_c"):
            d = getattr(self, name)
            if not isinstance(d, (int, np.integer)) or d < 2:
                raise DimensionError(f"{name} must be an integer >= 2, got {d!r}")
        if self.total > self.cap:
            raise DimensionError(
                f"total dimension {self.total} exceeds cap {self.cap}; "
                "dense three-mode algebra would be intractable"
            )

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b * self.dim_c

    def encode(self, i_a: int, i_b: int, i_c: int) -> int:
        """Composite index of the basis state |i_a, i_b, i_c>."""
        if not (0 <= i_a < self.dim_a and 0 <= i_b < self.dim_b and 0 <= i_c < self.dim_c):
            raise DimensionError(f"indices ({i_a},{i_b},{i_c}) out of range for {self}")
        return (i_a * self.dim_b + i_b) * self.dim_c + i_c

    def decode(self, i: int) -> tuple[int, int, int]:
        """Inverse of :meth:`encode`."""
        if not 0 <= i < self.total:
            raise DimensionError(f"composite index {i} out of range for {self}")
        i_a, rem = divmod(i, self.dim_b * self.dim_c)
        i_b, i_c = divmod(rem, self.dim_c)
        return i_a, i_b, i_c

    def number_diag(self, mode: str) -> np.ndarray:
        """Diagonal of the number operator of ``mode`` in the composite basis."""
        na = np.arange(self.dim_a)
        nb = np.arange(self.dim_b)
        nc = np.arange(self.dim_c)
        grids = {"a": 0, "b": 1, "c": 2}
        if mode not in grids:
            raise ValueError(f"mode must be one of 'a','b','c', got {mode!r}")
        full = np.zeros((self.dim_a, self.dim_b, self.dim_c))
        full += {"a": na[:, None, None], "b": nb[None, :, None], "c": nc[None, None, :]}[mode]
        return full.reshape(-1)


@dataclass(frozen=True)
class FockOperator:
    """A dense operator on the composite (a, b, c) space."""

    matrix: np.ndarray
    dims: ModeDims

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"operator matrix must be square, got shape {m.shape}")
        if m.shape[0] != self.dims.total:
            raise DimensionError(
                f"matrix dimension {m.shape[0]} != product of mode dims {self.dims.total}"
            )
        object.__setattr__(self, "matrix", _freeze(m))

    def dag(self) -> "FockOperator":
        return FockOperator(self.matrix.conj().T, self.dims)

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.hermiticity_defect() < tol

    def _check_same_dims(self, other: "FockOperator"):
        if self.dims != other.dims:
            raise DimensionError(f"operator dims mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other: "FockOperator") -> "FockOperator":
        self._check_same_dims(other)
        return FockOperator(self.matrix + other.matrix, self.dims)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        self._check_same_dims(other)
        return FockOperator(self.matrix - other.matrix, self.dims)

    def __mul__(self, scalar) -> "FockOperator":
        return FockOperator(self.matrix * scalar, self.dims)

    __rmul__ = __mul__

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        self._check_same_dims(other)
        return FockOperator(self.matrix @ other.matrix, self.dims)


@dataclass(frozen=True)
class StateVector:
    """A normalized pure state on the composite (a, b, c) space."""

    amplitudes: np.ndarray
    dims: ModeDims

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if v.size != self.dims.total:
            raise DimensionError(
                f"state length {v.size} != product of mode dims {self.dims.total}"
            )
        nrm = np.linalg.norm(v)
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(
                f"state norm {nrm!r} deviates from 1 by more than 1e-10; "
                "use StateVector.from_amplitudes to normalize"
            )
        object.__setattr__(self, "amplitudes", _freeze(v))

    @classmethod
    def from_amplitudes(cls, amplitudes, dims: ModeDims) -> "StateVector":
        v = np.asarray(amplitudes, dtype=complex).reshape(-1)
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise ValueError("cannot normalize a zero state vector")
        return cls(v / nrm, dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "StateVector") -> complex:
        if self.dims != other.dims:
            raise DimensionError("state dims mismatch")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


@dataclass(frozen=True)
class DensityMatrix:
    """A density operator on the composite (a, b, c) space.

    Hermiticity (1e-10) and unit trace (1e-8) are enforced at construction;
    positivity is checked in tests and in trajectory diagnostics, not here.
    """

    matrix: np.ndarray
    dims: ModeDims

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != self.dims.total:
            raise DimensionError(f"density matrix shape {m.shape} incompatible with {self.dims}")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > 1e-10:
            raise ValueError(f"density matrix hermiticity defect {herm:.3e} > 1e-10")
        tr = m.trace()
        if abs(tr - 1.0) > 1e-8:
            raise ValueError(f"density matrix trace {tr} deviates from 1 by more than 1e-8")
        object.__setattr__(self, "matrix", _freeze(m))

    def trace_deviation(self) -> float:
        return float(abs(self.matrix.trace() - 1.0))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[0])


# ---------------------------------------------------------------------------
# single-mode building blocks (plain ndarrays)
# ---------------------------------------------------------------------------

def annihilation(dim: int) -> np.ndarray:
    """Ladder operator with matrix elements <n-1| a |n> = sqrt(n)."""
    if dim < 2:
        raise DimensionError(f"annihilation needs dim >= 2, got {dim}")
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def creation(dim: int) -> np.ndarray:
    return annihilation(dim).conj().T


def number(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def parity(dim: int) -> np.ndarray:
    """Photon-number parity (-1)^n as a diagonal matrix."""
    if dim < 1:
        raise DimensionError(f"parity needs dim >= 1, got {dim}")
    return np.diag((-1.0) ** np.arange(dim)).astype(complex)


def displacement(dim: int, z: complex) -> np.ndarray:
    """Displacement operator exp(z a^dag - z* a) on the truncated space.

    Truncation makes this only approximately unitary; reliable for
    |z|^2 <~ dim/4 (a warning is emitted beyond that).
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"displacement amplitude must be finite, got {z!r}")
    if abs(z) ** 2 > dim / 4:
        warnings.warn(
            f"displacement |z|^2 = {abs(z) ** 2:.3g} exceeds dim/4 = {dim / 4:.3g}; "
            "truncated-space result is unreliable",
            stacklevel=2,
        )
    gen = z * creation(dim) - np.conj(z) * annihilation(dim)
    return expm(gen)


def unitarity_defect(op: np.ndarray) -> float:
    """max |U^dag U - I|, the truncation-induced deviation from unitarity."""
    d = op.shape[0]
    return float(np.max(np.abs(op.conj().T @ op - np.eye(d))))


def fock_state(dim: int, n: int) -> np.ndarray:
    if not 0 <= n < dim:
        raise DimensionError(f"Fock level {n} out of range for dim {dim}")
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return v


def coherent_state(dim: int, alpha: complex) -> np.ndarray:
    """Coherent-state amplitudes c_n = e^{-|a|^2/2} a^n / sqrt(n!), renormalized.

    Renormalization on the truncated space keeps the vector exactly unit
    norm; reliable for |alpha|^2 <~ dim/4 (warned beyond).
    """
    alpha = complex(alpha)
    if abs(alpha) ** 2 > dim / 4:
        warnings.warn(
            f"coherent |alpha|^2 = {abs(alpha) ** 2:.3g} exceeds dim/4 = {dim / 4:.3g}; "
            "truncation is unreliable",
            stacklevel=2,
        )
    n = np.arange(dim)
    # log-space to avoid factorial overflow at large dim
    with np.errstate(divide="ignore"):
        log_mag = n * np.log(abs(alpha)) if alpha != 0 else np.where(n == 0, 0.0, -np.inf)
    log_mag = log_mag - 0.5 * np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, dim)))))
    phase = np.exp(1j * n * np.angle(alpha)) if alpha != 0 else np.ones(dim)
    v = np.exp(log_mag - abs(alpha) ** 2 / 2) * phase
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# composite-space constructions
# ---------------------------------------------------------------------------

def tensor3(dims: ModeDims, op_a=None, op_b=None, op_c=None) -> FockOperator:
    """Kronecker product in the fixed (a, b, c) order.

    Single-mode factors are plain matrices; ``None`` means identity on
    that mode.
    """
    parts = []
    for op, d, name in ((op_a, dims.dim_a, "a"), (op_b, dims.dim_b, "b"), (op_c, dims.dim_c, "c")):
        if op is None:
            parts.append(identity(d))
        else:
            m = np.asarray(op, dtype=complex)
            if m.shape != (d, d):
                raise DimensionError(
                    f"mode-{name} factor has shape {m.shape}, expected ({d},{d})"
                )
            parts.append(m)
    return FockOperator(np.kron(np.kron(parts[0], parts[1]), parts[2]), dims)


def mode_operator(dims: ModeDims, mode: str, single_mode_op=None) -> FockOperator:
    """Embed a single-mode operator (default: annihilation) into the composite space."""
    d = {"a": dims.dim_a, "b": dims.dim_b, "c": dims.dim_c}[mode]
    op = annihilation(d) if single_mode_op is None else single_mode_op
    kw = {f"op_{mode}": op}
    return tensor3(dims, **kw)


def basis_state(dims: ModeDims, levels: tuple[int, int, int]) -> StateVector:
    v = np.zeros(dims.total, dtype=complex)
    v[dims.encode(*levels)] = 1.0
    return StateVector(v, dims)


def product_state(dims: ModeDims, vec_a, vec_b, vec_c) -> StateVector:
    v = np.kron(np.kron(np.asarray(vec_a, complex), np.asarray(vec_b, complex)),
                np.asarray(vec_c, complex))
    return StateVector.from_amplitudes(v, dims)


def expectation(state, op: FockOperator) -> complex:
    """<psi|O|psi> for a StateVector or Tr(rho O) for a DensityMatrix."""
    if isinstance(state, StateVector):
        if state.dims != op.dims:
            raise DimensionError("state/operator dims mismatch")
        return complex(np.vdot(state.amplitudes, op.matrix @ state.amplitudes))
    if isinstance(state, DensityMatrix):
        if state.dims != op.dims:
            raise DimensionError("state/operator dims mismatch")
        return complex(np.einsum("ij,ji->", state.matrix, op.matrix))
    raise TypeError(f"expected StateVector or DensityMatrix, got {type(state)!r}")
