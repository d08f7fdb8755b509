"""System parameters, displaced frames, and Hamiltonian builders.

All frequencies are expressed in units of the mode-c detuning (delta_c = 1
by convention) and time in its inverse.  The rotating-frame Hamiltonian

    H_I = omega_a n_a + delta_b b^dag b + delta_c c^dag c
          + g n_a (b^dag c + c^dag b) + Omega_b (b^dag + b) + Omega_c (c^dag + c)

is the simulation entry point; displacing modes b and c by xi = -Omega/delta
turns the driven Fredkin coupling into a three-mode optomechanical coupling
with enhanced strengths g_b = g xi_c and g_c = g xi_b (``build_H_ext``), and
dropping the residual exchange term gives the optomechanical approximation
(``build_H_app``).  The open-system analogues use the complex steady-state
displacements chi_ss = Omega / (i kappa/2 - delta).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import FockOperator, ModeDims, annihilation, creation, number, tensor3


class SingularFrameError(ValueError):
    """Detunings for which the displaced frame or rotation angle is singular."""


@dataclass(frozen=True)
class SystemParams:
    """Model constants in units of delta_c.

    delta_b != delta_c and both nonzero: the mode-rotation angle and the
    approximation conditions are singular otherwise.
    """

    omega_a: float
    g: float
    Omega_b: float
    Omega_c: float
    delta_b: float
    delta_c: float = 1.0
    kappa_a: float = 0.0
    kappa_b: float = 0.0
    kappa_c: float = 0.0
    nbar_a: float = 0.0
    nbar_b: float = 0.0
    nbar_c: float = 0.0

    def __post_init__(self):
        if self.delta_b == 0 or self.delta_c == 0:
            raise SingularFrameError("detunings delta_b, delta_c must be nonzero")
        if self.delta_b == self.delta_c:
            raise SingularFrameError(
                "delta_b must differ from delta_c (rotation angle singular at equality)"
            )
        if self.g < 0:
            raise ValueError("coupling g must be >= 0")
        for name in ("kappa_a", "kappa_b", "kappa_c", "nbar_a", "nbar_b", "nbar_c"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class FrameParams:
    """Derived displaced-frame quantities."""

    xi_b: float
    xi_c: float
    g_b: float
    g_c: float
    omega_a_tilde: float
    chi_b_ss: complex
    chi_c_ss: complex
    omega_a_1: float


def derive_frame(params: SystemParams, omega_a1_variant: str = "omega_a") -> FrameParams:
    """Displacement amplitudes, effective couplings, and shifted frequencies.

    ``omega_a1_variant`` selects the bare frequency entering the open-system
    mode-a shift omega_a_1: ``"omega_a"`` (default, consistent with the
    closed-system frame) or ``"omega_c"`` (the printed alternative, read as
    the rotating-frame mode-c frequency delta_c since lab frequencies are
    not tracked separately).
    """
    xi_b = -params.Omega_b / params.delta_b
    xi_c = -params.Omega_c / params.delta_c
    g_b = params.g * xi_c
    g_c = params.g * xi_b
    omega_a_tilde = params.omega_a + 2.0 * params.g * xi_b * xi_c
    chi_b_ss = params.Omega_b / (1j * params.kappa_b / 2.0 - params.delta_b)
    chi_c_ss = params.Omega_c / (1j * params.kappa_c / 2.0 - params.delta_c)
    if omega_a1_variant == "omega_a":
        base = params.omega_a
    elif omega_a1_variant == "omega_c":
        base = params.delta_c
    else:
        raise ValueError(f"unknown omega_a1_variant {omega_a1_variant!r}")
    omega_a_1 = base + params.g * 2.0 * (chi_b_ss.conjugate() * chi_c_ss).real
    return FrameParams(
        xi_b=xi_b,
        xi_c=xi_c,
        g_b=g_b,
        g_c=g_c,
        omega_a_tilde=omega_a_tilde,
        chi_b_ss=chi_b_ss,
        chi_c_ss=chi_c_ss,
        omega_a_1=omega_a_1,
    )


def _three_mode_pieces(dims: ModeDims):
    """Composite n_a, n_b, n_c, exchange b^dag c + c^dag b, and ladder embeddings."""
    n_a = tensor3(dims, op_a=number(dims.dim_a))
    n_b = tensor3(dims, op_b=number(dims.dim_b))
    n_c = tensor3(dims, op_c=number(dims.dim_c))
    bd_c = tensor3(dims, op_b=creation(dims.dim_b), op_c=annihilation(dims.dim_c))
    exchange = bd_c + bd_c.dag()
    b = tensor3(dims, op_b=annihilation(dims.dim_b))
    c = tensor3(dims, op_c=annihilation(dims.dim_c))
    return n_a, n_b, n_c, exchange, b, c


def build_H_I(params: SystemParams, dims: ModeDims) -> FockOperator:
    """Rotating-frame Hamiltonian with the driven Fredkin coupling."""
    n_a, n_b, n_c, exchange, b, c = _three_mode_pieces(dims)
    h = (
        params.omega_a * n_a.matrix
        + params.delta_b * n_b.matrix
        + params.delta_c * n_c.matrix
        + params.g * (n_a.matrix @ exchange.matrix)
        + params.Omega_b * (b.matrix + b.matrix.conj().T)
        + params.Omega_c * (c.matrix + c.matrix.conj().T)
    )
    return FockOperator(h, dims)


def _displaced_hamiltonian(
    params: SystemParams,
    dims: ModeDims,
    freq_a: float,
    amp_b: complex,
    amp_c: complex,
    keep_exchange: bool,
) -> FockOperator:
    # common skeleton of H_ext / H_app / H1_ext / H1_app: the linear couplings
    # are g*n_a*(amp_b b^dag + amp_b^* b) and g*n_a*(amp_c c^dag + amp_c^* c)
    n_a, n_b, n_c, exchange, b, c = _three_mode_pieces(dims)
    na = n_a.matrix
    h = freq_a * na + params.delta_b * n_b.matrix + params.delta_c * n_c.matrix
    if keep_exchange:
        h = h + params.g * (na @ exchange.matrix)
    lin_b = amp_b * b.matrix.conj().T + np.conj(amp_b) * b.matrix
    lin_c = amp_c * c.matrix.conj().T + np.conj(amp_c) * c.matrix
    h = h + params.g * (na @ (lin_b + lin_c))
    return FockOperator(h, dims)


def build_H_ext(params: SystemParams, dims: ModeDims) -> FockOperator:
    """Displaced-frame Hamiltonian, exchange term retained (exact)."""
    fr = derive_frame(params)
    return _displaced_hamiltonian(params, dims, fr.omega_a_tilde, fr.xi_c, fr.xi_b, True)


def build_H_app(params: SystemParams, dims: ModeDims) -> FockOperator:
    """Three-mode optomechanical approximation: H_ext minus the exchange term."""
    fr = derive_frame(params)
    return _displaced_hamiltonian(params, dims, fr.omega_a_tilde, fr.xi_c, fr.xi_b, False)


def build_H1_ext(
    params: SystemParams, dims: ModeDims, omega_a1_variant: str = "omega_a"
) -> FockOperator:
    """Open-system displaced Hamiltonian with steady-state displacements."""
    fr = derive_frame(params, omega_a1_variant)
    return _displaced_hamiltonian(params, dims, fr.omega_a_1, fr.chi_c_ss, fr.chi_b_ss, True)


def build_H1_app(
    params: SystemParams, dims: ModeDims, omega_a1_variant: str = "omega_a"
) -> FockOperator:
    """Open-system optomechanical approximation (exchange term dropped)."""
    fr = derive_frame(params, omega_a1_variant)
    return _displaced_hamiltonian(params, dims, fr.omega_a_1, fr.chi_c_ss, fr.chi_b_ss, False)


@dataclass(frozen=True)
class ApproxMargins:
    """Margin ratios of the two drive-displacement approximation conditions.

    The exchange term is negligible when both ratios are >> 1; ``satisfied``
    uses an order of magnitude (ratio >= threshold, default 10) as the gate.
    """

    r_b: float
    r_c: float
    threshold: float
    satisfied: bool


def check_approx(
    params: SystemParams, n_b: int = 1, n_c: int = 1, threshold: float = 10.0
) -> ApproxMargins:
    """Evaluate |xi_c| |1 - delta_c/delta_b| / sqrt(n_c) and the b-mode analogue.

    n_b, n_c are the maximally contributed excitation numbers (default 1 for
    the single-photon protocol); a zero excitation number makes the
    corresponding condition vacuous (ratio = inf).
    """
    if n_b < 0 or n_c < 0:
        raise ValueError("excitation numbers must be >= 0")
    if params.delta_b == params.delta_c:
        raise SingularFrameError("approximation conditions singular at delta_b == delta_c")
    fr = derive_frame(params)
    r_c = (
        float("inf")
        if n_c == 0
        else abs(fr.xi_c) * abs(1.0 - params.delta_c / params.delta_b) / np.sqrt(n_c)
    )
    r_b = (
        float("inf")
        if n_b == 0
        else abs(fr.xi_b) * abs(params.delta_b / params.delta_c - 1.0) / np.sqrt(n_b)
    )
    return ApproxMargins(r_b=float(r_b), r_c=float(r_c), threshold=threshold,
                         satisfied=bool(r_b >= threshold and r_c >= threshold))
