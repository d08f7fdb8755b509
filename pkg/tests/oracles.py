"""Independent reference implementations used to check the library.

Everything here is deliberately computed by a different route than the code
under test: brute-force eigendecomposition for time evolution, textbook
overlap formulas for coherent states, and direct two-branch algebra for the
joint Wigner function.
"""

import numpy as np


def evolve_closed(H, psi0, ts):
    """exp(-iHt)|psi0> by full eigendecomposition of the (Hermitian) matrix."""
    w, V = np.linalg.eigh(H.matrix)
    c = V.conj().T @ psi0.amplitudes
    return [V @ (np.exp(-1j * w * t) * c) for t in np.atleast_1d(ts)]


def coherent_overlap(beta, alpha):
    """<beta|alpha> = exp(-(|a|^2+|b|^2)/2 + b* a)."""
    return np.exp(-(abs(alpha) ** 2 + abs(beta) ** 2) / 2.0 + np.conj(beta) * alpha)


def displaced_parity_element(u, v, z):
    """<u| D(2z) P |v> between coherent states (the Wigner kernel factor)."""
    w = 2.0 * z
    mv = -v
    return (np.exp((w * np.conj(mv) - np.conj(w) * mv) / 2.0)
            * coherent_overlap(u, w + mv))


def cat_wigner(cat, z_b, z_c):
    """Joint Wigner value of a two-branch cat from pure overlap algebra."""
    coeff = [cat.norm_const, cat.sign * cat.norm_const * np.exp(-1j * cat.phase)]
    us = [0.0, cat.amp_b]
    vs = [0.0, cat.amp_c]
    total = 0.0 + 0.0j
    for k in range(2):
        for l in range(2):
            total += (np.conj(coeff[k]) * coeff[l]
                      * displaced_parity_element(us[k], us[l], z_b)
                      * displaced_parity_element(vs[k], vs[l], z_c))
    return float((4.0 / np.pi ** 2) * total.real)


def chi_transient(Omega, delta, kappa, ts):
    """Closed-form solution of chi' = -i Omega - (i delta + kappa/2) chi, chi(0)=0."""
    lam = -(1j * delta + kappa / 2.0)
    chi_ss = Omega / (1j * kappa / 2.0 - delta)
    return chi_ss * (1.0 - np.exp(lam * np.atleast_1d(ts)))


def random_density(dim, rng):
    """A random full-rank density matrix (Hermitian, unit trace, PSD)."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return m / m.trace().real
