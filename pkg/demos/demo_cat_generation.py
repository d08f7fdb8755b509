#!/usr/bin/env python3
"""Walk through the closed-system cat-state protocol.

Starting from (|0>_a + |1>_a)/sqrt2 |0,0>, the displaced-frame dynamics
drags the n_a = 1 branch around a circle in phase space; measuring mode a
in the |+/-> basis leaves modes b and c in an entangled two-mode cat.
This script prints the amplitudes, detection probabilities, entanglement,
and branch fidelities over one period.
"""

import numpy as np

from fredkinsim import (
    SystemParams,
    approx_solution,
    cat_to_state,
    detection_probs,
    exact_solution,
    fidelity_F,
    make_cat,
)
from fredkinsim.entanglement import log_negativity_pure

params = SystemParams(omega_a=0.1, g=0.01, Omega_b=100, Omega_c=100, delta_b=2.0)

print("driven three-mode system, delta_b/delta_c = 2, g = 0.01, Omega = 100")
print("conditional displacement scales: eta_b = eta_c = 0.5 -> max |amp| = 1.0")
print()
print(f"{'t':>6} {'|alpha|':>8} {'|beta|':>8} {'P+':>7} {'P-':>7} "
      f"{'N+':>7} {'N-':>7} {'F(t)':>9}")
for t in np.linspace(0.0, 2 * np.pi, 17):
    sol = approx_solution(params, float(t))
    pp, pm = detection_probs(sol)
    negs = []
    for sign in (+1, -1):
        try:
            negs.append(log_negativity_pure(cat_to_state(make_cat(sol, sign), 20, 20)))
        except Exception:
            negs.append(0.0)  # degenerate minus branch at t = 0
    print(f"{t:6.3f} {abs(sol.alpha):8.4f} {abs(sol.beta):8.4f} "
          f"{pp:7.4f} {pm:7.4f} {negs[0]:7.4f} {negs[1]:7.4f} "
          f"{fidelity_F(params, float(t)):9.6f}")

print()
t_star = 1.85
s_app = approx_solution(params, t_star)
s_ext = exact_solution(params, t_star)
print(f"at the detection time t = {t_star}:")
print(f"  approximate branch: |alpha| = {abs(s_app.alpha):.4f}, |beta| = {abs(s_app.beta):.4f}")
print(f"  exact branch:       |alpha| = {abs(s_ext.alpha):.4f}, |beta| = {abs(s_ext.beta):.4f}")
print(f"  branch fidelity F = {fidelity_F(params, t_star):.6f}")
print("entanglement decouples at t = pi (one amplitude returns to zero) and")
print("revives in the second half-period.")
