#!/usr/bin/env python3
"""Open-system cat generation under a lossy mode a.

Integrates the displaced-frame master equation for two decay rates and
prints how the fidelity to the ideal cat protocol, the detection
probabilities, and the conditional entanglement degrade.  Uses reduced
Fock cutoffs so the demo finishes in under a minute.
"""

import numpy as np

from fredkinsim import ModeDims, SystemParams, build_H1_app, derive_frame
from fredkinsim.lindblad import (
    DissipatorSpec,
    evolve,
    initial_plus_density,
    make_open_observer,
)

dims = ModeDims(2, 10, 10)
ts = np.linspace(0.0, 2 * np.pi, 9)

for kappa_a in (0.02, 0.1):
    p = SystemParams(omega_a=0.1, g=0.01, Omega_b=100, Omega_c=100, delta_b=2.0,
                     kappa_a=kappa_a, kappa_b=0.001, kappa_c=0.001)
    traj = evolve(initial_plus_density(dims), build_H1_app(p, dims),
                  DissipatorSpec.from_params(p), ts, dt=5e-3,
                  a_rotation=derive_frame(p).omega_a_1,
                  observers={"o": make_open_observer(p, dims)})
    obs = traj.observables["o"]
    print(f"\nkappa_a = {kappa_a}  (trace drift {traj.trace_dev.max():.1e}, "
          f"min eigenvalue {traj.min_eig.min():.1e})")
    print(f"{'t':>6} {'f':>8} {'f+':>8} {'P+':>7} {'N+':>7}")
    for t, row in zip(traj.times, obs):
        print(f"{t:6.3f} {row[0]:8.4f} {row[1]:8.4f} {row[3]:7.4f} {row[5]:7.4f}")

print("\nlarger decay drags every figure of merit down; the negativity zeros")
print("at multiples of pi survive because the modes decouple there.")
