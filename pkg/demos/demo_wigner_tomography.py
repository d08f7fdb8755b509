#!/usr/bin/env python3
"""Joint Wigner tomography of the generated cats, as ASCII heat maps.

The displaced-parity expectation is evaluated on a coarse grid at the high
entanglement time (t = 1.85) and at the decoupling time (t = pi): the first
shows negative interference structure, the second a plain positive blob on
the Re-Re plane.
"""

import numpy as np

from fredkinsim import SystemParams, approx_solution, cat_to_state, make_cat, plane_slice

GLYPHS = " .:-=+*#%@"

params = SystemParams(omega_a=0.1, g=0.01, Omega_b=100, Omega_c=100, delta_b=2.0)
axis = np.linspace(-2.5, 2.5, 33)


def ascii_map(values):
    top = np.abs(values).max()
    rows = []
    for row in values:
        chars = []
        for v in row:
            if v < -0.01:
                chars.append("n")  # negative region marker
            else:
                chars.append(GLYPHS[min(int(abs(v) / top * (len(GLYPHS) - 1)), 9)])
        rows.append("".join(chars))
    return "\n".join(rows)


for t, label in ((1.85, "t = 1.85 (entangled)"), (np.pi, "t = pi (decoupled)")):
    state = cat_to_state(make_cat(approx_solution(params, float(t)), +1), 20, 20)
    for plane in ("re_re", "im_im"):
        slc = plane_slice(state, plane, axis, axis)
        print(f"\nW+ {label}, {plane} plane  "
              f"[min {slc.values.min():+.3f}, max {slc.values.max():+.3f}] "
              "('n' marks W < -0.01)")
        print(ascii_map(slc.values))
