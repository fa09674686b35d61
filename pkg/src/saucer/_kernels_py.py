"""Pure-Python RK4 kernel for constant-control maneuver flows.

Mirror of the compiled extension in _kernels.pyx; saucer.kernels picks
whichever is available. Plain float arithmetic beats numpy at this size.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"

ATTACKING, LANDING, G2_SIMPLE, G2_STRICT = 0, 1, 2, 3


def _zcoeffs(mode: int, a: float, b: float, u1: float, u2: float, u3: float):
    """Coefficients (c1..c4) of the control law over the Z-frame."""
    if mode == ATTACKING:
        return 3.0 * u1 * u3, u2 * u3, u1, u2
    if mode == LANDING:
        c1 = u3 * ((1.0 + b * b) * u2 + 3.0 * a * b * u1)
        c2 = -u3 * (a * b * u2 + 3.0 * (1.0 + a * a) * u1)
        return c1, c2, u1, u2
    if mode == G2_SIMPLE:
        return (u1,
                u1 * (u2 + u3),
                u1 * (u2 * u2 + 2.0 * u3 * u2),
                u1 * (u2 * u2 * u2 + 3.0 * u3 * u2 * u2))
    if mode == G2_STRICT:
        return u1, u1 * u2, u1 * u2 * u2, u1 * u2 * u2 * u2
    raise ValueError("unknown mode id %r" % (mode,))


def velocity(mode: int, p, u1: float, u2: float, u3: float) -> np.ndarray:
    """c1 Z1 + c2 Z2 + c3 Z3 + c4 Z4 at p, as coordinate components."""
    a, b = float(p[3]), float(p[4])
    c1, c2, c3, c4 = _zcoeffs(mode, a, b, u1, u2, u3)
    return np.array([c1, c2, c1 * a + c2 * b, c4, -3.0 * c3])


def rk4_constant(mode: int, p0, u1: float, u2: float, u3: float,
                 duration: float, n_steps: int) -> np.ndarray:
    """States of the constant-control flow; shape (n_steps + 1, 5)."""
    if n_steps < 1:
        raise ValueError("n_steps must be positive")
    out = np.empty((n_steps + 1, 5))
    x, y, z, a, b = (float(v) for v in p0)
    out[0] = (x, y, z, a, b)
    h = duration / n_steps

    def f(xv, yv, zv, av, bv):
        c1, c2, c3, c4 = _zcoeffs(mode, av, bv, u1, u2, u3)
        return c1, c2, c1 * av + c2 * bv, c4, -3.0 * c3

    for step in range(1, n_steps + 1):
        k1 = f(x, y, z, a, b)
        k2 = f(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1], z + 0.5 * h * k1[2],
               a + 0.5 * h * k1[3], b + 0.5 * h * k1[4])
        k3 = f(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1], z + 0.5 * h * k2[2],
               a + 0.5 * h * k2[3], b + 0.5 * h * k2[4])
        k4 = f(x + h * k3[0], y + h * k3[1], z + h * k3[2],
               a + h * k3[3], b + h * k3[4])
        x += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        y += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        z += h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        a += h / 6.0 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        b += h / 6.0 * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4])
        out[step] = (x, y, z, a, b)
    return out
