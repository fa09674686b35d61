# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernel for constant-control maneuver flows.

Kept in lockstep with _kernels_py.py; saucer.kernels selects between them.
"""
import numpy as np

BACKEND = "compiled"

ATTACKING, LANDING, G2_SIMPLE, G2_STRICT = 0, 1, 2, 3


cdef inline void _velocity(int mode, double a, double b,
                           double u1, double u2, double u3,
                           double *v) noexcept nogil:
    cdef double c1, c2, c3, c4
    if mode == 0:
        c1 = 3.0 * u1 * u3
        c2 = u2 * u3
        c3 = u1
        c4 = u2
    elif mode == 1:
        c1 = u3 * ((1.0 + b * b) * u2 + 3.0 * a * b * u1)
        c2 = -u3 * (a * b * u2 + 3.0 * (1.0 + a * a) * u1)
        c3 = u1
        c4 = u2
    elif mode == 2:
        c1 = u1
        c2 = u1 * (u2 + u3)
        c3 = u1 * (u2 * u2 + 2.0 * u3 * u2)
        c4 = u1 * (u2 * u2 * u2 + 3.0 * u3 * u2 * u2)
    else:
        c1 = u1
        c2 = u1 * u2
        c3 = u1 * u2 * u2
        c4 = u1 * u2 * u2 * u2
    v[0] = c1
    v[1] = c2
    v[2] = c1 * a + c2 * b
    v[3] = c4
    v[4] = -3.0 * c3


def velocity(int mode, p, double u1, double u2, double u3):
    cdef double v[5]
    cdef double a = p[3]
    cdef double b = p[4]
    if mode < 0 or mode > 3:
        raise ValueError("unknown mode id %r" % (mode,))
    _velocity(mode, a, b, u1, u2, u3, v)
    return np.array([v[0], v[1], v[2], v[3], v[4]])


def rk4_constant(int mode, p0, double u1, double u2, double u3,
                 double duration, int n_steps):
    if n_steps < 1:
        raise ValueError("n_steps must be positive")
    if mode < 0 or mode > 3:
        raise ValueError("unknown mode id %r" % (mode,))
    out_arr = np.empty((n_steps + 1, 5))
    cdef double[:, ::1] out = out_arr
    cdef double s[5]
    cdef double q[5]
    cdef double k1[5]
    cdef double k2[5]
    cdef double k3[5]
    cdef double k4[5]
    cdef double h = duration / n_steps
    cdef int i, step
    for i in range(5):
        s[i] = p0[i]
        out[0, i] = s[i]
    with nogil:
        for step in range(1, n_steps + 1):
            _velocity(mode, s[3], s[4], u1, u2, u3, k1)
            for i in range(5):
                q[i] = s[i] + 0.5 * h * k1[i]
            _velocity(mode, q[3], q[4], u1, u2, u3, k2)
            for i in range(5):
                q[i] = s[i] + 0.5 * h * k2[i]
            _velocity(mode, q[3], q[4], u1, u2, u3, k3)
            for i in range(5):
                q[i] = s[i] + h * k3[i]
            _velocity(mode, q[3], q[4], u1, u2, u3, k4)
            for i in range(5):
                s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                out[step, i] = s[i]
    return out_arr
