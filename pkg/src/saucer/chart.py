"""The configuration space R^3 x S^2 and its upper-hemisphere chart.

A disc position is (r, n) with r in R^3 and n a unit normal; on the chart
n_z > 0 we use coordinates (x, y, z, a, b) where (x, y, z) = r and the normal
is the normalization of N = (-a, -b, 1). Admissible disc motions are tangent
to the kernel of the contact form w0 = dz - a dx - b dy.

Coordinate order everywhere: (x, y, z, a, b) = indices 0..4.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forms import DifferentialForm, FormValue, VectorField, exterior_derivative

COORD_NAMES = ("x", "y", "z", "a", "b")
DIM = 5

_UNIT_NORM_TOL = 1e-12


class OutsideChart(ValueError):
    """Normal does not point into the upper hemisphere."""


@dataclass(frozen=True)
class AmbientConfig:
    """Disc center r and unit normal n in ambient coordinates."""

    r: np.ndarray
    n: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float))
        object.__setattr__(self, "n", np.asarray(self.n, dtype=float))
        assert self.r.shape == (3,) and self.n.shape == (3,)
        if abs(np.linalg.norm(self.n) - 1.0) > _UNIT_NORM_TOL:
            raise ValueError("normal must be a unit vector")

    def to_json_dict(self) -> dict:
        return {"r": [float(v) for v in self.r], "n": [float(v) for v in self.n]}


def point(x: float, y: float, z: float, a: float, b: float) -> np.ndarray:
    return np.array([x, y, z, a, b], dtype=float)


def point_to_json_dict(p: np.ndarray) -> dict:
    return {name: float(v) for name, v in zip(COORD_NAMES, p)}


def normal_scale(p: np.ndarray) -> float:
    """|N| = sqrt(1 + a^2 + b^2), the normalization factor of the chart."""
    return float(np.sqrt(1.0 + p[3] ** 2 + p[4] ** 2))


def chart_from_ambient(c: AmbientConfig) -> np.ndarray:
    if c.n[2] <= 0.0:
        raise OutsideChart("n_z = %.6g is not positive" % c.n[2])
    a = -c.n[0] / c.n[2]
    b = -c.n[1] / c.n[2]
    return np.array([c.r[0], c.r[1], c.r[2], a, b])


def ambient_from_chart(p: np.ndarray) -> AmbientConfig:
    p = np.asarray(p, dtype=float)
    assert np.all(np.isfinite(p))
    N = np.array([-p[3], -p[4], 1.0])
    return AmbientConfig(r=p[:3].copy(), n=N / np.linalg.norm(N))


def contact_covector(p: np.ndarray) -> np.ndarray:
    """Components of w0 = dz - a dx - b dy against (dx, dy, dz, da, db)."""
    return np.array([-p[3], -p[4], 1.0, 0.0, 0.0])


def contact_value(p: np.ndarray, v: np.ndarray) -> float:
    """w0(v) at p."""
    return float(contact_covector(p) @ np.asarray(v, dtype=float))


def _contact_coeff_fn(p: np.ndarray) -> FormValue:
    return FormValue.covector(contact_covector(p))


def _contact_d_fn(p: np.ndarray) -> FormValue:
    # dw0 = dx^da + dy^db
    return FormValue(DIM, 2, {(0, 3): 1.0, (1, 4): 1.0})


#: w0 as a form field with its closed-form exterior derivative registered.
CONTACT_FORM = DifferentialForm("w0", DIM, 1, _contact_coeff_fn, _contact_d_fn)

#: dS[m, i] for w0: the only varying components are w0_x = -a and w0_y = -b.
_CONTACT_POINT_DERIVATIVE = np.zeros((DIM, DIM))
_CONTACT_POINT_DERIVATIVE[3, 0] = -1.0
_CONTACT_POINT_DERIVATIVE[4, 1] = -1.0


def contact_point_derivative(p: np.ndarray) -> np.ndarray:
    return _CONTACT_POINT_DERIVATIVE.copy()


def contact_form(p: np.ndarray) -> FormValue:
    """w0 at p as a form value."""
    return CONTACT_FORM.value(p)


def _frame_field(name: str, x_comp: float, y_comp: float, a_comp: float,
                 b_comp: float) -> VectorField:
    # distribution fields c1*(dx-dir + a dz-dir) + ... have only one varying slot
    def value(p: np.ndarray) -> np.ndarray:
        return np.array([x_comp, y_comp, x_comp * p[3] + y_comp * p[4], a_comp, b_comp])

    def jacobian(p: np.ndarray) -> np.ndarray:
        J = np.zeros((DIM, DIM))
        J[2, 3] = x_comp
        J[2, 4] = y_comp
        return J

    return VectorField(name, DIM, value, jacobian)


#: E-frame of the distribution: E1 = dx-dir + a dz-dir, E2 = dy-dir + b dz-dir,
#: E3 = db-dir, E4 = da-dir. The four controls of the saucer.
E_FRAME = (
    _frame_field("E1", 1.0, 0.0, 0.0, 0.0),
    _frame_field("E2", 0.0, 1.0, 0.0, 0.0),
    _frame_field("E3", 0.0, 0.0, 0.0, 1.0),
    _frame_field("E4", 0.0, 0.0, 1.0, 0.0),
)

#: Z-frame: identical to the E-frame except Z3 = -3 db-dir. Dual to the
#: quartic-mode coframe (dx, dy, -db/3, da).
Z_FRAME = (
    _frame_field("Z1", 1.0, 0.0, 0.0, 0.0),
    _frame_field("Z2", 0.0, 1.0, 0.0, 0.0),
    _frame_field("Z3", 0.0, 0.0, 0.0, -3.0),
    _frame_field("Z4", 0.0, 0.0, 1.0, 0.0),
)

FRAMES = {"E": E_FRAME, "Z": Z_FRAME}

#: The frame-oriented coordinate volume is dx^dy^db^da^dz, the orientation in
#: which (E1, E2, E3, E4, dz-dir) is positively oriented. Evaluating a 5-form
#: on this tuple reads off its coefficient against that volume.
_VOLUME_FRAME_VECTORS = (
    np.array([1.0, 0, 0, 0, 0]),
    np.array([0, 1.0, 0, 0, 0]),
    np.array([0, 0, 0, 0, 1.0]),
    np.array([0, 0, 0, 1.0, 0]),
    np.array([0, 0, 1.0, 0, 0]),
)


def contact_nondegeneracy(p: np.ndarray) -> float:
    """Coefficient of dw0 ^ dw0 ^ w0 against the frame-oriented volume.

    The constant is 2. The volume is dx^dy^db^da^dz (the orientation that
    makes the distribution frame positive); against the alphabetical ordering
    dx^dy^da^db^dz the same 5-form has coefficient -2, which is the price of
    one transposition. Computed through the generic engine with the
    finite-difference exterior derivative, not the registered closed form.
    """
    p = np.asarray(p, dtype=float)
    fd_contact = DifferentialForm("w0-fd", DIM, 1, _contact_coeff_fn)
    dw = exterior_derivative(fd_contact, p)
    triple = dw.wedge(dw).wedge(fd_contact.value(p))
    return triple.evaluate(*_VOLUME_FRAME_VECTORS)


def ambient_nondegeneracy_pair(p: np.ndarray) -> tuple[float, float]:
    """Both sides of the ambient identity (n.dr version of the triple product).

    Returns (coefficient of d(w)^d(w)^w, coefficient of -2 vol_{S2}^vol_{R3}),
    both against the frame-oriented volume, where w = n . dr is the unscaled
    ambient contact form pulled back to the chart and vol_{S2} is the sphere
    area form pulled back through a -> n(a, b).
    """
    p = np.asarray(p, dtype=float)

    def ambient_covector(q: np.ndarray) -> FormValue:
        return FormValue.covector(contact_covector(q) / normal_scale(q))

    w = DifferentialForm("n.dr", DIM, 1, ambient_covector)
    dw = exterior_derivative(w, p)
    lhs = dw.wedge(dw).wedge(w.value(p)).evaluate(*_VOLUME_FRAME_VECTORS)

    a, b = p[3], p[4]
    f = 1.0 / normal_scale(p)
    N = np.array([-a, -b, 1.0])
    # exact partials of n = f N; df/da = -a f^3, dN/da = (-1, 0, 0)
    n_a = (-a * f ** 3) * N + f * np.array([-1.0, 0.0, 0.0])
    n_b = (-b * f ** 3) * N + f * np.array([0.0, -1.0, 0.0])
    sigma = float((f * N) @ np.cross(n_a, n_b))
    # vol_{S2} ^ vol_{R3} = sigma da^db ^ dx^dy^dz
    area = FormValue(DIM, 2, {(3, 4): sigma})
    vol3 = FormValue(DIM, 3, {(0, 1, 2): 1.0})
    rhs = area.wedge(vol3).scaled(-2.0).evaluate(*_VOLUME_FRAME_VECTORS)
    return lhs, rhs
