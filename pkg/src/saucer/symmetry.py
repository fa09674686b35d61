"""Symmetry-algebra verification for the maneuver geometries.

A chart vector field X is a symmetry candidate when L_X w0 is proportional
to w0 (contact residual) and the Lie derivative of the structural tensor
stays inside the conformal ideal spanned by the tensor itself and terms
divisible by w0 (membership residual). Catalogs of candidates are compressed
into structure constants by least squares over sample points, and the
resulting algebras are identified through their Killing forms against
independently constructed matrix models: sl(4, R), su(2, 2), and the split
form of the 14-dimensional exceptional algebra realized as derivations of
the split octonions.
"""
from __future__ import annotations

import dataclasses
import itertools
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .chart import DIM, contact_covector, contact_point_derivative
from .forms import (FormValue, SymTensorField, VectorField, bracket,
                    lie_derivative_symtensor, sym_outer)
from .maneuvers import QUARTIC_FIELD

#: w0 as a rank-1 tensor field with its exact point derivative.
CONTACT_TENSOR = SymTensorField("w0", DIM, 1, "chart",
                                contact_covector, contact_point_derivative)

KILLING_ZERO_TOL = 1e-8
RANK_TOL = 1e-8


# -- pointwise residuals -------------------------------------------------------

def contact_symmetry_residual(X: VectorField, p: np.ndarray) -> float:
    """Scale-free size of (L_X w0) ^ w0 at p; zero iff L_X w0 || w0."""
    p = np.asarray(p, dtype=float)
    lie = lie_derivative_symtensor(X, CONTACT_TENSOR, p)
    w = contact_covector(p)
    wedge = FormValue.covector(lie).wedge(FormValue.covector(w))
    nw = float(np.linalg.norm(w))
    nl = float(np.linalg.norm(lie))
    return wedge.norm() / (nw * (nw + nl))


def _membership_residual(lie: np.ndarray, S: np.ndarray,
                         ideal_columns: Sequence[np.ndarray]) -> float:
    """Distance of L_X S from span{S, ideal columns}, relative."""
    cols = [S.ravel()] + [c.ravel() for c in ideal_columns]
    A = np.stack(cols, axis=1)
    b = lie.ravel()
    coef, *_ = np.linalg.lstsq(A, b, rcond=None)
    mis = float(np.linalg.norm(A @ coef - b))
    return mis / (float(np.linalg.norm(S)) + float(np.linalg.norm(b)))


def metric_membership_residual(X: VectorField, metric: SymTensorField,
                               p: np.ndarray) -> float:
    """L_X g against span{g, w0 . any covector} at p."""
    p = np.asarray(p, dtype=float)
    lie = lie_derivative_symtensor(X, metric, p)
    w = contact_covector(p)
    eye = np.eye(DIM)
    cols = [sym_outer(w, eye[i]) for i in range(DIM)]
    return _membership_residual(lie, metric.value(p), cols)


def quartic_membership_residual(X: VectorField, p: np.ndarray) -> float:
    """L_X Upsilon against span{Upsilon, w0 . sym^3 covectors} at p."""
    p = np.asarray(p, dtype=float)
    lie = lie_derivative_symtensor(X, QUARTIC_FIELD, p)
    w = contact_covector(p)
    eye = np.eye(DIM)
    cols = [sym_outer(w, eye[l], eye[m], eye[n])
            for l, m, n in itertools.combinations_with_replacement(range(DIM), 3)]
    return _membership_residual(lie, QUARTIC_FIELD.value(p), cols)


@dataclasses.dataclass(frozen=True)
class SymmetryReport:
    contact: float        # worst contact residual over the points
    membership: float     # worst structural-tensor membership residual

    def passed(self, tol: float = 1e-7) -> bool:
        return self.contact <= tol and self.membership <= tol


def legendrean_symmetry_residual(X: VectorField, metric: SymTensorField,
                                 points: np.ndarray) -> SymmetryReport:
    """Worst-case residuals of X as a conformal symmetry of (w0, metric)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    contact = max(contact_symmetry_residual(X, p) for p in pts)
    member = max(metric_membership_residual(X, metric, p) for p in pts)
    return SymmetryReport(contact, member)


def g2_symmetry_residual(X: VectorField, points: np.ndarray) -> SymmetryReport:
    """Worst-case residuals of X as a symmetry of (w0, quartic cone field)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    contact = max(contact_symmetry_residual(X, p) for p in pts)
    member = max(quartic_membership_residual(X, p) for p in pts)
    return SymmetryReport(contact, member)


# -- structure constants -------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class StructureConstants:
    c: np.ndarray         # (n, n, n): [X_i, X_j] = c[i, j, k] X_k
    misfit: float         # worst relative least-squares residual over pairs
    rank: int             # numerical rank of the stacked evaluation matrix

    @property
    def dimension(self) -> int:
        return self.c.shape[0]


def _solve_structure(A: np.ndarray, B: np.ndarray, n: int) -> StructureConstants:
    """Least squares A c = B, one column of B per ordered pair i < j."""
    C, *_ = np.linalg.lstsq(A, B, rcond=None)
    scale = max(float(np.linalg.norm(A)), 1e-300)
    resid = A @ C - B
    misfit = 0.0
    for col in range(B.shape[1]):
        denom = max(float(np.linalg.norm(B[:, col])), scale)
        misfit = max(misfit, float(np.linalg.norm(resid[:, col])) / denom)
    c = np.zeros((n, n, n))
    for col, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        c[i, j] = C[:, col]
        c[j, i] = -C[:, col]
    rank = int(np.linalg.matrix_rank(A, tol=RANK_TOL * np.linalg.norm(A)))
    return StructureConstants(c, misfit, rank)


def extract_structure_constants(fields: Sequence[VectorField],
                                points: np.ndarray) -> StructureConstants:
    """Structure constants of a catalog from values at sample points.

    Stacks the field values at every point into one matrix and solves all
    bracket pairs simultaneously; the misfit certifies closure under brackets.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n = len(fields)
    A = np.concatenate([np.stack([X.value(p) for X in fields], axis=1)
                        for p in pts], axis=0)
    cols = []
    for i, j in itertools.combinations(range(n), 2):
        cols.append(np.concatenate([bracket(fields[i], fields[j], p) for p in pts]))
    B = np.stack(cols, axis=1)
    return _solve_structure(A, B, n)


def matrix_structure_constants(basis: Sequence[np.ndarray]) -> StructureConstants:
    """Structure constants of a matrix Lie algebra over a real basis.

    Complex matrices are flattened into real vectors (real and imaginary
    parts); the basis must be closed under real-linear commutators.
    """
    def flat(M: np.ndarray) -> np.ndarray:
        M = np.asarray(M)
        if np.iscomplexobj(M):
            return np.concatenate([M.real.ravel(), M.imag.ravel()])
        return M.astype(float).ravel()

    n = len(basis)
    A = np.stack([flat(M) for M in basis], axis=1)
    cols = []
    for i, j in itertools.combinations(range(n), 2):
        cols.append(flat(basis[i] @ basis[j] - basis[j] @ basis[i]))
    B = np.stack(cols, axis=1)
    return _solve_structure(A, B, n)


def jacobi_residual(c: np.ndarray) -> float:
    """Largest violation of the Jacobi identity by the constants."""
    term = np.einsum("ijm,mkl->ijkl", c, c)
    total = term + np.einsum("jkm,mil->ijkl", c, c) + np.einsum("kim,mjl->ijkl", c, c)
    return float(np.max(np.abs(total)))


def killing_matrix(c: np.ndarray) -> np.ndarray:
    """B_ij = c^a_{ib} c^b_{ja}."""
    return np.einsum("aib,bja->ij", c, c)


def killing_signature(B: np.ndarray, zero_tol: float = KILLING_ZERO_TOL) -> tuple[int, int, int]:
    eig = np.linalg.eigvalsh(0.5 * (B + B.T))
    scale = float(np.max(np.abs(eig))) if len(eig) else 0.0
    if scale == 0.0:
        return (0, 0, len(eig))
    cut = zero_tol * scale
    pos = int(np.sum(eig > cut))
    neg = int(np.sum(eig < -cut))
    return (pos, neg, len(eig) - pos - neg)


@dataclasses.dataclass(frozen=True)
class KillingDiagnostics:
    matrix: np.ndarray
    signature: tuple[int, int, int]
    jacobi: float


def killing_diagnostics(sc: StructureConstants) -> KillingDiagnostics:
    B = killing_matrix(sc.c)
    return KillingDiagnostics(B, killing_signature(B), jacobi_residual(sc.c))


def catalog_rank(fields: Sequence[VectorField], points: np.ndarray) -> int:
    """Numerical rank of the stacked values; full rank = pointwise independence."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    A = np.concatenate([np.stack([X.value(p) for X in fields], axis=1)
                        for p in pts], axis=0)
    return int(np.linalg.matrix_rank(A, tol=RANK_TOL * np.linalg.norm(A)))


# -- reference matrix models ---------------------------------------------------

def sl4_basis() -> list[np.ndarray]:
    """Traceless real 4x4 matrices; 15 elements."""
    basis = []
    for p in range(4):
        for q in range(4):
            if p != q:
                E = np.zeros((4, 4))
                E[p, q] = 1.0
                basis.append(E)
    for k in range(3):
        D = np.zeros((4, 4))
        D[k, k] = 1.0
        D[k + 1, k + 1] = -1.0
        basis.append(D)
    return basis


def su22_basis() -> list[np.ndarray]:
    """Real basis of su(2, 2) for eta = diag(1, 1, -1, -1); 15 elements."""
    sigma = [np.eye(2, dtype=complex),
             np.array([[0, 1], [1, 0]], dtype=complex),
             np.array([[0, -1j], [1j, 0]], dtype=complex),
             np.array([[1, 0], [0, -1]], dtype=complex)]
    basis = []
    for k in (1, 2, 3):
        M = np.zeros((4, 4), dtype=complex)
        M[:2, :2] = 1j * sigma[k]
        basis.append(M)
        M = np.zeros((4, 4), dtype=complex)
        M[2:, 2:] = 1j * sigma[k]
        basis.append(M)
    M = np.zeros((4, 4), dtype=complex)
    M[:2, :2] = 1j * sigma[0]
    M[2:, 2:] = -1j * sigma[0]
    basis.append(M)
    for p in range(2):
        for q in range(2):
            for scal in (1.0, 1j):
                B = np.zeros((2, 2), dtype=complex)
                B[p, q] = scal
                M = np.zeros((4, 4), dtype=complex)
                M[:2, 2:] = B
                M[2:, :2] = B.conj().T
                basis.append(M)
    return basis


# Split octonions as Zorn vector matrices ((alpha, v), (w, beta)).

def octonion_product(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    a1, b1 = u[0], u[7]
    v1, w1 = u[1:4], u[4:7]
    a2, b2 = v[0], v[7]
    v2, w2 = v[1:4], v[4:7]
    out = np.empty(8)
    out[0] = a1 * a2 + v1 @ w2
    out[1:4] = a1 * v2 + b2 * v1 - np.cross(w1, w2)
    out[4:7] = a2 * w1 + b1 * w2 + np.cross(v1, v2)
    out[7] = b1 * b2 + w1 @ v2
    return out


def octonion_norm(u: np.ndarray) -> float:
    """The split quadratic form alpha*beta - v.w; multiplicative."""
    return float(u[0] * u[7] - u[1:4] @ u[4:7])


@lru_cache(maxsize=None)
def _octonion_table() -> np.ndarray:
    eye = np.eye(8)
    T = np.empty((8, 8, 8))
    for i in range(8):
        for j in range(8):
            T[i, j] = octonion_product(eye[i], eye[j])
    return T


def split_g2_basis() -> list[np.ndarray]:
    """Derivations of the split octonions; a 14-dimensional matrix algebra."""
    T = _octonion_table()
    A = np.zeros((8 * 8 * 8, 64))
    row = 0
    for i in range(8):
        for j in range(8):
            for comp in range(8):
                # coefficient of D[r, s]
                for s in range(8):
                    A[row, comp * 8 + s] += T[i, j, s]
                for r in range(8):
                    A[row, r * 8 + i] -= T[r, j, comp]
                    A[row, r * 8 + j] -= T[i, r, comp]
                row += 1
    _, sv, Vt = np.linalg.svd(A, full_matrices=True)
    cut = 1e-10 * sv[0]
    dim = 64 - int(np.sum(sv > cut))
    return [Vt[64 - dim + k].reshape(8, 8) for k in range(dim)]


@dataclasses.dataclass(frozen=True)
class LieAlgebraModel:
    name: str
    dimension: int
    killing_signature: tuple[int, int, int]


@lru_cache(maxsize=None)
def reference_model(name: str) -> LieAlgebraModel:
    """Killing data of a reference algebra computed from its matrix model."""
    builders: dict[str, Callable[[], list[np.ndarray]]] = {
        "sl4": sl4_basis,
        "su22": su22_basis,
        "g2-split": split_g2_basis,
    }
    if name not in builders:
        raise ValueError(f"unknown reference algebra {name!r}")
    basis = builders[name]()
    sc = matrix_structure_constants(basis)
    if sc.misfit > 1e-8:
        raise RuntimeError(f"reference model {name} is not closed: {sc.misfit}")
    diag = killing_diagnostics(sc)
    return LieAlgebraModel(name, len(basis), diag.signature)
