"""Structural-tensor operators on the contact distribution.

The pair (metric, invariant 2-form) on the rank-4 distribution determines an
endomorphism K with K^2 = +Id (attacking: a paracomplex structure) or
K^2 = -Id after normalization (landing: a complex structure). This module
computes K from a pair of matrices, splits its eigenbundles, evaluates the
Levi pairing of the landing CR structure, and solves for the joint
infinitesimal stabilizer of a set of structural tensors.
"""
from __future__ import annotations

import dataclasses
import itertools
from typing import Sequence

import numpy as np

from . import gl2
from .maneuvers import attacking_metric, invariant_two_form_dist, landing_metric

KAPPA_SCALAR_TOL = 1e-8
STABILIZER_THRESHOLD = 1e-10


class NotScalarSquare(ValueError):
    """Raised when (g^{-1} Omega)^2 is not a scalar multiple of the identity."""


@dataclasses.dataclass(frozen=True)
class KOperator:
    frame: str                # which coframe indexes the matrices
    matrix: np.ndarray        # normalized endomorphism, matrix^2 = sign * Id
    raw: np.ndarray           # g^{-1} Omega before normalization
    square_scalar: float      # lambda with raw^2 = lambda Id
    sign: int                 # +1 paracomplex, -1 complex

    @property
    def normalizer(self) -> float:
        return float(np.sqrt(abs(self.square_scalar)))


def k_operator(g: np.ndarray, omega: np.ndarray, frame: str = "dist-coord",
               orientation: tuple[np.ndarray, complex] | None = None) -> KOperator:
    """Normalized K with g(K., .) = Omega(., .), i.e. raw = g^{-1} Omega.

    `orientation` picks the overall sign: a pair (v, mu) asking that v be an
    eigenvector of K with eigenvalue mu rather than -mu.
    """
    g = np.asarray(g, dtype=float)
    omega = np.asarray(omega, dtype=float)
    n = g.shape[0]
    raw = np.linalg.solve(g, omega)
    sq = raw @ raw
    lam = float(np.trace(sq)) / n
    if np.linalg.norm(sq - lam * np.eye(n)) > KAPPA_SCALAR_TOL * max(1.0, abs(lam)):
        raise NotScalarSquare("K^2 is not scalar for this (g, omega) pair")
    if lam == 0.0:
        raise NotScalarSquare("K is nilpotent for this (g, omega) pair")
    K = raw / np.sqrt(abs(lam))
    sign = 1 if lam > 0.0 else -1
    if orientation is not None:
        v, mu = orientation
        v = np.asarray(v, dtype=complex)
        plus = np.linalg.norm(K @ v - mu * v)
        minus = np.linalg.norm(-K @ v - mu * v)
        if minus < plus:
            K = -K
    return KOperator(frame, K, raw, lam, sign)


def attacking_k_operator() -> KOperator:
    """K of the attacking pair, oriented so dx-directions get eigenvalue +1."""
    p = np.zeros(5)
    e0 = np.zeros(4)
    e0[0] = 1.0
    return k_operator(attacking_metric(p), invariant_two_form_dist(p),
                      orientation=(e0, 1.0))


def landing_frame_z(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Complex frame (Z1, Z2) of the landing structure over DIST_COFRAME.

    Z1 spans the +i eigendirection used to orient K; Z2 its partner.
    """
    a, b = float(p[3]), float(p[4])
    D = 1.0 + a * a + b * b
    s = np.sqrt(D)
    Z1 = np.array([0.0, 0.0, 1j * (1.0 + a * a), s + 1j * a * b])
    Z2 = np.array([1j * (1.0 + b * b), s - 1j * a * b, 0.0, 0.0])
    return Z1, Z2


def landing_k_operator(p: np.ndarray) -> KOperator:
    """K of the landing pair at p, oriented so K Z1 = +i Z1.

    The raw operator squares to -(1 + a^2 + b^2)^{-1} Id.
    """
    Z1, _ = landing_frame_z(p)
    return k_operator(landing_metric(p), invariant_two_form_dist(p),
                      orientation=(Z1, 1j))


def eigen_split(K: KOperator, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases (columns) of the two eigenbundles of K.

    Paracomplex K: the +1 and -1 eigenspaces (real). Complex K: the +i and -i
    eigenspaces inside the complexification.
    """
    n = K.matrix.shape[0]
    if K.sign > 0:
        P_plus = 0.5 * (np.eye(n) + K.matrix)
        P_minus = 0.5 * (np.eye(n) - K.matrix)
    else:
        M = K.matrix.astype(complex)
        P_plus = 0.5 * (np.eye(n) - 1j * M)
        P_minus = 0.5 * (np.eye(n) + 1j * M)
    out = []
    for P in (P_plus, P_minus):
        U, s, _ = np.linalg.svd(P)
        rank = int(np.sum(s > tol * s[0]))
        out.append(U[:, :rank])
    return tuple(out)


@dataclasses.dataclass(frozen=True)
class LeviForm:
    matrix: np.ndarray        # 2x2 Hermitian pairing in the (Z1, Z2) frame
    c_value: complex          # the single independent entry C
    signature: tuple[int, int]


def levi_form(p: np.ndarray) -> LeviForm:
    """Levi pairing of the landing CR structure in the (Z1, Z2) frame.

    The raw pairing Omega(Z_A, conj(Z_B)) is antisymmetric-Hermitian with
    off-diagonal entry -C; the reported form is the Hermitian normalization
    [[0, -C], [-conj(C), 0]], of signature (1, 1).
    """
    Z1, Z2 = landing_frame_z(p)
    W = invariant_two_form_dist(p).astype(complex)
    C = -(Z1 @ W @ np.conj(Z2))
    M = np.array([[0.0, -C], [-np.conj(C), 0.0]])
    eig = np.linalg.eigvalsh(M)
    tol = 1e-12 * max(1.0, float(np.max(np.abs(eig))))
    pos = int(np.sum(eig > tol))
    neg = int(np.sum(eig < -tol))
    return LeviForm(M, complex(C), (pos, neg))


# -- infinitesimal stabilizers ------------------------------------------------

@dataclasses.dataclass(frozen=True)
class StabilizerSolution:
    dimension: int
    matrices: tuple[np.ndarray, ...]   # basis of endomorphisms Y
    scales: np.ndarray                 # (dimension, n_tensors) conformal factors
    residual: float                    # largest violation over the basis

    def contains(self, Y: np.ndarray, tol: float = 1e-8) -> bool:
        """Whether Y (up to its own scales) lies in the solved span."""
        if self.dimension == 0:
            return float(np.linalg.norm(Y)) <= tol
        A = np.stack([M.ravel() for M in self.matrices], axis=1)
        coef, *_ = np.linalg.lstsq(A, np.asarray(Y, dtype=float).ravel(), rcond=None)
        mis = np.linalg.norm(A @ coef - Y.ravel())
        return mis <= tol * max(1.0, float(np.linalg.norm(Y)))


def _rank2_rows(S: np.ndarray, t_index: int, n_tensors: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient block for Y^T S + S Y = f S, unknowns (vec Y, f_1..f_T)."""
    n = S.shape[0]
    n_eq = n * n
    A = np.zeros((n_eq, n * n + n_tensors))
    for k in range(n):
        for l in range(n):
            row = k * n + l
            for m in range(n):
                A[row, m * n + k] += S[m, l]      # (Y^T S)_{kl} = Y_{mk} S_{ml}
                A[row, m * n + l] += S[k, m]      # (S Y)_{kl} = S_{km} Y_{ml}
            A[row, n * n + t_index] = -S[k, l]
    return A


def _rank4_rows(S: np.ndarray, t_index: int, n_tensors: int) -> np.ndarray:
    """Coefficient block for the Leibniz action on a symmetric 4-tensor."""
    n = S.shape[0]
    n_eq = n ** 4
    A = np.zeros((n_eq, n * n + n_tensors))
    for idx in itertools.product(range(n), repeat=4):
        row = ((idx[0] * n + idx[1]) * n + idx[2]) * n + idx[3]
        for slot in range(4):
            for m in range(n):
                jdx = list(idx)
                jdx[slot] = m
                # (Y . S)_{idx} picks up Y_{m, idx[slot]} S_{..m..}
                A[row, m * n + idx[slot]] += S[tuple(jdx)]
        A[row, n * n + t_index] = -S[idx]
    return A


def solve_infinitesimal_stabilizer(
        tensors: Sequence[np.ndarray],
        threshold: float = STABILIZER_THRESHOLD) -> StabilizerSolution:
    """Joint conformal stabilizer of symmetric/antisymmetric tensors.

    Solves for endomorphisms Y and one scale f_S per tensor with
    Y acting by the Leibniz rule on each S equal to f_S * S. Rank-2 and
    rank-4 tensors are supported; all must share one frame. The nullspace is
    cut at `threshold` times the largest singular value.
    """
    tensors = [np.asarray(S, dtype=float) for S in tensors]
    if not tensors:
        raise ValueError("need at least one tensor")
    n = tensors[0].shape[0]
    n_t = len(tensors)
    blocks = []
    for t_index, S in enumerate(tensors):
        if S.ndim == 2:
            blocks.append(_rank2_rows(S, t_index, n_t))
        elif S.ndim == 4:
            blocks.append(_rank4_rows(S, t_index, n_t))
        else:
            raise ValueError(f"unsupported tensor rank {S.ndim}")
    A = np.vstack(blocks)
    _, sv, Vt = np.linalg.svd(A, full_matrices=True)
    cut = threshold * sv[0]
    n_unknowns = n * n + n_t
    dim = n_unknowns - int(np.sum(sv > cut))
    basis = Vt[n_unknowns - dim:] if dim else Vt[:0]
    matrices = tuple(row[:n * n].reshape(n, n) for row in basis)
    scales = np.array([row[n * n:] for row in basis]) if dim else np.zeros((0, n_t))
    residual = float(np.max(np.abs(A @ basis.T))) if dim else 0.0
    return StabilizerSolution(dim, matrices, scales, residual)


# -- the five-parameter stabilizer of the attacking pair ----------------------

def _prop_matrices() -> tuple[np.ndarray, ...]:
    Y1 = np.diag([1.0, -1.0, 1.0, -1.0])
    Y2 = np.zeros((4, 4))
    Y2[0, 1] = 1.0
    Y2[2, 3] = -1.0
    Y3 = np.zeros((4, 4))
    Y3[1, 0] = 1.0
    Y3[3, 2] = -1.0
    Y4 = np.diag([1.0, 1.0, -1.0, -1.0])
    Y5 = np.eye(4)
    return Y1, Y2, Y3, Y4, Y5


#: Stabilizer basis of the quartic-mode pair (g's, omega), quartic-mode frame.
STABILIZER_BASIS = _prop_matrices()

#: Nonzero brackets among STABILIZER_BASIS, 0-based: [Y1,Y2]=2Y2, [Y1,Y3]=-2Y3,
#: [Y2,Y3]=Y1; Y4 and Y5 are central.
STABILIZER_TABLE = {
    (0, 1): {1: 2.0},
    (0, 2): {2: -2.0},
    (1, 2): {0: 1.0},
}


def verify_commutation_table(basis: Sequence[np.ndarray],
                             table: dict[tuple[int, int], dict[int, float]]) -> float:
    """Largest deviation of matrix brackets from the stated table."""
    worst = 0.0
    m = len(basis)
    for i in range(m):
        for j in range(i + 1, m):
            expected = np.zeros_like(basis[0])
            for k, c in table.get((i, j), {}).items():
                expected = expected + c * basis[k]
            B = basis[i] @ basis[j] - basis[j] @ basis[i]
            worst = max(worst, float(np.max(np.abs(B - expected))))
    return worst


def attacking_pair_e(p: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(attacking metric, invariant 2-form) in the frame of STABILIZER_BASIS.

    Coframe order (dx, dy, db, da): the metric becomes antidiag(1, 1, 1, 1)
    and dx ^ da + dy ^ db becomes antidiag(1, 1, -1, -1). The joint conformal
    stabilizer of this pair is exactly span(STABILIZER_BASIS).
    """
    G = np.zeros((4, 4))
    G[0, 3] = G[3, 0] = 1.0
    G[1, 2] = G[2, 1] = 1.0
    W = np.zeros((4, 4))
    W[0, 3] = W[1, 2] = 1.0
    W[3, 0] = W[2, 1] = -1.0
    return G, W


def quartic_mode_pair() -> tuple[np.ndarray, np.ndarray]:
    """(Upsilon tensor, invariant 2-form) in the quartic-mode frame.

    The joint conformal stabilizer of this pair is the image of gl(2, R)
    under the Sym^3 action derivative, of dimension 4.
    """
    return gl2.UPSILON_TENSOR.copy(), gl2.OMEGA_MATRIX.copy()
