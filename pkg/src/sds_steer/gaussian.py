"""Covariance-matrix toolkit for bosonic Gaussian states.

Conventions: quadratures are ordered ``(q1, p1, q2, p2, ...)`` and the vacuum
has unit variance, so a physical covariance matrix has every symplectic
eigenvalue >= 1. Matrices are plain ``numpy`` float arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateStateError, InvalidArgumentError, NumericError

SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-9

_OMEGA_BLOCK = np.array([[0.0, 1.0], [-1.0, 0.0]])


class Direction(enum.Enum):
    A_TO_B = "a_to_b"
    B_TO_A = "b_to_a"


@dataclass(frozen=True)
class SteeringValues:
    """Gaussian steerability in both directions plus their asymmetry, in nats."""

    g_a_to_b: float
    g_b_to_a: float

    @property
    def asymmetry(self) -> float:
        return abs(self.g_a_to_b - self.g_b_to_a)


def _check_finite(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidArgumentError(f"{name} must be finite, got {x!r}")
    return x


def _as_square(mat, what: str = "matrix") -> np.ndarray:
    m = np.asarray(mat)
    if m.dtype not in (np.float64, np.longdouble):
        m = m.astype(float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise InvalidArgumentError(f"{what} must be square with even size, got shape {m.shape}")
    return m


def n_modes(mat) -> int:
    return _as_square(mat).shape[0] // 2


def symplectic_form(n_modes: int) -> np.ndarray:
    """Return the 2n x 2n symplectic form ``Omega`` (direct sum of ``[[0, 1], [-1, 0]]``)."""
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidArgumentError(f"n_modes must be a positive integer, got {n_modes!r}")
    return np.kron(np.eye(int(n_modes)), _OMEGA_BLOCK)


def _hyperbolic_block(c, s, dtype) -> np.ndarray:
    """``[[c I, s Z], [s Z, c I]]`` in the requested precision."""
    out = np.zeros((4, 4), dtype=dtype)
    out[0, 0] = out[1, 1] = out[2, 2] = out[3, 3] = c
    out[0, 2] = out[2, 0] = s
    out[1, 3] = out[3, 1] = -s
    return out


def two_mode_squeezer(x: float, dtype=np.float64) -> np.ndarray:
    """Symplectic matrix of a two-mode squeezing operation with parameter ``x``.

    Returns ``[[cosh x I, sinh x Z], [sinh x Z, cosh x I]]`` where ``Z`` is the
    Pauli-Z block.
    """
    x = dtype(_check_finite("squeezing parameter", x))
    return _hyperbolic_block(np.cosh(x), np.sinh(x), dtype)


def tmss_covariance(s: float, dtype=np.float64) -> np.ndarray:
    """Covariance matrix of the two-mode squeezed vacuum with squeezing ``s``."""
    s = dtype(_check_finite("squeezing parameter", s))
    return _hyperbolic_block(np.cosh(2 * s), np.sinh(2 * s), dtype)


def apply_symplectic(s_mat, sigma) -> np.ndarray:
    """Evolve ``sigma`` by the symplectic map ``s_mat``: returns ``S sigma S^T``."""
    s_mat = _as_square(s_mat, "symplectic matrix")
    sigma = _as_square(sigma, "covariance matrix")
    if s_mat.shape != sigma.shape:
        raise InvalidArgumentError(
            f"mode count mismatch: symplectic {s_mat.shape} vs covariance {sigma.shape}"
        )
    out = s_mat @ sigma @ s_mat.T
    # symmetrise away rounding so downstream symmetry checks hold exactly
    return 0.5 * (out + out.T)


def direct_sum(a, b) -> np.ndarray:
    """Block-diagonal composition; modes of ``a`` come first."""
    a = _as_square(a)
    b = _as_square(b)
    na, nb = a.shape[0], b.shape[0]
    out = np.zeros((na + nb, na + nb), dtype=np.result_type(a, b))
    out[:na, :na] = a
    out[na:, na:] = b
    return out


def partial_trace(sigma, keep: Sequence[int]) -> np.ndarray:
    """Reduce ``sigma`` to the modes listed in ``keep``, in that order.

    For Gaussian states tracing out a mode amounts to deleting its rows and
    columns from the covariance matrix.
    """
    sigma = _as_square(sigma, "covariance matrix")
    n = sigma.shape[0] // 2
    keep = list(keep)
    if not keep:
        raise InvalidArgumentError("keep must name at least one mode")
    if len(set(keep)) != len(keep):
        raise InvalidArgumentError(f"duplicate mode index in {keep}")
    for k in keep:
        if int(k) != k or not 0 <= k < n:
            raise InvalidArgumentError(f"mode index {k!r} out of range for {n} modes")
    idx = [2 * int(k) + j for k in keep for j in (0, 1)]
    return sigma[np.ix_(idx, idx)].copy()


def determinant(mat) -> float:
    """Determinant by LU decomposition with partial pivoting.

    Works in the array's own precision, including ``np.longdouble`` which
    ``numpy.linalg`` does not accept.
    """
    lu = np.array(mat, copy=True)
    if lu.dtype not in (np.float64, np.longdouble):
        lu = lu.astype(float)
    n = lu.shape[0]
    det = lu.dtype.type(1)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if lu[p, k] == 0:
            return lu.dtype.type(0)
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            det = -det
        det *= lu[k, k]
        lu[k + 1 :, k:] -= (lu[k + 1 :, k : k + 1] / lu[k, k]) * lu[k, k:]
    return det


def symplectic_eigenvalues(sigma, method: str = "auto") -> np.ndarray:
    """Symplectic spectrum of ``sigma`` in descending order.

    ``method="cholesky"`` (the default) factors ``sigma = L L^T`` and takes
    square roots of the eigenvalues of ``-(L^T Omega L)^2``, a symmetric matrix
    of norm ``nu_max^2``. Every step is backward stable and runs in the
    matrix's own precision, so degenerate pairs of strongly squeezed pure
    states come out accurate to ~eps * ||sigma||.

    ``method="eig"`` takes the moduli of the eigenvalues of ``Omega sigma`` in
    double precision. ``method="invariants"`` (one or two modes) uses
    ``det sigma`` and ``Delta = det A + det B + 2 det C``; it is square-root
    sensitive near degenerate spectra and kept as a cross-check.
    """
    sigma = _as_square(sigma, "covariance matrix")
    scale = max(1.0, float(np.abs(sigma).max()))
    if not np.allclose(sigma, sigma.T, rtol=0.0, atol=SYMMETRY_TOL * scale):
        raise InvalidArgumentError("covariance matrix is not symmetric")
    n = sigma.shape[0] // 2
    if method in ("auto", "cholesky"):
        return _spectrum_from_cholesky(sigma)
    if method == "invariants":
        return _spectrum_from_invariants(sigma)
    if method != "eig":
        raise InvalidArgumentError(f"unknown method {method!r}")
    try:
        ev = np.linalg.eigvals(symplectic_form(n) @ sigma.astype(np.float64))
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue solver failed: {exc}") from exc
    moduli = np.sort(np.abs(ev))[::-1]
    return moduli[::2].copy()


def _cholesky(a) -> np.ndarray:
    n = a.shape[0]
    low = np.zeros_like(a)
    for j in range(n):
        d = a[j, j] - np.dot(low[j, :j], low[j, :j])
        if not d > 0:
            raise NumericError("covariance matrix is not positive definite")
        low[j, j] = np.sqrt(d)
        low[j + 1 :, j] = (a[j + 1 :, j] - low[j + 1 :, :j] @ low[j, :j]) / low[j, j]
    return low


def _jacobi_eigvalsh(a, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, dtype preserving."""
    a = np.array(a, copy=True)
    n = a.shape[0]
    eps = np.finfo(a.dtype).eps
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= eps * np.sqrt(np.sum(a * a)):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1)) if theta != 0 else a.dtype.type(1)
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                rot_p, rot_q = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * rot_p - s * rot_q, s * rot_p + c * rot_q
                rot_p, rot_q = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * rot_p - s * rot_q, s * rot_p + c * rot_q
    return np.diag(a).copy()


def _spectrum_from_cholesky(sigma) -> np.ndarray:
    low = _cholesky(sigma)
    om = symplectic_form(sigma.shape[0] // 2).astype(sigma.dtype)
    m = low.T @ om @ low
    sq = -(m @ m)
    lam = np.sort(_jacobi_eigvalsh(0.5 * (sq + sq.T)))[::-1]
    # eigenvalues come in equal pairs nu_k^2
    pairs = 0.5 * (lam[0::2] + lam[1::2])
    return np.array([float(np.sqrt(max(v, 0))) for v in pairs])


def _spectrum_from_invariants(sigma) -> np.ndarray:
    n = sigma.shape[0] // 2
    det_all = determinant(sigma)
    if n == 1:
        return np.array([float(np.sqrt(max(det_all, 0)))])
    if n != 2:
        raise InvalidArgumentError("invariant method supports one or two modes only")
    delta = determinant(sigma[:2, :2]) + determinant(sigma[2:, 2:]) + 2 * determinant(sigma[:2, 2:])
    disc = delta * delta - 4 * det_all
    root = np.sqrt(max(disc, 0))
    big = (delta + root) / 2
    if not big > 0:
        raise NumericError(f"non-positive symplectic invariant Delta = {float(delta)!r}")
    small = det_all / big  # = (delta - root)/2 without cancellation
    return np.sort([float(np.sqrt(big)), float(np.sqrt(max(small, 0)))])[::-1].copy()


def is_physical(sigma, tol: float = PHYSICALITY_TOL) -> bool:
    """True when every symplectic eigenvalue is at least ``1 - tol``."""
    if tol < 0:
        raise InvalidArgumentError(f"tol must be non-negative, got {tol}")
    return bool(symplectic_eigenvalues(sigma).min() >= 1.0 - tol)


def _checked_two_mode(sigma):
    sigma = _as_square(sigma, "covariance matrix")
    if sigma.shape != (4, 4):
        raise InvalidArgumentError(f"steering needs a two-mode covariance matrix, got {sigma.shape}")
    det_all = determinant(sigma)
    if not det_all > 0:
        raise DegenerateStateError(f"det(sigma) = {float(det_all)!r} is not positive")
    return sigma, det_all


def _clamped_half_log(ratio) -> float:
    # clamp on the log argument: ratio <= 1 means no steering
    if ratio <= 1:
        return 0.0
    return float(0.5 * np.log(ratio))


def steering(sigma, direction: Direction) -> float:
    """Gaussian steerability of a two-mode state.

    Parameters
    ----------
    sigma : array_like, shape (4, 4)
        Covariance matrix in ``(A, B)`` mode order.
    direction : Direction
        ``A_TO_B`` uses Alice's reduced block, ``B_TO_A`` Bob's.

    Returns
    -------
    float
        ``max(0, 0.5 * ln(det block / det sigma))``. Exactly 0.0 when the log
        argument does not exceed 1.
    """
    direction = Direction(direction)
    sigma, det_all = _checked_two_mode(sigma)
    block = sigma[:2, :2] if direction is Direction.A_TO_B else sigma[2:, 2:]
    return _clamped_half_log(determinant(block) / det_all)


def steering_values(sigma) -> SteeringValues:
    sigma, det_all = _checked_two_mode(sigma)
    return SteeringValues(
        _clamped_half_log(determinant(sigma[:2, :2]) / det_all),
        _clamped_half_log(determinant(sigma[2:, 2:]) / det_all),
    )


def steering_asymmetry(sigma) -> float:
    return steering_values(sigma).asymmetry
