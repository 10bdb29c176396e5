"""Fixed-step RK4 and a symmetric eigenvalue wrapper shared by all modules."""

from __future__ import annotations

from typing import Callable

import numpy as np


class IntegrationError(RuntimeError):
    pass


class EigenSolverError(RuntimeError):
    pass


def rk4_integrate(
    rhs: Callable[[np.ndarray], np.ndarray],
    y0,
    t_final: float,
    steps: int,
) -> np.ndarray:
    """Integrate the autonomous system ``y' = rhs(y)`` from 0 to ``t_final``.

    Classical fourth-order Runge-Kutta with ``steps`` equal steps.  ``y0`` may
    be an array of any shape; ``rhs`` must return an array of the same shape.

    Raises
    ------
    IntegrationError
        If the state stops being finite.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if not t_final >= 0:
        raise ValueError("t_final must be non-negative")
    y = np.array(y0, dtype=float, copy=True)
    if t_final == 0:
        return y
    h = t_final / steps
    half = 0.5 * h
    sixth = h / 6.0
    for _ in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + half * k1)
        k3 = rhs(y + half * k2)
        k4 = rhs(y + h * k3)
        y = y + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        if not np.isfinite(y).all():
            raise IntegrationError("integration diverged")
    return y


def symmetric_eigenvalues(m) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, ascending."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max()))
    if np.abs(m - m.T).max() > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    try:
        return np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigenvalue iteration did not converge: {exc}") from exc
