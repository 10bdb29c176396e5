"""Partial-transpose spectra and negativity between ensembles A and B.

In the structured basis ``{|g~>, |e_i e_j>, |e_i g>, |g e_j>}`` the
partially transposed state is block diagonal.  An arrow-shaped ``tau`` block
couples ``|g~>`` to the doubly excited states; the ``omega`` blocks act on the
singly excited states of A and of B.  Only ``tau`` can carry a negative
eigenvalue, which makes the negativity available in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import ExcitationCase
from .dynamics import (
    ReducedBipartiteState,
    coeff_closed_common,
    coeff_closed_side,
)

NEGATIVE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class PTBlockSpectrum:
    """Eigenvalues of the partially transposed ``rho_AB``, grouped by block.

    ``omega`` lists every eigenvalue of the omega blocks that is not
    structurally zero; the remaining eigenvalues of the ``(1+N)**2``
    structured basis are zeros.
    """

    case: ExcitationCase
    N: int
    tau: tuple[float, float]
    omega: tuple[float, ...]

    @property
    def dim(self) -> int:
        return (1 + self.N) ** 2

    def eigenvalues(self, dim: int | None = None) -> np.ndarray:
        """All eigenvalues, ascending, zero-padded to ``dim`` entries."""
        dim = self.dim if dim is None else dim
        known = [*self.tau, *self.omega]
        if dim < len(known):
            raise ValueError(f"dim={dim} is smaller than the {len(known)} listed eigenvalues")
        return np.sort(np.concatenate([known, np.zeros(dim - len(known))]))


def _arrow_pair(diag: float, coupling_sq: float) -> tuple[float, float]:
    # eigenvalues of [[diag, v^T], [v, 0]] with |v|^2 = coupling_sq
    root = np.sqrt(diag * diag + 4.0 * coupling_sq)
    if diag >= 0:
        upper = 0.5 * (diag + root)
        lower = -coupling_sq / upper if upper > 0 else 0.0
    else:
        lower = 0.5 * (diag - root)
        upper = -coupling_sq / lower
    return float(lower), float(upper)


def side_omega_eigenvalues(a1: float, a2: float, a5: float, N: int) -> tuple[float, ...]:
    """Eigenvalues of the ``N x N`` block ``[[a1, a5 ...], [a5, a2 ...], ...]``
    that are not structurally zero (one for ``N = 1``, two otherwise)."""
    if N == 1:
        return (float(a1),)
    mean = 0.5 * (a1 + (N - 1) * a2)
    half_gap = 0.5 * np.hypot(a1 - (N - 1) * a2, 2.0 * np.sqrt(N - 1) * a5)
    return (float(mean - half_gap), float(mean + half_gap))


def side_omega_block(a1: float, a2: float, a5: float, N: int) -> np.ndarray:
    block = np.full((N, N), float(a2))
    block[0, :] = block[:, 0] = a5
    block[0, 0] = a1
    return block


def pt_spectrum_common(s: ReducedBipartiteState) -> PTBlockSpectrum:
    if s.case is not ExcitationCase.COMMON:
        raise ValueError("expected a common-site reduced state")
    N = s.N
    tau = _arrow_pair(s.beta, N * N * s.c2**2)
    block = N * s.c2
    return PTBlockSpectrum(s.case, N, tau, (block, block))


def pt_spectrum_side(s: ReducedBipartiteState) -> PTBlockSpectrum:
    if s.case is not ExcitationCase.SIDE:
        raise ValueError("expected a side-site reduced state")
    N = s.N
    tau = _arrow_pair(s.beta, N * (s.a6**2 + (N - 1) * s.a8**2))
    omega = side_omega_eigenvalues(s.a1, s.a2, s.a5, N) + (N * s.a3,)
    return PTBlockSpectrum(s.case, N, tau, omega)


def pt_spectrum(s: ReducedBipartiteState) -> PTBlockSpectrum:
    if s.case is ExcitationCase.COMMON:
        return pt_spectrum_common(s)
    return pt_spectrum_side(s)


def negativity_from_spectrum(eigs, threshold: float = NEGATIVE_THRESHOLD) -> float:
    """Absolute sum of the negative eigenvalues; values above ``-threshold`` count as zero."""
    eigs = np.asarray(eigs, dtype=float)
    return float(-eigs[eigs <= -threshold].sum())


def _sqrt_gap(x, y):
    # sqrt(x^2 + y^2) - y without cancellation when y > 0
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.hypot(x, y)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(y > 0, x * x / (r + y), r - y)
    return np.maximum(out, 0.0)


def _as_output(value, t):
    return float(value) if np.ndim(t) == 0 else value


def negativity_common(t, N: int, n: int):
    """Negativity at time(s) ``t`` for a single excitation starting in C."""
    c2 = coeff_closed_common(t, N, n)[2]
    x = N * c2
    return _as_output(_sqrt_gap(x, 0.5 - x), t)


def negativity_side(t, N: int, n: int):
    """Negativity at time(s) ``t`` for a single excitation starting in A."""
    a = coeff_closed_side(t, N, n).values
    a1, a2, a3, a6, a8 = a[1], a[2], a[3], a[6], a[8]
    beta = 1.0 - a1 - (N - 1) * a2 - N * a3
    coupling = N * (a6**2 + (N - 1) * a8**2)
    return _as_output(_sqrt_gap(np.sqrt(coupling), 0.5 * beta), t)


def negativity(case: ExcitationCase | str, t, N: int, n: int):
    if ExcitationCase.parse(case) is ExcitationCase.COMMON:
        return negativity_common(t, N, n)
    return negativity_side(t, N, n)


def stationary_negativity_common(N: int, n: int) -> float:
    if n < 1:
        raise ValueError("common-site excitation requires n >= 1")
    s = N + 2 * n
    value = 0.5 * np.sqrt(8 * N**2 / s**4 - 4 * N / s**2 + 1) + N / s**2 - 0.5
    return max(float(value), 0.0)


def stationary_negativity_side(N: int, n: int) -> float:
    s = N + 2 * n
    bracket = (
        N**6
        + 4 * N**5 * n * (n + 2)
        + 16 * N**4 * n**2 * (n + 1)
        + 16 * N**3 * n**4
        - 8 * N**2 * n**4
    )
    value = np.sqrt(float(bracket)) / (2 * N**2 * s**2) + (2 * n**2 - s**2) / (2 * N * s**2)
    return max(float(value), 0.0)


def stationary_negativity(case: ExcitationCase | str, N: int, n: int) -> float:
    if ExcitationCase.parse(case) is ExcitationCase.COMMON:
        return stationary_negativity_common(N, n)
    return stationary_negativity_side(N, n)


def argmax_over_N(f: Callable[[int, int], float], n: int, N_max: int) -> int:
    """Side-ensemble size in ``1..N_max`` maximising ``f(N, n)``; ties go to the smaller ``N``."""
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    best_N, best = 1, f(1, n)
    for N in range(2, N_max + 1):
        value = f(N, n)
        if value > best:
            best_N, best = N, value
    return best_N
