"""Coefficient dynamics in the closed 11-operator basis and the A|B state.

Starting from a single excitation, the state stays in the span of eleven
operators built from the ground state ``|g>``, the excited site ``|k>`` and
uniform single-excitation superpositions over the remaining sites of each
ensemble.  Index ``j`` of a :class:`CoefficientVector` refers to:

=====  ====================  =====================
 j      common-site case      side-site case
=====  ====================  =====================
 0      |g><g|                |g><g|
 1      |k><k|                |k'><k'|
 2      |a><a|                |a'><a'|
 3      |b><b|                |b><b|
 4      |c><c|                |c'><c'|
 5      Omega_ak              Omega'_ak
 6      Omega_bk              Omega'_bk
 7      Omega_ck              Omega'_ck
 8      chi_ab                chi'_ab
 9      chi_ac                chi'_ac
 10     chi_bc                chi'_bc
=====  ====================  =====================

``Omega_xk = |x><k| + |k><x|`` and ``chi_xy = |x><y| + |y><x|``.  The
superposition states are unnormalised sums, e.g. ``<a|a> = N``.  Time is
measured in units of the (unit) decay rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ExcitationCase

N_COEFFS = 11


@dataclass(frozen=True)
class CoefficientVector:
    """Eleven expansion coefficients of the full density matrix."""

    case: ExcitationCase
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape[:1] != (N_COEFFS,):
            raise ValueError(f"expected 11 coefficients, got shape {values.shape}")
        object.__setattr__(self, "case", ExcitationCase.parse(self.case))
        object.__setattr__(self, "values", values)

    def __getitem__(self, j):
        return self.values[j]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def trace(self, N: int, n: int):
        """Trace of the full density matrix implied by these coefficients."""
        v = self.values
        if self.case is ExcitationCase.COMMON:
            return v[0] + v[1] + N * (v[2] + v[3]) + (n - 1) * v[4]
        return v[0] + v[1] + (N - 1) * v[2] + N * v[3] + n * v[4]


def _values(c) -> np.ndarray:
    if isinstance(c, CoefficientVector):
        return c.values
    return np.asarray(c, dtype=float)


def unit_vector(j: int) -> np.ndarray:
    e = np.zeros(N_COEFFS)
    e[j] = 1.0
    return e


# ---------------------------------------------------------------------------
# Right-hand sides

def common_generator(N: int, n: int) -> np.ndarray:
    """Matrix ``G`` with ``dc/dt = G @ c`` for an excitation starting in C."""
    m = n - 1
    G = np.zeros((N_COEFFS, N_COEFFS))
    G[0, [1, 2, 3, 4, 5, 6, 7, 9, 10]] = [
        4, 2 * N**2, 2 * N**2, 4 * m**2, 4 * N, 4 * N, 8 * m, 4 * N * m, 4 * N * m,
    ]
    G[1, [1, 5, 6, 7]] = [-4, -2 * N, -2 * N, -4 * m]
    G[2, [2, 5, 9]] = [-2 * N, -2, -2 * m]
    G[3, [3, 6, 10]] = [-2 * N, -2, -2 * m]
    G[4, [4, 7, 9, 10]] = [-4 * m, -4, -2 * N, -2 * N]
    G[5, [1, 2, 5, 7, 8, 9]] = [-1, -N, -(N + 2), -m, -N, -2 * m]
    G[6, [1, 3, 6, 7, 8, 10]] = [-1, -N, -(N + 2), -m, -N, -2 * m]
    G[7, [1, 4, 5, 6, 7, 9, 10]] = [-2, -2 * m, -N, -N, -2 * n, -N, -N]
    G[8, [5, 6, 8, 9, 10]] = [-1, -1, -2 * N, -m, -m]
    G[9, [2, 4, 5, 7, 8, 9]] = [-N, -m, -2, -1, -N, -(N + 2 * n - 2)]
    G[10, [3, 4, 6, 7, 8, 10]] = [-N, -m, -2, -1, -N, -(N + 2 * n - 2)]
    return G


def side_generator(N: int, n: int) -> np.ndarray:
    """Matrix ``G`` with ``da/dt = G @ a`` for an excitation starting in A."""
    m = N - 1
    G = np.zeros((N_COEFFS, N_COEFFS))
    G[0, [1, 2, 3, 4, 5, 7, 9, 10]] = [
        2, 2 * m**2, 2 * N**2, 4 * n**2, 4 * m, 4 * n, 4 * n * m, 4 * N * n,
    ]
    G[1, [1, 5, 7]] = [-2, -2 * m, -2 * n]
    G[2, [2, 5, 9]] = [-2 * m, -2, -2 * n]
    G[3, [3, 10]] = [-2 * N, -2 * n]
    G[4, [4, 7, 9, 10]] = [-4 * n, -2, -2 * m, -2 * N]
    G[5, [1, 2, 5, 7, 9]] = [-1, -m, -N, -n, -n]
    G[6, [6, 7, 8, 10]] = [-(N + 1), -n, -m, -n]
    G[7, [1, 4, 5, 6, 7, 9]] = [-1, -n, -m, -N, -(2 * n + 1), -m]
    G[8, [6, 8, 9, 10]] = [-1, -(2 * N - 1), -n, -n]
    G[9, [2, 4, 5, 7, 8, 9]] = [-m, -n, -1, -1, -N, -(N + 2 * n - 1)]
    G[10, [3, 4, 6, 8, 10]] = [-N, -n, -1, -m, -(N + 2 * n)]
    return G


def coeff_rhs_common(c, N: int, n: int) -> np.ndarray:
    return common_generator(N, n) @ _values(c)


def coeff_rhs_side(a, N: int, n: int) -> np.ndarray:
    return side_generator(N, n) @ _values(a)


def generator(case: ExcitationCase | str, N: int, n: int) -> np.ndarray:
    if ExcitationCase.parse(case) is ExcitationCase.COMMON:
        return common_generator(N, n)
    return side_generator(N, n)


# ---------------------------------------------------------------------------
# Closed-form solutions
#
# Every growing exponential of the textbook forms is paired with a decaying
# prefactor, so all expressions below only contain exp(-r t) with r >= 0.

def _closed_common_values(t, N: int, n: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    s = N + 2 * n
    E = np.exp(-s * t)
    rise = -np.expm1(-s * t)  # 1 - E, accurate near t = 0
    c = np.empty((N_COEFFS,) + t.shape)
    c[0] = (2.0 / s) * rise * (1.0 + E)
    c[1] = ((s - 2) + 2 * E) ** 2 / s**2
    c[2] = c[3] = c[8] = rise**2 / s**2
    c[4] = 4 * c[2]
    c[5] = c[6] = -((s - 2) + 2 * E) * rise / s**2
    c[7] = 2 * c[5]
    c[9] = c[10] = 2 * c[2]
    return c


def _closed_side_values(t, N: int, n: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    s = N + 2 * n
    P = N**2 + 2 * N * n - N - n
    Q = N**2 + 2 * N * n - 2 * N - 2 * n
    eN = np.exp(-N * t)
    e2n = np.exp(-2 * n * t)
    rise = -np.expm1(-s * t)  # 1 - exp(-s t)
    u = (s + N * e2n) * eN
    v = (s - N * e2n) * eN
    den = 4.0 * N**2 * s**2
    a = np.empty((N_COEFFS,) + t.shape)
    a[0] = (2 * (N + n) - s * eN**2 - N * (eN * e2n) ** 2) / (2 * N * s)
    a[1] = P * (P + u) / (N**2 * s**2) + u**2 / den
    a[2] = (u - 2 * (N + n)) ** 2 / den
    a[3] = (v - 2 * n) ** 2 / den
    a[4] = rise**2 / s**2
    a[5] = (Q * u - 2 * (N + n) * P) / (2 * N**2 * s**2) + u**2 / den
    a[6] = (
        4 * n * P
        - 2 * s**2 * (N - 1) * eN
        - s**2 * eN**2
        + 2 * N**2 * (s - 1) * eN * e2n
        + N**2 * (eN * e2n) ** 2
    ) / den
    a[7] = (
        2 * (n + N - N**2 - 2 * N * n)
        - s * eN
        + (2 * N**2 - 2 * n + 4 * N * n - 3 * N) * eN * e2n
        + s * eN * np.exp(-s * t)
        + N * (eN * e2n) ** 2
    ) / (2 * N * s**2)
    a[8] = (
        -4 * n * (N + n)
        + 2 * s**2 * eN
        - s**2 * eN**2
        - 2 * N**2 * eN * e2n
        + N**2 * (eN * e2n) ** 2
    ) / den
    a[9] = rise * (2 * (N + n) - u) / (2 * N * s**2)
    a[10] = rise * (v - 2 * n) / (2 * N * s**2)
    return a


def coeff_closed_common(t: float, N: int, n: int) -> CoefficientVector:
    """Exact coefficients at time ``t`` for an excitation starting in C."""
    if n < 1:
        raise ValueError("common-site excitation requires n >= 1")
    return CoefficientVector(ExcitationCase.COMMON, _closed_common_values(t, N, n))


def coeff_closed_side(t: float, N: int, n: int) -> CoefficientVector:
    """Exact coefficients at time ``t`` for an excitation starting in A."""
    return CoefficientVector(ExcitationCase.SIDE, _closed_side_values(t, N, n))


def coeff_closed(case: ExcitationCase | str, t, N: int, n: int) -> CoefficientVector:
    if ExcitationCase.parse(case) is ExcitationCase.COMMON:
        return coeff_closed_common(t, N, n)
    return coeff_closed_side(t, N, n)


# ---------------------------------------------------------------------------
# State of A and B after tracing out C

@dataclass(frozen=True)
class ReducedBipartiteState:
    """Structured form of ``rho_AB``.

    Common case: ``beta |g><g| + c2 (|a><a| + |b><b| + chi_ab)``.
    Side case: ``beta |g><g| + a1 |k'><k'| + a2 |a'><a'| + a3 |b><b|
    + a5 Omega'_ak + a6 Omega'_bk + a8 chi'_ab``.
    Coefficients that do not belong to ``case`` stay at zero.
    """

    case: ExcitationCase
    N: int
    beta: float
    c2: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0
    a5: float = 0.0
    a6: float = 0.0
    a8: float = 0.0

    @property
    def dim(self) -> int:
        return (1 + self.N) ** 2


def reduced_state_common(c, N: int, n: int) -> ReducedBipartiteState:
    v = _values(c)
    c2 = float(v[2])
    return ReducedBipartiteState(ExcitationCase.COMMON, N, beta=1.0 - 2 * N * c2, c2=c2)


def reduced_state_side(a, N: int, n: int) -> ReducedBipartiteState:
    v = _values(a)
    a1, a2, a3 = float(v[1]), float(v[2]), float(v[3])
    beta = 1.0 - a1 - (N - 1) * a2 - N * a3
    return ReducedBipartiteState(
        ExcitationCase.SIDE, N, beta=beta,
        a1=a1, a2=a2, a3=a3, a5=float(v[5]), a6=float(v[6]), a8=float(v[8]),
    )


def reduced_state(case: ExcitationCase | str, t: float, N: int, n: int) -> ReducedBipartiteState:
    """``rho_AB`` at time ``t`` from the closed-form coefficients."""
    coeffs = coeff_closed(case, t, N, n)
    if coeffs.case is ExcitationCase.COMMON:
        return reduced_state_common(coeffs, N, n)
    return reduced_state_side(coeffs, N, n)


# Structured basis of A (x) B: |g~>, then |e_i>|e_j> (i-major), then
# |e_i>|g>, then |g>|e_j>.

def _ee(N, i, j):
    return 1 + i * N + j


def _eg(N, i):
    return 1 + N * N + i


def _ge(N, j):
    return 1 + N * N + N + j


def expand_reduced_state(s: ReducedBipartiteState) -> np.ndarray:
    """Dense ``(1+N)**2`` matrix of ``rho_AB`` in the structured basis."""
    N = s.N
    rho = np.zeros((s.dim, s.dim))
    rho[0, 0] = s.beta
    eg = slice(_eg(N, 0), _eg(N, 0) + N)
    ge = slice(_ge(N, 0), _ge(N, 0) + N)
    if s.case is ExcitationCase.COMMON:
        rho[eg, eg] = s.c2
        rho[ge, ge] = s.c2
        rho[eg, ge] = s.c2
        rho[ge, eg] = s.c2
        return rho
    # the excitation starts on the first A site; the others form |a'>
    k = _eg(N, 0)
    rest = slice(k + 1, k + N)
    rho[k, k] = s.a1
    rho[rest, rest] = s.a2
    rho[ge, ge] = s.a3
    rho[k, rest] = rho[rest, k] = s.a5
    rho[k, ge] = rho[ge, k] = s.a6
    rho[rest, ge] = s.a8
    rho[ge, rest] = s.a8
    return rho


def structured_basis_indices(N: int) -> np.ndarray:
    """Computational-basis indices (A bits first, then B) of the structured basis."""
    idx = np.empty((1 + N) ** 2, dtype=int)
    idx[0] = 0
    a_bit = [1 << (2 * N - 1 - i) for i in range(N)]
    b_bit = [1 << (N - 1 - j) for j in range(N)]
    for i in range(N):
        for j in range(N):
            idx[_ee(N, i, j)] = a_bit[i] | b_bit[j]
        idx[_eg(N, i)] = a_bit[i]
        idx[_ge(N, i)] = b_bit[i]
    return idx


def embed_in_qubit_space(rho: np.ndarray, N: int) -> np.ndarray:
    """Place a structured-basis matrix into the ``2**(2N)``-dim space of A and B."""
    idx = structured_basis_indices(N)
    full = np.zeros((4**N, 4**N))
    full[np.ix_(idx, idx)] = rho
    return full
