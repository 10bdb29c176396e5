"""Brute-force reference path over the full ``2**(2N+n)`` Hilbert space.

Nothing here uses the coefficient equations or the block spectra.  The
collective lowering operators are assembled qubit by qubit, the master
equation is integrated with RK4, ``C`` is traced out by index contraction,
and the negativity comes from a dense eigensolve of the partial transpose.

The jump operators only remove excitations, so a state supported on basis
vectors with at most ``e`` excitations stays there.  By default the
integration runs on that invariant block (the rows and columns of the full
operators with popcount <= ``e``).  The result is then embedded back into
the full space, and ``restrict=False`` integrates the full matrices instead.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    DEFAULT_ORACLE_CAP,
    EnsembleConfig,
    ExcitationCase,
    validate_config,
)
from .negativity import negativity_from_spectrum
from .numerics import rk4_integrate, symmetric_eigenvalues

_SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]])  # |0><1|


def _site_operator(op: np.ndarray, position: int, total: int) -> np.ndarray:
    left = np.eye(2**position)
    right = np.eye(2 ** (total - position - 1))
    return np.kron(np.kron(left, op), right)


def build_collective_lowering(
    cfg: EnsembleConfig, tag: str, *, max_total_qubits: int = DEFAULT_ORACLE_CAP
) -> np.ndarray:
    """Sum of single-site lowering operators over ``A u C`` (``tag="AC"``) or ``B u C``."""
    if cfg.total_qubits > max_total_qubits:
        raise ValueError(f"2N+n = {cfg.total_qubits} exceeds the oracle cap of {max_total_qubits}")
    layout = cfg.layout
    if tag == "AC":
        sites = [*layout.a_sites, *layout.c_sites]
    elif tag == "BC":
        sites = [*layout.b_sites, *layout.c_sites]
    else:
        raise ValueError(f"tag must be 'AC' or 'BC', got {tag!r}")
    dim = 2**cfg.total_qubits
    L = np.zeros((dim, dim))
    for site in sites:
        L += _site_operator(_SIGMA_MINUS, site, cfg.total_qubits)
    return L


def lindblad_rhs(rho: np.ndarray, L_ac: np.ndarray, L_bc: np.ndarray) -> np.ndarray:
    """``sum_L 2 L rho L^T - {L^T L, rho}`` for the two real jump operators."""
    out = np.zeros_like(rho)
    for L in (L_ac, L_bc):
        LtL = L.T @ L
        out += 2.0 * L @ rho @ L.T - LtL @ rho - rho @ LtL
    return out


def excited_site(cfg: EnsembleConfig, case: ExcitationCase | str, site: int | None = None) -> int:
    """Tensor position of the initial excitation (first site of the ensemble by default)."""
    case = ExcitationCase.parse(case)
    sites = cfg.layout.c_sites if case is ExcitationCase.COMMON else cfg.layout.a_sites
    if len(sites) == 0:
        raise ValueError(f"no site available for a {case.value}-site excitation")
    if site is None:
        return sites[0]
    if site not in sites:
        raise ValueError(f"site {site} is not in the {case.value} ensemble {list(sites)}")
    return site


def initial_state(cfg: EnsembleConfig, case: ExcitationCase | str, site: int | None = None) -> np.ndarray:
    """Projector onto the basis state with one excitation at ``site``."""
    pos = excited_site(cfg, case, site)
    dim = 2**cfg.total_qubits
    rho = np.zeros((dim, dim))
    idx = cfg.layout.bit(pos)
    rho[idx, idx] = 1.0
    return rho


def default_step(cfg: EnsembleConfig) -> float:
    return min(1e-3, 0.1 / (cfg.N + 2 * cfg.n))


def _sector(total_qubits: int, excitations: int) -> np.ndarray:
    idx = np.arange(2**total_qubits)
    popcount = np.array([bin(i).count("1") for i in idx])
    return idx[popcount <= excitations]


def evolve_trajectory(
    cfg: EnsembleConfig,
    case: ExcitationCase | str,
    times,
    *,
    max_step: float | None = None,
    site: int | None = None,
    restrict: bool = True,
    max_total_qubits: int = DEFAULT_ORACLE_CAP,
) -> list[np.ndarray]:
    """Full density matrices at each of the increasing ``times``.

    Each segment between consecutive times uses
    ``ceil(dt / max_step)`` RK4 steps.  The trace is not renormalised.
    """
    case = ExcitationCase.parse(case)
    validate_config(cfg, case, oracle=True, max_total_qubits=max_total_qubits)
    times = [float(t) for t in times]
    if any(t < 0 for t in times) or any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("times must be non-negative and non-decreasing")
    h = default_step(cfg) if max_step is None else max_step

    L_ac = build_collective_lowering(cfg, "AC", max_total_qubits=max_total_qubits)
    L_bc = build_collective_lowering(cfg, "BC", max_total_qubits=max_total_qubits)
    rho = initial_state(cfg, case, site)
    dim = rho.shape[0]
    keep = _sector(cfg.total_qubits, 1) if restrict else np.arange(dim)
    sub = np.ix_(keep, keep)
    L_ac, L_bc = L_ac[sub], L_bc[sub]
    # fold the constant products once; same operator as lindblad_rhs
    K = L_ac.T @ L_ac + L_bc.T @ L_bc
    L_acT, L_bcT = L_ac.T.copy(), L_bc.T.copy()

    def rhs(r):
        return 2.0 * (L_ac @ r @ L_acT + L_bc @ r @ L_bcT) - K @ r - r @ K

    y = rho[sub]
    out = []
    now = 0.0
    for t in times:
        if t > now:
            y = rk4_integrate(rhs, y, t - now, max(1, math.ceil((t - now) / h - 1e-9)))
            now = t
        full = np.zeros((dim, dim))
        full[sub] = y
        out.append(full)
    return out


def evolve_full(
    cfg: EnsembleConfig,
    case: ExcitationCase | str,
    t: float,
    steps: int | None = None,
    **kwargs,
) -> np.ndarray:
    """Density matrix at time ``t``; ``steps`` fixes the RK4 step count."""
    if steps is not None:
        if steps < 1:
            raise ValueError("steps must be >= 1")
        kwargs["max_step"] = t / steps if t > 0 else 1.0
    return evolve_trajectory(cfg, case, [t], **kwargs)[0]


def partial_trace_C(rho: np.ndarray, cfg: EnsembleConfig) -> np.ndarray:
    """Trace out the middle C block, leaving a ``2**(2N)`` matrix on A (x) B."""
    dA, dC = 2**cfg.N, 2**cfg.n
    r = rho.reshape(dA, dC, dA, dA, dC, dA)
    return np.einsum("icjkcl->ijkl", r).reshape(dA * dA, dA * dA)


def partial_transpose_B(rho_ab: np.ndarray, N: int) -> np.ndarray:
    """Transpose the trailing ``N``-qubit (B) indices of an A (x) B matrix."""
    d = 2**N
    if rho_ab.shape != (d * d, d * d):
        raise ValueError(f"expected shape {(d * d, d * d)}, got {rho_ab.shape}")
    r = rho_ab.reshape(d, d, d, d)
    return r.transpose(0, 3, 2, 1).reshape(d * d, d * d)


def negativity_of_state(rho: np.ndarray, cfg: EnsembleConfig) -> float:
    rho_ab = partial_trace_C(rho, cfg)
    pt = partial_transpose_B(rho_ab, cfg.N)
    return negativity_from_spectrum(symmetric_eigenvalues(0.5 * (pt + pt.T)))


def oracle_negativity(cfg: EnsembleConfig, case: ExcitationCase | str, t: float, **kwargs) -> float:
    return negativity_of_state(evolve_full(cfg, case, t, **kwargs), cfg)


def oracle_negativities(cfg: EnsembleConfig, case: ExcitationCase | str, times, **kwargs) -> list[float]:
    """Negativity along one trajectory, evaluated at each of ``times``."""
    return [negativity_of_state(r, cfg) for r in evolve_trajectory(cfg, case, times, **kwargs)]


# ---------------------------------------------------------------------------
# Projection onto the 11-operator span

def operator_basis(cfg: EnsembleConfig, case: ExcitationCase | str, site: int | None = None) -> list[np.ndarray]:
    """The eleven basis operators, in coefficient order, as full matrices.

    Operators built from an empty superposition (``n = 1`` common case,
    ``N = 1`` or ``n = 0`` side case) come out as zero matrices.
    """
    case = ExcitationCase.parse(case)
    layout = cfg.layout
    dim = 2**cfg.total_qubits
    k = excited_site(cfg, case, site)

    def superposition(sites):
        v = np.zeros(dim)
        for s in sites:
            v[layout.bit(s)] += 1.0
        return v

    g = np.zeros(dim)
    g[0] = 1.0
    kk = superposition([k])
    b = superposition(layout.b_sites)
    if case is ExcitationCase.COMMON:
        a = superposition(layout.a_sites)
        c = superposition([s for s in layout.c_sites if s != k])
    else:
        a = superposition([s for s in layout.a_sites if s != k])
        c = superposition(layout.c_sites)

    def sym(x, y):
        return np.outer(x, y) + np.outer(y, x)

    return [
        np.outer(g, g), np.outer(kk, kk), np.outer(a, a), np.outer(b, b), np.outer(c, c),
        sym(a, kk), sym(b, kk), sym(c, kk), sym(a, b), sym(a, c), sym(b, c),
    ]


def extract_coefficients(
    rho: np.ndarray, cfg: EnsembleConfig, case: ExcitationCase | str, site: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Least-squares coefficients of ``rho`` in the 11-operator basis.

    Returns ``(coeffs, identifiable)``.  Coefficients of zero basis operators
    are not identifiable; they are reported as 0 and flagged ``False``.
    """
    basis = operator_basis(cfg, case, site)
    identifiable = np.array([np.abs(B).max() > 0 for B in basis])
    V = np.array([B.ravel() for B, ok in zip(basis, identifiable) if ok])
    gram = V @ V.T
    coeffs = np.zeros(len(basis))
    coeffs[identifiable] = np.linalg.solve(gram, V @ rho.ravel())
    return coeffs, identifiable


def subspace_leakage(
    rho: np.ndarray, cfg: EnsembleConfig, case: ExcitationCase | str, site: int | None = None
) -> float:
    """Frobenius distance from ``rho`` to the span of the 11 basis operators."""
    coeffs, _ = extract_coefficients(rho, cfg, case, site)
    basis = operator_basis(cfg, case, site)
    projection = sum(cj * B for cj, B in zip(coeffs, basis))
    return float(np.linalg.norm(rho - projection))
