"""Ensemble configuration, qubit ordering and the operator-subspace bound.

Three ensembles of qubits are involved: the side ensembles ``A`` and ``B``
(``N`` qubits each) and the common ensemble ``C`` (``n`` qubits) that
dissipates into both environments.  Qubits are laid out as the A-block,
then the C-block, then the B-block, so tracing out ``C`` contracts a
contiguous block of middle tensor indices.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

DEFAULT_ORACLE_CAP = 12
MAX_BOUND_QUBITS = 62


class ConfigError(ValueError):
    """Raised for an ensemble configuration that cannot be used."""


class ExcitationCase(str, enum.Enum):
    """Ensemble that holds the single initial excitation."""

    COMMON = "common"
    SIDE = "side"

    @classmethod
    def parse(cls, value: "ExcitationCase | str") -> "ExcitationCase":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ConfigError(
                f"unknown excitation case {value!r}; expected 'common' or 'side'"
            ) from None


@dataclass(frozen=True)
class EnsembleConfig:
    """Sizes of the side ensembles (``N`` each) and the common ensemble (``n``)."""

    N: int
    n: int

    def __post_init__(self):
        for name in ("N", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if self.N < 1:
            raise ConfigError(f"side ensembles need at least one qubit (N={self.N})")
        if self.n < 0:
            raise ConfigError(f"common ensemble size must be non-negative (n={self.n})")

    @property
    def total_qubits(self) -> int:
        return 2 * self.N + self.n

    @property
    def layout(self) -> "QubitLayout":
        return QubitLayout(self)


@dataclass(frozen=True)
class QubitLayout:
    """Zero-based tensor positions of every site.

    Position 0 is the most significant bit of a computational-basis index.
    """

    config: EnsembleConfig

    @property
    def a_sites(self) -> range:
        return range(0, self.config.N)

    @property
    def c_sites(self) -> range:
        return range(self.config.N, self.config.N + self.config.n)

    @property
    def b_sites(self) -> range:
        return range(self.config.N + self.config.n, self.config.total_qubits)

    def bit(self, position: int) -> int:
        """Basis-index bit mask of the qubit at ``position``."""
        total = self.config.total_qubits
        if not 0 <= position < total:
            raise IndexError(f"position {position} outside 0..{total - 1}")
        return 1 << (total - 1 - position)


def validate_config(
    cfg: EnsembleConfig,
    case: ExcitationCase | str,
    *,
    oracle: bool = False,
    max_total_qubits: int = DEFAULT_ORACLE_CAP,
) -> EnsembleConfig:
    """Check that ``cfg`` is usable for ``case`` and return it unchanged.

    With ``oracle=True`` the total qubit count is also checked against
    ``max_total_qubits``, since the brute-force path stores dense
    ``2**(2N+n)`` matrices.
    """
    case = ExcitationCase.parse(case)
    if case is ExcitationCase.COMMON and cfg.n < 1:
        raise ConfigError("common-site excitation requires n >= 1")
    if oracle and cfg.total_qubits > max_total_qubits:
        raise ConfigError(
            f"2N+n = {cfg.total_qubits} exceeds the oracle cap of {max_total_qubits} qubits"
        )
    return cfg


def subspace_dim_bound(total_qubits: int, excitations: int) -> int:
    """Upper bound on the dimension of the operator space reached from a
    state with at most ``excitations`` excitations: ``[sum_i C(N_T, i)]**2``.
    """
    if total_qubits < 1:
        raise ValueError("total_qubits must be positive")
    if total_qubits > MAX_BOUND_QUBITS:
        raise ValueError(f"total_qubits > {MAX_BOUND_QUBITS} is not supported")
    if not 0 <= excitations <= total_qubits:
        raise ValueError("excitations must lie in 0..total_qubits")
    return sum(math.comb(total_qubits, i) for i in range(excitations + 1)) ** 2
