"""Chain configuration and single-qubit Bloch-sphere states.

Sites are labelled 1..N in every public function. The spin convention is
|down> = |0> and |up> = |1>; the channel starts in the all-|0> state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

TWO_PI = 2.0 * math.pi


class FieldSign(str, enum.Enum):
    """Sign with which the field enters the single-excitation energies.

    ``EQ3`` gives E_m = 2h - 2J cos(q_m) (the convention used for all
    published numbers). ``EQ1`` is what the Hamiltonian ``-h sum sigma_z``
    yields literally, E_m = -2h - 2J cos(q_m).
    """

    EQ3 = "eq3"
    EQ1 = "eq1"

    @property
    def sign(self) -> float:
        return 1.0 if self is FieldSign.EQ3 else -1.0

    @classmethod
    def parse(cls, value) -> "FieldSign":
        if isinstance(value, cls):
            return value
        aliases = {"eq3": cls.EQ3, "eq3_normative": cls.EQ3,
                   "eq1": cls.EQ1, "eq1_literal": cls.EQ1}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise DomainError(f"unknown field sign convention {value!r}") from None


@dataclass(frozen=True)
class ChainConfig:
    """An open XY chain of ``n_sites`` spins with coupling and uniform field."""

    n_sites: int
    coupling: float = 1.0
    field: float = 0.0
    field_sign: FieldSign = FieldSign.EQ3

    def __post_init__(self):
        object.__setattr__(self, "field_sign", FieldSign.parse(self.field_sign))
        validate_config(self)

    def with_(self, **changes) -> "ChainConfig":
        params = dict(n_sites=self.n_sites, coupling=self.coupling,
                      field=self.field, field_sign=self.field_sign)
        params.update(changes)
        return ChainConfig(**params)


def validate_config(cfg: ChainConfig) -> ChainConfig:
    """Return ``cfg`` unchanged, raising :class:`DomainError` if it is unusable."""
    n = cfg.n_sites
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"n_sites must be an integer, got {n!r}")
    if n < 2:
        raise DomainError(f"a channel needs at least 2 sites, got n_sites={n}")
    if not math.isfinite(cfg.coupling) or cfg.coupling == 0.0:
        raise DomainError(f"coupling must be finite and nonzero, got {cfg.coupling}")
    if not math.isfinite(cfg.field):
        raise DomainError(f"field must be finite, got {cfg.field}")
    return cfg


@dataclass(frozen=True)
class QubitState:
    """Pure qubit cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.

    ``phi`` is stored reduced to [0, 2*pi).
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise DomainError("Bloch angles must be finite")
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        phi = math.fmod(self.phi, TWO_PI) % TWO_PI
        object.__setattr__(self, "phi", 0.0 if phi >= TWO_PI else phi)

    @property
    def alpha(self) -> complex:
        return complex(math.cos(self.theta / 2.0), 0.0)

    @property
    def beta(self) -> complex:
        r = math.sin(self.theta / 2.0)
        return complex(r * math.cos(self.phi), r * math.sin(self.phi))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


def make_qubit(theta: float, phi: float = 0.0) -> QubitState:
    return QubitState(float(theta), float(phi))
