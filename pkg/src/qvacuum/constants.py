"""Physical constants and the few unit conversions the rest of the package needs.

All internal formulas work with rest energies in GeV and invariant k^2 in
GeV^2; SI enters only here and at the potential/field boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

# CODATA 2018 exact / recommended values.
HBAR = 1.054571817e-34  # J s
C_LIGHT = 299792458.0  # m / s
E_CHARGE = 1.602176634e-19  # C
EPS0 = 8.8541878128e-12  # F / m
ELECTRON_MASS_GEV = 0.51099895000e-3  # m_e c^2

EULER_GAMMA = 0.5772156649015329


def _fine_structure(e: float, eps0: float, hbar: float, c: float) -> float:
    return e * e / (4.0 * math.pi * eps0 * hbar * c)


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    c: float
    e: float
    eps0: float
    electron_mass_gev: float = ELECTRON_MASS_GEV
    alpha: float = field(init=False)
    hbar_c_gev_fm: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _fine_structure(self.e, self.eps0, self.hbar, self.c))
        # J m -> GeV fm
        object.__setattr__(self, "hbar_c_gev_fm", self.hbar * self.c / (self.e * 1e9) * 1e15)

    @property
    def mu0(self) -> float:
        return 1.0 / (self.eps0 * self.c * self.c)

    @property
    def hbar_c_gev_m(self) -> float:
        return self.hbar_c_gev_fm * 1e-15

    @property
    def reduced_compton_wavelength(self) -> float:
        """hbar / (m_e c) in metres."""
        return self.hbar_c_gev_m / self.electron_mass_gev


def make_si_constants() -> PhysicalConstants:
    return PhysicalConstants(hbar=HBAR, c=C_LIGHT, e=E_CHARGE, eps0=EPS0)


SI = make_si_constants()


class Regime(str, Enum):
    SPACELIKE = "spacelike"
    ON_SHELL = "on_shell"
    TIMELIKE = "timelike"


@dataclass(frozen=True)
class Wavevector:
    """Lorentz invariant k^2 = omega^2/c^2 - |k|^2, stored as (hbar c)^2 k^2 in GeV^2."""

    k2_gev2: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.k2_gev2):
            raise ValueError(f"k2_gev2 must be finite, got {self.k2_gev2!r}")

    @property
    def regime(self) -> Regime:
        if self.k2_gev2 < 0.0:
            return Regime.SPACELIKE
        if self.k2_gev2 > 0.0:
            return Regime.TIMELIKE
        return Regime.ON_SHELL

    @property
    def q_gev(self) -> float:
        """sqrt(|k^2|) in GeV."""
        return math.sqrt(abs(self.k2_gev2))

    @classmethod
    def from_si(cls, k2_per_m2: float, consts: PhysicalConstants = SI) -> Wavevector:
        return cls(k2_per_m2 * consts.hbar_c_gev_m**2)

    def to_si(self, consts: PhysicalConstants = SI) -> float:
        return self.k2_gev2 / consts.hbar_c_gev_m**2


def k2_from_energy(q_gev: float, regime: Regime | str) -> Wavevector:
    """Wavevector with |k^2| = Q^2 and the sign fixed by ``regime``."""
    regime = Regime(regime)
    if not q_gev >= 0.0:
        raise ValueError(f"energy scale must be non-negative, got {q_gev!r}")
    if regime is Regime.ON_SHELL:
        return Wavevector(0.0)
    q2 = q_gev * q_gev
    return Wavevector(-q2 if regime is Regime.SPACELIKE else q2)
