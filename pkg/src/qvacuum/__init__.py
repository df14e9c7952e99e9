"""Dielectric model of the quantum vacuum: running permittivity, coupling and screening."""

__version__ = "0.1.0"

from .constants import SI, PhysicalConstants, Regime, Wavevector, k2_from_energy, make_si_constants
from .errors import ConvergenceError, LandauPoleError, SeriesDivergenceError, TruncationWarning
from .registry import ChargedSpecies, ParticleRegistry, RegistryError, effective_charge_sum, load_registry, preset

__all__ = [
    "SI",
    "ChargedSpecies",
    "ConvergenceError",
    "LandauPoleError",
    "ParticleRegistry",
    "PhysicalConstants",
    "Regime",
    "RegistryError",
    "SeriesDivergenceError",
    "TruncationWarning",
    "Wavevector",
    "effective_charge_sum",
    "k2_from_energy",
    "load_registry",
    "make_si_constants",
    "preset",
]
