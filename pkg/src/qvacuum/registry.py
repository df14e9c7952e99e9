"""Charged species whose virtual pairs polarize the vacuum.

Registry files are JSON documents::

    {
      "species": [
        {"name": "electron", "charge_over_e": -1, "mass_gev": 0.000511, "multiplicity": 1}
      ],
      "charge_sum_override": 9,      # optional
      "mean_log_mass_gev": 0.25      # optional
    }

A species may carry ``"kind": "boson"`` (e.g. W bosons). Bosons are accepted
but still enter through the fermion-loop kernel; the registry records a
warning for each.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

SPECIES_FIELDS = ("name", "charge_over_e", "mass_gev", "multiplicity")
_OPTIONAL_SPECIES_FIELDS = ("kind",)
_TOP_LEVEL_FIELDS = ("species", "charge_sum_override", "mean_log_mass_gev")
KINDS = ("fermion", "boson")


class RegistryError(ValueError):
    """Invalid registry document. ``location`` names the offending line or field."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        self.detail = message
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class ChargedSpecies:
    name: str
    charge_over_e: float
    mass_gev: float
    multiplicity: int = 1
    kind: str = "fermion"

    def __post_init__(self) -> None:
        if not self.name:
            raise RegistryError("species name must be non-empty")
        if not (isinstance(self.charge_over_e, (int, float)) and math.isfinite(self.charge_over_e)):
            raise RegistryError("charge_over_e must be a finite number", self.name)
        if self.charge_over_e == 0:
            raise RegistryError("charge_over_e must be non-zero (neutral species do not polarize)", self.name)
        if not (isinstance(self.mass_gev, (int, float)) and self.mass_gev > 0 and math.isfinite(self.mass_gev)):
            raise RegistryError(f"mass_gev must be a positive finite number, got {self.mass_gev!r}", self.name)
        if isinstance(self.multiplicity, bool) or not isinstance(self.multiplicity, int) or self.multiplicity < 1:
            raise RegistryError(f"multiplicity must be an integer >= 1, got {self.multiplicity!r}", self.name)
        if self.kind not in KINDS:
            raise RegistryError(f"kind must be one of {KINDS}, got {self.kind!r}", self.name)

    @property
    def charge_weight(self) -> float:
        """multiplicity * (q/e)^2"""
        return self.multiplicity * self.charge_over_e**2


@dataclass(frozen=True)
class ParticleRegistry:
    species: tuple[ChargedSpecies, ...] = ()
    charge_sum_override: float | None = None
    mean_log_mass_gev: float | None = None
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "species", tuple(self.species))
        seen: set[str] = set()
        for sp in self.species:
            if sp.name in seen:
                raise RegistryError(f"duplicate species name {sp.name!r}", sp.name)
            seen.add(sp.name)
        if self.charge_sum_override is not None and not (
            math.isfinite(self.charge_sum_override) and self.charge_sum_override > 0
        ):
            raise RegistryError("charge_sum_override must be positive", "charge_sum_override")
        if self.mean_log_mass_gev is not None and not (
            math.isfinite(self.mean_log_mass_gev) and self.mean_log_mass_gev > 0
        ):
            raise RegistryError("mean_log_mass_gev must be positive", "mean_log_mass_gev")
        if self.effective_charge_sum() <= 0:
            raise RegistryError("registry has no charged species and no charge_sum_override")
        if not self.species and self.mean_log_mass_gev is None:
            raise RegistryError("mean_log_mass_gev is required when the species list is empty", "mean_log_mass_gev")
        if not self.warnings:
            notes = tuple(
                f"{sp.name}: boson entry uses the fermion-loop kernel" for sp in self.species if sp.kind == "boson"
            )
            object.__setattr__(self, "warnings", notes)

    def effective_charge_sum(self) -> float:
        if self.charge_sum_override is not None:
            return float(self.charge_sum_override)
        return math.fsum(sp.charge_weight for sp in self.species)

    @property
    def mean_mass_gev(self) -> float:
        """m-bar c^2: the stored value, else exp of the charge-weighted mean of ln m_j."""
        if self.mean_log_mass_gev is not None:
            return float(self.mean_log_mass_gev)
        w = [sp.charge_weight for sp in self.species]
        logs = [sp.charge_weight * math.log(sp.mass_gev) for sp in self.species]
        return math.exp(math.fsum(logs) / math.fsum(w))

    @property
    def override_only(self) -> bool:
        return self.charge_sum_override is not None

    def loops(self) -> list[tuple[float, float]]:
        """(charge weight, mass in GeV) pairs that feed the one-loop kernel.

        With an override the whole charge sum sits at the mean mass.
        """
        if self.override_only:
            return [(self.effective_charge_sum(), self.mean_mass_gev)]
        return [(sp.charge_weight, sp.mass_gev) for sp in self.species]

    @property
    def max_mass_gev(self) -> float:
        return max(m for _, m in self.loops())

    def with_species(self, species: Iterable[ChargedSpecies]) -> ParticleRegistry:
        return ParticleRegistry(tuple(species), self.charge_sum_override, self.mean_log_mass_gev)

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"species": []}
        for sp in self.species:
            rec: dict[str, Any] = {
                "name": sp.name,
                "charge_over_e": sp.charge_over_e,
                "mass_gev": sp.mass_gev,
                "multiplicity": sp.multiplicity,
            }
            if sp.kind != "fermion":
                rec["kind"] = sp.kind
            doc["species"].append(rec)
        if self.charge_sum_override is not None:
            doc["charge_sum_override"] = self.charge_sum_override
        if self.mean_log_mass_gev is not None:
            doc["mean_log_mass_gev"] = self.mean_log_mass_gev
        return doc

    def digest(self) -> str:
        blob = json.dumps(self.to_document(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def effective_charge_sum(reg: ParticleRegistry) -> float:
    return reg.effective_charge_sum()


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RegistryError(f"expected a number, got {value!r}", where)
    return value


def registry_from_document(doc: Any) -> ParticleRegistry:
    if not isinstance(doc, dict):
        raise RegistryError("top level must be an object", "$")
    unknown = sorted(set(doc) - set(_TOP_LEVEL_FIELDS))
    if unknown:
        raise RegistryError(f"unknown field(s) {unknown}", "$")
    raw_species = doc.get("species", [])
    if not isinstance(raw_species, list):
        raise RegistryError("must be an array", "species")

    species = []
    for i, rec in enumerate(raw_species):
        where = f"species[{i}]"
        if not isinstance(rec, dict):
            raise RegistryError("must be an object", where)
        missing = [f for f in SPECIES_FIELDS if f not in rec]
        if missing:
            raise RegistryError(f"missing field(s) {missing}", where)
        extra = sorted(set(rec) - set(SPECIES_FIELDS) - set(_OPTIONAL_SPECIES_FIELDS))
        if extra:
            raise RegistryError(f"unknown field(s) {extra}", where)
        name = rec["name"]
        if not isinstance(name, str):
            raise RegistryError("must be a string", f"{where}.name")
        try:
            species.append(
                ChargedSpecies(
                    name=name,
                    charge_over_e=_number(rec["charge_over_e"], f"{where}.charge_over_e"),
                    mass_gev=_number(rec["mass_gev"], f"{where}.mass_gev"),
                    multiplicity=rec["multiplicity"],
                    kind=rec.get("kind", "fermion"),
                )
            )
        except RegistryError as exc:
            suffix = exc.location[len(where) :] if exc.location and exc.location.startswith(where) else ""
            raise RegistryError(exc.detail, f"{where} ({name}){suffix}") from None

    override = doc.get("charge_sum_override")
    if override is not None:
        override = _number(override, "charge_sum_override")
    mean = doc.get("mean_log_mass_gev")
    if mean is not None:
        mean = _number(mean, "mean_log_mass_gev")
    return ParticleRegistry(tuple(species), override, mean)


def load_registry(source: str | Path) -> ParticleRegistry:
    """Parse a registry from JSON text, or from a path to a JSON file."""
    if isinstance(source, Path):
        text = source.read_text()
    else:
        text = source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RegistryError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return registry_from_document(doc)


# Lepton and quark rest energies (GeV), PDG 2022 central values.
SM_FERMIONS = (
    ChargedSpecies("electron", -1.0, 0.51099895e-3, 1),
    ChargedSpecies("muon", -1.0, 0.1056583755, 1),
    ChargedSpecies("tau", -1.0, 1.77686, 1),
    ChargedSpecies("up", 2.0 / 3.0, 2.16e-3, 3),
    ChargedSpecies("charm", 2.0 / 3.0, 1.27, 3),
    ChargedSpecies("top", 2.0 / 3.0, 172.69, 3),
    ChargedSpecies("down", -1.0 / 3.0, 4.67e-3, 3),
    ChargedSpecies("strange", -1.0 / 3.0, 93.4e-3, 3),
    ChargedSpecies("bottom", -1.0 / 3.0, 4.18, 3),
)

PRESETS = ("sm_paper", "sm_fermions", "susy_doubled", "electron")


def preset(name: str) -> ParticleRegistry:
    if name == "sm_paper":
        return ParticleRegistry((), charge_sum_override=9.0, mean_log_mass_gev=0.25)
    if name == "susy_doubled":
        return ParticleRegistry((), charge_sum_override=2 * 9.0, mean_log_mass_gev=0.25)
    if name == "sm_fermions":
        return ParticleRegistry(SM_FERMIONS)
    if name == "electron":
        return ParticleRegistry((SM_FERMIONS[0],))
    raise RegistryError(f"unknown preset {name!r}; choose from {PRESETS}", "preset")
