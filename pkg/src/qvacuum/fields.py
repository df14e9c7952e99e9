"""Plane waves, four-vectors and the EM field tensor in reciprocal space.

Metric signature (+, -, -, -). Contravariant four-vectors carry
k^mu = (omega/c, k) and A^mu = (phi/c, A). Fields are complex phasors of a
single Fourier mode exp(i(k.x - omega t)), so grad -> i k and d/dt -> -i omega.
Products such as E^2 are bilinear (no complex conjugation), matching the
tensor contraction F_{mu nu} F^{mu nu}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import SI, PhysicalConstants, Wavevector
from .polarization import delta_pi_exact, eps0_from_delta_pi
from .registry import ParticleRegistry

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
TRANSVERSE_TOL = 1e-12


@dataclass(frozen=True)
class FourVector:
    t: complex
    x: complex
    y: complex
    z: complex

    @classmethod
    def from_array(cls, arr) -> FourVector:
        a = np.asarray(arr)
        return cls(*(a[i].item() for i in range(4)))

    @classmethod
    def from_time_space(cls, t, space) -> FourVector:
        return cls(t, *np.asarray(space).tolist())

    def __array__(self, dtype=None, copy=None):
        return np.array([self.t, self.x, self.y, self.z], dtype=dtype or complex)

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=complex)

    def lower(self) -> np.ndarray:
        return METRIC @ np.asarray(self)

    def dot(self, other: FourVector) -> complex:
        """a.b = a^0 b^0 - a.b (bilinear)."""
        return complex(np.asarray(self) @ METRIC @ np.asarray(other))

    def __add__(self, other: FourVector) -> FourVector:
        return FourVector.from_array(np.asarray(self) + np.asarray(other))

    def __mul__(self, s) -> FourVector:
        return FourVector.from_array(np.asarray(self) * s)

    __rmul__ = __mul__


@dataclass(frozen=True)
class FieldTensor:
    """Contravariant F^{mu nu} = d^mu A^nu - d^nu A^mu."""

    components: np.ndarray

    @classmethod
    def from_fields(cls, E, B, consts: PhysicalConstants = SI) -> FieldTensor:
        E = np.asarray(E, dtype=complex)
        B = np.asarray(B, dtype=complex)
        c = consts.c
        F = np.zeros((4, 4), dtype=complex)
        F[0, 1:] = -E / c
        F[1:, 0] = E / c
        F[1, 2], F[2, 1] = -B[2], B[2]
        F[1, 3], F[3, 1] = B[1], -B[1]
        F[2, 3], F[3, 2] = -B[0], B[0]
        return cls(F)

    @classmethod
    def from_potential(cls, k: FourVector, A: FourVector) -> FieldTensor:
        """F^{nu mu} = -i k^nu A^mu + i k^mu A^nu for A(x) = A0 exp(-i k.x)."""
        kv, av = np.asarray(k), np.asarray(A)
        return cls(-1j * np.outer(kv, av) + 1j * np.outer(av, kv))

    def lowered(self) -> np.ndarray:
        return METRIC @ self.components @ METRIC

    def electric(self, consts: PhysicalConstants = SI) -> np.ndarray:
        return -consts.c * self.components[0, 1:]

    def magnetic(self) -> np.ndarray:
        F = self.components
        return np.array([-F[2, 3], F[1, 3], -F[1, 2]])

    def contraction(self) -> complex:
        """F_{mu nu} F^{mu nu}."""
        return complex(np.sum(self.lowered() * self.components))


def em_lagrangian_tensor(F: FieldTensor, consts: PhysicalConstants = SI) -> complex:
    """-F_{nu mu} F^{nu mu} / (2 mu0)."""
    return -F.contraction() / (2.0 * consts.mu0)


def em_lagrangian_fields(E, B, consts: PhysicalConstants = SI) -> complex:
    """eps0 E^2 - B^2 / mu0."""
    E = np.asarray(E, dtype=complex)
    B = np.asarray(B, dtype=complex)
    return complex(consts.eps0 * (E @ E) - (B @ B) / consts.mu0)


@dataclass(frozen=True)
class PlaneWaveField:
    k_vec: np.ndarray  # 1/m
    omega: float  # rad/s
    E0: np.ndarray  # V/m
    B0: np.ndarray  # T
    D0: np.ndarray  # C/m^2
    H0: np.ndarray  # A/m
    eps0_k2: float

    def four_wavevector(self, consts: PhysicalConstants = SI) -> FourVector:
        return FourVector.from_time_space(self.omega / consts.c, self.k_vec)

    def invariant_k2(self, consts: PhysicalConstants = SI) -> float:
        return (self.omega / consts.c) ** 2 - float(self.k_vec @ self.k_vec)


def make_plane_wave(
    k_vec,
    E0,
    consts: PhysicalConstants = SI,
    *,
    omega: float | None = None,
    registry: ParticleRegistry | None = None,
) -> PlaneWaveField:
    """Plane wave with B0 = k x E0 / omega and D0, H0 from the running permittivity.

    ``omega`` defaults to the on-shell |k| c. Passing another value builds a
    detuned (off-shell) wave for negative tests; its eps0(k^2) then needs a
    ``registry`` and falls back to eps0 without one.
    """
    k = np.asarray(k_vec, dtype=float)
    E = np.asarray(E0, dtype=complex)
    kmag = float(np.linalg.norm(k))
    if not kmag > 0.0:
        raise ValueError("k_vec must be non-zero")
    emag = float(np.linalg.norm(E))
    if emag > 0.0:
        cosang = abs(k @ E) / (kmag * emag)
        if cosang > TRANSVERSE_TOL:
            raise ValueError(f"E0 is not transverse to k: |k.E0|/(|k||E0|) = {cosang:.3e}")
    w = kmag * consts.c if omega is None else float(omega)
    if not w > 0.0:
        raise ValueError("omega must be positive")
    k2 = (w / consts.c) ** 2 - kmag**2
    if omega is None or registry is None:
        eps = consts.eps0
    else:
        kv = Wavevector.from_si(k2, consts)
        eps = eps0_from_delta_pi(delta_pi_exact(kv, registry, consts), consts)
    B = np.cross(k, E) / w
    return PlaneWaveField(k, w, E, B, eps * E, consts.c**2 * eps * B, eps)


@dataclass(frozen=True)
class MaxwellResidual:
    gauss: float  # |i k.D - rho| / |omega D|
    ampere: float  # |i k x H + i omega D - j| / |omega D|
    scale: float  # |omega D|

    def passed(self, tol: float = 1e-12) -> bool:
        return self.gauss <= tol and self.ampere <= tol


def maxwell_residual(w: PlaneWaveField, rho: complex = 0.0, j=None) -> MaxwellResidual:
    """Source-free check of i k.D = rho and i k x H + i omega D = j (SI, e^{i(k.x - wt)})."""
    j = np.zeros(3, dtype=complex) if j is None else np.asarray(j, dtype=complex)
    scale = float(np.linalg.norm(w.omega * w.D0))
    gauss = abs(1j * (w.k_vec @ w.D0) - rho)
    ampere = float(np.linalg.norm(1j * np.cross(w.k_vec, w.H0) + 1j * w.omega * w.D0 - j))
    if scale == 0.0:
        return MaxwellResidual(float(gauss), ampere, 0.0)
    return MaxwellResidual(float(gauss) / scale, ampere / scale, scale)


def contract_kF(k: FourVector, F: FieldTensor) -> FourVector:
    """-i F_{mu nu} k^nu: the column vector of the A2 matrix product."""
    return FourVector.from_array(-1j * (F.lowered() @ np.asarray(k)))


def contract_kF_components(k: FourVector, E, B, consts: PhysicalConstants = SI) -> FourVector:
    """(-i k.E/c, i omega E/c^2 + i k x B), assembled from three-vectors."""
    E = np.asarray(E, dtype=complex)
    B = np.asarray(B, dtype=complex)
    c = consts.c
    omega = k.t * c
    kv = k.spatial
    return FourVector.from_time_space(-1j * (kv @ E) / c, 1j * omega * E / c**2 + 1j * np.cross(kv, B))


def fermion_current(k: FourVector, A: FourVector, pi_value: complex, consts: PhysicalConstants = SI) -> FourVector:
    """Induced current j^mu = -Pi (k^2 A^mu - k^mu (k.A)) / mu0, in A/m^2."""
    kv, av = np.asarray(k), np.asarray(A)
    k2 = k.dot(k)
    ka = k.dot(A)
    return FourVector.from_array(-pi_value * (k2 * av - kv * ka) / consts.mu0)


def fields_from_potential(k: FourVector, A: FourVector, consts: PhysicalConstants = SI):
    """E = i omega A - i k phi, B = i k x A for A^mu = (phi/c, A)."""
    c = consts.c
    omega = k.t * c
    phi = A.t * c
    E = 1j * omega * A.spatial - 1j * k.spatial * phi
    B = 1j * np.cross(k.spatial, A.spatial)
    return E, B


def lagrangian_identity_check(
    k: FourVector, A: FourVector, pi_value: complex, consts: PhysicalConstants = SI
) -> tuple[complex, complex]:
    """(interaction term, Pi-weighted EM term) for an induced current.

    The first is -j.A with j from ``fermion_current``; the second is
    Pi (eps0 E^2 - B^2/mu0) with E, B from F = -i k A + i A k. They agree,
    which is what lets the two terms merge into one running permittivity.
    """
    j = fermion_current(k, A, pi_value, consts)
    interaction = -j.dot(A)
    F = FieldTensor.from_potential(k, A)
    em = pi_value * em_lagrangian_tensor(F, consts)
    return interaction, em


def boost(k: FourVector, E, B, beta, consts: PhysicalConstants = SI):
    """Lorentz boost with velocity beta*c (3-vector) applied to k^mu, E and B."""
    beta = np.asarray(beta, dtype=float)
    b2 = float(beta @ beta)
    if not 0.0 <= b2 < 1.0:
        raise ValueError("|beta| must be < 1")
    c = consts.c
    E = np.asarray(E, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if b2 == 0.0:
        return k, E, B
    gamma = 1.0 / np.sqrt(1.0 - b2)
    n = beta / np.sqrt(b2)
    v = beta * c

    k0, kv = k.t, k.spatial
    k0p = gamma * (k0 - beta @ kv)
    kvp = kv + ((gamma - 1.0) * (kv @ n) - gamma * k0 * np.sqrt(b2)) * n

    E_par = (E @ n) * n
    B_par = (B @ n) * n
    Ep = E_par + gamma * (E - E_par + np.cross(v, B))
    Bp = B_par + gamma * (B - B_par - np.cross(v, E) / c**2)
    return FourVector.from_time_space(k0p, kvp), Ep, Bp
