"""Value types and exact 2x2 / 3-vector algebra.

Vectors are plain ``numpy`` arrays of shape ``(3,)`` and 2x2 matrices are
complex arrays of shape ``(2, 2)``.  Units: c = 1, reference frequency = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import DomainError

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_1, SIGMA_2, SIGMA_3)


class Helicity(IntEnum):
    """Photon helicity; only the two circular polarizations exist."""

    PLUS = 1
    MINUS = -1

    @property
    def other(self) -> "Helicity":
        return Helicity(-int(self))


def vec3(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    return a


def _frozen(v) -> np.ndarray:
    a = np.array(v, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SphericalMomentum:
    """Momentum in spherical form: magnitude, zenith angle, azimuth."""

    p: float
    theta: float
    phi: float

    @property
    def unit(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi),
                         math.cos(self.theta)])

    @property
    def e_theta(self) -> np.ndarray:
        ct = math.cos(self.theta)
        return np.array([ct * math.cos(self.phi), ct * math.sin(self.phi),
                         -math.sin(self.theta)])

    @property
    def e_phi(self) -> np.ndarray:
        return np.array([-math.sin(self.phi), math.cos(self.phi), 0.0])


@dataclass(frozen=True)
class RayState:
    """Phase-space point: canonical position, momentum, helicity, time."""

    x: np.ndarray
    p: np.ndarray
    lam: Helicity = Helicity.PLUS
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "x", _frozen(vec3(self.x)))
        object.__setattr__(self, "p", _frozen(vec3(self.p)))
        object.__setattr__(self, "lam", Helicity(self.lam))
        if not np.linalg.norm(self.p) > 0:
            raise DomainError("ray momentum must be nonzero")


def pauli_dot(p) -> np.ndarray:
    """Return ``p_x s1 + p_y s2 + p_z s3``."""
    px, py, pz = vec3(p)
    return np.array([[pz, px - 1j * py], [px + 1j * py, -pz]], dtype=complex)


def to_spherical(p) -> SphericalMomentum:
    """Cartesian momentum to ``(p, theta, phi)``; phi = 0 on the poles."""
    x, y, z = vec3(p)
    rho = math.hypot(x, y)
    mag = math.hypot(rho, z)
    if mag == 0.0:
        raise DomainError("zero momentum has no direction")
    theta = math.atan2(rho, z)
    if rho == 0.0:
        return SphericalMomentum(mag, theta, 0.0)
    phi = math.atan2(y, x)
    if phi >= math.pi:
        phi -= 2 * math.pi
    return SphericalMomentum(mag, theta, phi)


def from_spherical(s: SphericalMomentum) -> np.ndarray:
    return s.p * s.unit
