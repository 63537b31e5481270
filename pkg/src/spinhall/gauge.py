"""Momentum-space gauge structure of the helicity basis.

The diagonalizing unitary is ``U = exp(-i phi s3/2) exp(-i theta s2/2)``,
so that ``U^dag (s.p) U = |p| s3``.  It induces the pure-gauge matrix
connection ``A = i U^dag grad_p U``.  Keeping only its diagonal (adiabatic)
part leaves an Abelian connection whose curl is a momentum-space monopole.

Connection components are physical (orthonormal-frame) components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (SIGMA_1, SIGMA_2, SIGMA_3, Helicity, SphericalMomentum,
                   pauli_dot, to_spherical, vec3)
from .errors import DomainError, GaugeSingularityError

POLE_GUARD = 1e-3

_LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _LEVI_CIVITA[_i, _j, _k] = 1.0
    _LEVI_CIVITA[_j, _i, _k] = -1.0


@dataclass(frozen=True)
class GaugeConnection:
    """Spherical components of the matrix connection ``i U^dag grad_p U``."""

    a_p: np.ndarray
    a_theta: np.ndarray
    a_phi: np.ndarray

    def cartesian(self, s: SphericalMomentum) -> tuple[np.ndarray, ...]:
        """Cartesian components ``(A_x, A_y, A_z)`` at the point ``s``."""
        frame = (s.unit, s.e_theta, s.e_phi)
        comps = (self.a_p, self.a_theta, self.a_phi)
        return tuple(sum(e[i] * a for e, a in zip(frame, comps))
                     for i in range(3))


def check_pole_guard(s: SphericalMomentum, guard: float = POLE_GUARD) -> None:
    if s.theta < guard or s.theta > math.pi - guard:
        raise GaugeSingularityError(
            f"theta={s.theta:.3e} is within {guard:g} of a pole; "
            "the cot(theta) gauge is singular there")


def unitary(s: SphericalMomentum) -> np.ndarray:
    """The 2x2 unitary that rotates the helicity axis onto ``p``."""
    c, sn = math.cos(s.theta / 2), math.sin(s.theta / 2)
    em = complex(math.cos(s.phi / 2), -math.sin(s.phi / 2))
    ep = em.conjugate()
    return np.array([[em * c, -em * sn], [ep * sn, ep * c]])


def diagonalize(p) -> np.ndarray:
    """``U^dag (s.p) U``; equals ``|p| s3`` up to rounding."""
    p = vec3(p)
    s = to_spherical(p)
    u = unitary(s)
    return u.conj().T @ pauli_dot(p) @ u


def connection_nonabelian(s: SphericalMomentum, step: float = 1e-4) -> GaugeConnection:
    """Matrix connection from central differences of ``U`` with angular ``step``."""
    check_pole_guard(s)
    if not step > 0:
        raise ValueError("step must be positive")
    u_dag = unitary(s).conj().T
    d_theta = (unitary(SphericalMomentum(s.p, s.theta + step, s.phi))
               - unitary(SphericalMomentum(s.p, s.theta - step, s.phi))) / (2 * step)
    d_phi = (unitary(SphericalMomentum(s.p, s.theta, s.phi + step))
             - unitary(SphericalMomentum(s.p, s.theta, s.phi - step))) / (2 * step)
    return GaugeConnection(
        a_p=np.zeros((2, 2), dtype=complex),
        a_theta=1j * u_dag @ d_theta / s.p,
        a_phi=1j * u_dag @ d_phi / (s.p * math.sin(s.theta)),
    )


def connection_analytic(s: SphericalMomentum) -> GaugeConnection:
    """Closed form of the matrix connection for the unitary above.

    ``A_theta = s2/(2p)`` and ``A_phi = (cot(theta) s3 - s1)/(2p)``.
    """
    check_pole_guard(s)
    return GaugeConnection(
        a_p=np.zeros((2, 2), dtype=complex),
        a_theta=SIGMA_2 / (2 * s.p),
        a_phi=(SIGMA_3 / math.tan(s.theta) - SIGMA_1) / (2 * s.p),
    )


def _cartesian_connection(p: np.ndarray, step: float) -> tuple[np.ndarray, ...]:
    s = to_spherical(p)
    return connection_nonabelian(s, step).cartesian(s)


def cartesian_field_strength(p, step: float = 1e-4, commutator_sign: float = -1.0):
    """Cartesian ``F_ij = d_i A_j - d_j A_i + commutator_sign * i [A_i, A_j]``.

    Returns a ``(3, 3, 2, 2)`` array.  ``commutator_sign = -1`` is the sign for
    which ``A = i U^dag grad U`` is flat.
    """
    p = vec3(p)
    # Cartesian step scaled by the distance to the singular axis.
    h = step * math.hypot(p[0], p[1])
    a0 = _cartesian_connection(p, step)
    # grad[i][j] = d A_j / d p_i
    grad = []
    for i in range(3):
        dp = np.zeros(3)
        dp[i] = h
        ap = _cartesian_connection(p + dp, step)
        am = _cartesian_connection(p - dp, step)
        grad.append([(ap[j] - am[j]) / (2 * h) for j in range(3)])
    f = np.zeros((3, 3, 2, 2), dtype=complex)
    for i in range(3):
        for j in range(3):
            comm = a0[i] @ a0[j] - a0[j] @ a0[i]
            f[i, j] = grad[i][j] - grad[j][i] + commutator_sign * 1j * comm
    return f


def field_strength(s: SphericalMomentum, step: float = 1e-4):
    """Field strength of the matrix connection in the spherical frame.

    Returns ``(F_p_theta, F_theta_phi, F_p_phi)``.  Derivatives are taken by
    finite differences of the Cartesian components, independently of
    :func:`connection_analytic`.  All entries vanish for a pure gauge.
    """
    check_pole_guard(s)
    f = cartesian_field_strength(s.p * s.unit, step)
    e_p, e_t, e_f = s.unit, s.e_theta, s.e_phi

    def proj(a, b):
        return np.einsum("i,j,ijkl->kl", a, b, f)

    return proj(e_p, e_t), proj(e_t, e_f), proj(e_p, e_f)


def flatness_tolerance(step: float) -> float:
    return max(1e-6, 10 * step ** 2)


def connection_abelian(s: SphericalMomentum, lam: int) -> np.ndarray:
    """Berry connection of helicity ``lam``: ``lam cot(theta)/p e_phi``."""
    check_pole_guard(s)
    lam = Helicity(lam)
    return int(lam) / (math.tan(s.theta) * s.p) * s.e_phi


def berry_curvature(p, lam: int) -> np.ndarray:
    """Monopole field ``-lam p/|p|^3``."""
    p = vec3(p)
    lam = Helicity(lam)
    r = np.linalg.norm(p)
    if r == 0.0:
        raise DomainError("berry curvature is undefined at p = 0")
    return -int(lam) * p / r ** 3


def connection_derivative_tensor(p, lam: int, step: float = 1e-4) -> np.ndarray:
    """``d_i A_j - d_j A_i`` of the Abelian connection by central differences."""
    p = vec3(p)
    h = step * math.hypot(p[0], p[1])
    jac = np.zeros((3, 3))
    for i in range(3):
        dp = np.zeros(3)
        dp[i] = h
        jac[i] = (connection_abelian(to_spherical(p + dp), lam)
                  - connection_abelian(to_spherical(p - dp), lam)) / (2 * h)
    return jac - jac.T


def abelian_curl(p, lam: int, step: float = 1e-4) -> np.ndarray:
    """Numerical curl of :func:`connection_abelian`."""
    t = connection_derivative_tensor(p, lam, step)
    return np.array([t[1, 2], t[2, 0], t[0, 1]])


def noncommutativity(p, lam: int) -> np.ndarray:
    """Antisymmetric tensor ``lam eps_ijk p_k/|p|^3``.

    This is ``-eps_ijk F_k`` with ``F`` the Berry curvature, i.e. the
    coefficient of ``i hbar^2`` in the position commutator ``[r_i, r_j]``.
    """
    return -np.einsum("ijk,k->ij", _LEVI_CIVITA, berry_curvature(p, lam))


def monopole_flux(radius: float, lam: int, n_theta: int = 64, n_phi: int = 128,
                  field=berry_curvature) -> float:
    """Outward flux of ``field(p, lam)`` through the sphere ``|p| = radius``.

    Gauss-Legendre nodes in theta, uniform periodic nodes in phi.
    """
    x, w = np.polynomial.legendre.leggauss(n_theta)
    thetas = 0.5 * math.pi * (x + 1)
    w_theta = 0.5 * math.pi * w
    phis = np.arange(n_phi) * (2 * math.pi / n_phi)
    total = 0.0
    for th, wt in zip(thetas, w_theta):
        row = 0.0
        for ph in phis:
            s = SphericalMomentum(radius, th, ph)
            row += field(radius * s.unit, lam) @ s.unit
        total += wt * math.sin(th) * row
    return total * radius ** 2 * (2 * math.pi / n_phi)


def physical_position(x, p, lam: int, hbar: float) -> np.ndarray:
    """Observable position ``x + hbar * (Berry connection)``."""
    return vec3(x) + hbar * connection_abelian(to_spherical(p), lam)
