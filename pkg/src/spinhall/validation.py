"""Self-checks of the gauge, curvature and Rytov machinery (``spinhall validate``)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import functionals as fn
from . import gauge
from .core import PAULI, SIGMA_0, SIGMA_3, SphericalMomentum

SEED = 20240611


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    bound: str
    passed: bool


def random_directions(rng, n, theta_band=0.0):
    """``n`` random spherical momenta with |p| in [0.5, 2]."""
    if theta_band:
        theta = rng.uniform(theta_band, math.pi - theta_band, n)
    else:
        theta = np.arccos(rng.uniform(-1, 1, n))
    phi = rng.uniform(-math.pi, math.pi, n)
    p = rng.uniform(0.5, 2.0, n)
    return [SphericalMomentum(*v) for v in zip(p, theta, phi)]


def check_pauli_algebra():
    eps = gauge._LEVI_CIVITA
    worst = 0.0
    for i in range(3):
        for j in range(3):
            rhs = (i == j) * SIGMA_0 + 1j * sum(eps[i, j, k] * PAULI[k] for k in range(3))
            worst = max(worst, np.abs(PAULI[i] @ PAULI[j] - rhs).max())
    return Check("pauli algebra", worst, "<= 1e-15", worst <= 1e-15)


def check_unitarity(rng, n=1000):
    worst = max(np.abs(u @ u.conj().T - SIGMA_0).max()
                for u in (gauge.unitary(s) for s in random_directions(rng, n)))
    return Check("unitarity", worst, "<= 1e-14", worst <= 1e-14)


def check_diagonalization(rng, n=1000):
    worst = 0.0
    for s in random_directions(rng, n):
        d = gauge.diagonalize(s.p * s.unit)
        worst = max(worst, np.abs(d - s.p * SIGMA_3).max())
    return Check("diagonalization", worst, "<= 1e-12", worst <= 1e-12)


def flatness_residual(s, step):
    return max(np.abs(f).max() for f in gauge.field_strength(s, step))


def check_flatness(rng, n=100, step=1e-4):
    worst = max(flatness_residual(s, step) for s in random_directions(rng, n, 0.2))
    tol = gauge.flatness_tolerance(step)
    return Check("flatness F_ij = 0", worst, f"<= {tol:g}", worst <= tol)


def check_flatness_order(rng, n=10, step=2e-2):
    ratios = [flatness_residual(s, step) / flatness_residual(s, step / 2)
              for s in random_directions(rng, n, 0.2)]
    lo, hi = min(ratios), max(ratios)
    ok = 3.5 <= lo and hi <= 4.5
    return Check("flatness convergence ratio", lo if abs(lo - 4) > abs(hi - 4) else hi,
                 "in [3.5, 4.5]", ok)


def check_monopole_curl(rng, n=100):
    worst = 0.0
    for s in random_directions(rng, n, 0.2):
        p = s.p * s.unit
        for lam in (1, -1):
            exact = gauge.berry_curvature(p, lam)
            err = np.linalg.norm(gauge.abelian_curl(p, lam) - exact) / np.linalg.norm(exact)
            worst = max(worst, err)
    return Check("monopole curl", worst, "<= 1e-6 rel", worst <= 1e-6)


def check_monopole_flux(radii=(0.5, 1.0, 2.0)):
    worst = 0.0
    for r in radii:
        for lam in (1, -1):
            flux = gauge.monopole_flux(r, lam)
            worst = max(worst, abs(flux / (-4 * math.pi * lam) - 1))
    return Check("monopole flux -4 pi lambda", worst, "<= 1e-6 rel", worst <= 1e-6)


def check_noncommutativity(rng, n=20):
    worst = 0.0
    for s in random_directions(rng, n, 0.2):
        p = s.p * s.unit
        for lam in (1, -1):
            t = gauge.connection_derivative_tensor(p, lam)
            ref = -gauge.noncommutativity(p, lam)
            worst = max(worst, np.abs(t - ref).max() / np.abs(ref).max())
    return Check("position commutator tensor", worst, "<= 1e-6 rel", worst <= 1e-6)


def check_rytov(n_samples=4096):
    worst_gamma = worst_inv = 0.0
    for theta0 in (math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3):
        path = fn.kinematic_path(fn.ConstantColatitudeCircle(theta0), n_samples)
        bp = fn.berry_phase(path)
        back = fn.berry_phase(path.reversed())
        exact = 2 * math.pi * math.cos(theta0)
        worst_gamma = max(worst_gamma, abs(bp.gamma - exact), abs(back.gamma + exact))
        worst_inv = max(worst_inv, abs(bp.residual), abs(back.residual))
    return [Check("rytov loop 2 pi cos(theta0)", worst_gamma, "<= 1e-9", worst_gamma <= 1e-9),
            Check("rytov gauge invariant", worst_inv, "<= 1e-6", worst_inv <= 1e-6)]


def check_hall_loop(n_samples=10_000):
    worst = 0.0
    for theta0, p0 in ((math.pi / 2, 1.0), (math.pi / 3, 2.0), (2 * math.pi / 3, 0.5)):
        path = fn.kinematic_path(fn.ConstantColatitudeCircle(theta0, p0), n_samples)
        exact = np.array([0.0, 0.0, 2 * math.pi * math.sin(theta0) ** 2 / p0])
        for lam in (1, -1):
            got = fn.hall_shift(path, lam)
            worst = max(worst, np.linalg.norm(got - lam * exact) / np.linalg.norm(exact))
    return Check("hall shift loop", worst, "<= 1e-8 rel", worst <= 1e-8)


def run_all(seed: int = SEED) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = [
        check_pauli_algebra(),
        check_unitarity(rng),
        check_diagonalization(rng),
        check_flatness(rng),
        check_flatness_order(rng),
        check_monopole_curl(rng),
        check_monopole_flux(),
        check_noncommutativity(rng),
    ]
    checks += check_rytov()
    checks.append(check_hall_loop())
    return checks
