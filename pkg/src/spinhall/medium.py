"""Isotropic, static refractive-index profiles with analytic gradients."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import vec3
from .errors import MediumDomainError


def _check(n: float, x) -> float:
    if not n > 0.0:
        raise MediumDomainError(f"refractive index {n:.6g} <= 0 at x={list(x)}")
    return n


@dataclass(frozen=True)
class Homogeneous:
    n0: float

    def __post_init__(self):
        if not self.n0 > 0:
            raise ValueError("n0 must be positive")

    def index_and_gradient(self, x0, x1, x2):
        return _check(self.n0, (x0, x1, x2)), 0.0, 0.0, 0.0


@dataclass(frozen=True)
class LinearGradient:
    """``n(x) = n0 + g.x``."""

    n0: float
    g: tuple

    def __post_init__(self):
        if not self.n0 > 0:
            raise ValueError("n0 must be positive")
        object.__setattr__(self, "g", tuple(float(c) for c in vec3(self.g)))

    def index_and_gradient(self, x0, x1, x2):
        gx, gy, gz = self.g
        n = self.n0 + gx * x0 + gy * x1 + gz * x2
        return _check(n, (x0, x1, x2)), gx, gy, gz


@dataclass(frozen=True)
class ParabolicGrin:
    """``n(x) = n0 - beta/2 |x_perp|^2`` about a unit ``axis`` through the origin."""

    n0: float
    beta: float
    axis: tuple = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if not self.n0 > 0:
            raise ValueError("n0 must be positive")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")
        a = vec3(self.axis)
        a = a / np.linalg.norm(a)
        object.__setattr__(self, "axis", tuple(float(c) for c in a))

    def index_and_gradient(self, x0, x1, x2):
        a0, a1, a2 = self.axis
        along = a0 * x0 + a1 * x1 + a2 * x2
        q0, q1, q2 = x0 - along * a0, x1 - along * a1, x2 - along * a2
        n = self.n0 - 0.5 * self.beta * (q0 * q0 + q1 * q1 + q2 * q2)
        b = self.beta
        return _check(n, (x0, x1, x2)), -b * q0, -b * q1, -b * q2


MediumProfile = Homogeneous | LinearGradient | ParabolicGrin


def refractive_index(m: MediumProfile, x) -> float:
    """Index at ``x``; raises :class:`MediumDomainError` where it is not positive."""
    x = vec3(x)
    return m.index_and_gradient(*x)[0]


def grad_n(m: MediumProfile, x) -> np.ndarray:
    x = vec3(x)
    n, *g = m.index_and_gradient(*x)
    return np.array(g)


def adiabaticity(m: MediumProfile, x, hbar: float) -> float:
    """Dimensionless ``|grad n| hbar / n^2``; small values mean slow variation."""
    n, gx, gy, gz = m.index_and_gradient(*vec3(x))
    return math.sqrt(gx * gx + gy * gy + gz * gz) * hbar / (n * n)
