"""Geometric functionals over sampled momentum paths.

* :func:`berry_phase` -- polarization-plane rotation ``int cos(theta) dphi``
* :func:`hall_shift` -- transverse ray shift ``lam int (p x dp)/|p|^3``
* :func:`solid_angle` -- signed area enclosed on the unit momentum sphere
* :func:`kinematic_path` -- prescribed contours (circles, loxodromes)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Helicity, vec3
from .errors import AntipodalPairError, DegeneratePathError, GaugeSingularityError
from .gauge import POLE_GUARD

CLOSURE_TOL = 1e-12


@dataclass(frozen=True)
class MomentumPath:
    """Ordered momentum samples; a closed path repeats its first sample last."""

    samples: np.ndarray
    closed: bool = False

    def __post_init__(self):
        a = np.array(self.samples, dtype=float)
        if a.ndim != 2 or a.shape[1] != 3:
            raise DegeneratePathError(f"samples must have shape (N, 3), got {a.shape}")
        if np.any(np.linalg.norm(a, axis=1) == 0.0):
            raise DegeneratePathError("momentum path contains a zero sample")
        if self.closed and len(a) and np.max(np.abs(a[0] - a[-1])) > CLOSURE_TOL:
            raise DegeneratePathError("closed path must end on its first sample")
        a.setflags(write=False)
        object.__setattr__(self, "samples", a)

    @classmethod
    def from_samples(cls, samples) -> "MomentumPath":
        """Build a path, marking it closed when the endpoints coincide."""
        a = np.asarray(samples, dtype=float)
        closed = len(a) > 2 and bool(np.max(np.abs(a[0] - a[-1])) <= CLOSURE_TOL)
        return cls(a, closed)

    def __len__(self):
        return len(self.samples)

    def reversed(self) -> "MomentumPath":
        return MomentumPath(self.samples[::-1], self.closed)

    def scaled(self, factor: float) -> "MomentumPath":
        return MomentumPath(self.samples * factor, self.closed)

    def rotated(self, rot: np.ndarray) -> "MomentumPath":
        return MomentumPath(self.samples @ np.asarray(rot).T, self.closed)


def _require(path: MomentumPath, n: int = 3) -> np.ndarray:
    if len(path) < n:
        raise DegeneratePathError(f"need at least {n} samples, got {len(path)}")
    return path.samples


def _angles(samples: np.ndarray, guard: float | None):
    rho = np.hypot(samples[:, 0], samples[:, 1])
    theta = np.arctan2(rho, samples[:, 2])
    if guard is not None:
        bad = (theta < guard) | (theta > math.pi - guard)
        if np.any(bad):
            i = int(np.argmax(bad))
            raise GaugeSingularityError(
                f"sample {i} has theta={theta[i]:.3e}, inside the pole guard {guard:g}")
    phi = np.unwrap(np.arctan2(samples[:, 1], samples[:, 0]))
    return theta, phi


def rytov_increments(samples: np.ndarray, guard: float | None = POLE_GUARD) -> np.ndarray:
    """Trapezoid-rule contributions of ``cos(theta) dphi`` per segment."""
    theta, phi = _angles(np.asarray(samples, dtype=float), guard)
    c = np.cos(theta)
    return 0.5 * (c[1:] + c[:-1]) * np.diff(phi)


@dataclass(frozen=True)
class BerryPhase:
    """Rotation angle along a path, with its gauge-invariant cross-check.

    ``gamma`` is the literal line integral in the cot(theta) gauge.  For open
    paths it depends on that convention (``gauge_dependent`` is set).  For
    closed paths ``invariant = 2 pi W - Omega`` must equal ``gamma`` modulo
    4 pi, with ``W`` the azimuthal winding number and ``Omega`` the solid angle.
    """

    gamma: float
    closed: bool
    winding: int | None = None
    solid_angle: float | None = None

    @property
    def gauge_dependent(self) -> bool:
        return not self.closed

    @property
    def invariant(self) -> float | None:
        if self.solid_angle is None:
            return None
        return 2 * math.pi * self.winding - self.solid_angle

    @property
    def residual(self) -> float | None:
        """``gamma - invariant`` reduced into ``(-2 pi, 2 pi]``."""
        if self.invariant is None:
            return None
        d = math.remainder(self.gamma - self.invariant, 4 * math.pi)
        return d

    def __float__(self):
        return self.gamma


def berry_phase(path: MomentumPath) -> BerryPhase:
    samples = _require(path)
    inc = rytov_increments(samples)
    gamma = float(inc.sum())
    if not path.closed:
        return BerryPhase(gamma, False)
    _, phi = _angles(samples, None)
    winding = int(round((phi[-1] - phi[0]) / (2 * math.pi)))
    return BerryPhase(gamma, True, winding, solid_angle(path))


def _lagrange(nodes, x):
    """Value and first-derivative weights of Lagrange interpolation at ``x``."""
    k = len(nodes)
    w = np.zeros(k)
    dw = np.zeros(k)
    for i in range(k):
        others = [nodes[j] for j in range(k) if j != i]
        denom = np.prod([nodes[i] - o for o in others])
        poly = np.polynomial.Polynomial.fromroots(others) / denom
        w[i] = poly(x)
        dw[i] = poly.deriv()(x)
    return w, dw


_INTERIOR = _lagrange([-1, 0, 1, 2], 0.5)


def _apply(w, dw, stencils):
    # Weights act on offsets from the first stencil point: both sets sum to
    # (1, 0), and a constant path then gives an exactly zero derivative.
    base = stencils[:, 0]
    rel = stencils - base[:, None]
    return base + np.einsum("k,ikj->ij", w, rel), np.einsum("k,ikj->ij", dw, rel)


def _midpoints(samples: np.ndarray, closed: bool):
    """Cubic reconstruction of ``p`` and ``dp/du`` at each segment midpoint.

    ``u`` is the sample index.  Closed paths wrap periodically; open paths
    use one-sided stencils at their ends.
    """
    n = len(samples)
    if closed:
        pts = samples[:-1]
        m = len(pts)
        idx = (np.arange(m)[:, None] + np.arange(-1, 3)) % m
        return _apply(*_INTERIOR, pts[idx])
    if n == 3:
        mids, ders = [], []
        for e in (0.5, 1.5):
            mid, der = _apply(*_lagrange([0, 1, 2], e), samples[None])
            mids.append(mid[0])
            ders.append(der[0])
        return np.array(mids), np.array(ders)
    seg = np.arange(n - 1)
    start = np.clip(seg - 1, 0, n - 4)
    idx = start[:, None] + np.arange(4)
    mid = np.empty((n - 1, 3))
    der = np.empty((n - 1, 3))
    for e in (0.5, 1.5, 2.5):
        rows = (seg - start + 0.5) == e
        if np.any(rows):
            mid[rows], der[rows] = _apply(*_lagrange([0, 1, 2, 3], e), samples[idx[rows]])
    return mid, der


def hall_increments(samples: np.ndarray, closed: bool = False) -> np.ndarray:
    """Per-segment midpoint-rule values of ``(p x dp)/|p|^3`` (no helicity factor)."""
    samples = np.asarray(samples, dtype=float)
    if len(samples) < 3:
        raise DegeneratePathError(f"need at least 3 samples, got {len(samples)}")
    mid, der = _midpoints(samples, closed)
    r = np.linalg.norm(mid, axis=1)
    return np.cross(mid, der) / r[:, None] ** 3


def hall_shift(path: MomentumPath, lam: int) -> np.ndarray:
    """Spin-Hall displacement ``lam int (p x dp)/|p|^3`` along ``path``."""
    lam = Helicity(lam)
    samples = _require(path)
    return int(lam) * hall_increments(samples, path.closed).sum(axis=0)


def _signed_excess(c, a, b):
    # Van Oosterom-Strackee; numerator from differences for small triangles.
    num = np.einsum("ij,ij->i", c, np.cross(a - c, b - c))
    den = 1.0 + np.einsum("ij,ij->i", c, a) + np.einsum("ij,ij->i", a, b) \
        + np.einsum("ij,ij->i", b, c)
    return 2.0 * np.arctan2(num, den)


def solid_angle(path: MomentumPath, closed: bool = True) -> float:
    """Signed solid angle enclosed by the directed polygon of path directions.

    The polygon is closed implicitly.  Triangle fans are taken from the
    direction of the loop's vector area (falling back to the first vertex
    when that vanishes), which keeps great-circle loops well defined.
    The result lies in ``(-2 pi, 2 pi]``, so reversing the loop negates it
    (except for the ambiguous value 2 pi itself).
    """
    if not closed:
        raise DegeneratePathError("solid angle needs a closed path")
    samples = _require(path)
    pts = samples[:-1] if path.closed else samples
    if len(pts) < 3:
        raise DegeneratePathError("closed polygon needs at least 3 distinct vertices")
    u = pts / np.linalg.norm(pts, axis=1)[:, None]
    nxt = np.roll(u, -1, axis=0)
    if np.any(1.0 + np.einsum("ij,ij->i", u, nxt) < 1e-12):
        raise AntipodalPairError("consecutive directions are antipodal")
    area_vec = np.cross(u, nxt).sum(axis=0)
    norm = np.linalg.norm(area_vec)
    apex = area_vec / norm if norm > 1e-12 else u[0]
    c = np.broadcast_to(apex, u.shape)
    # the fan sum is defined modulo 4 pi; report the representative in (-2 pi, 2 pi]
    omega = math.remainder(float(_signed_excess(c, u, nxt).sum()), 4 * math.pi)
    return 2 * math.pi if omega == -2 * math.pi else omega


@dataclass(frozen=True)
class ConstantColatitudeCircle:
    theta0: float
    p0: float = 1.0
    turns: float = 1.0


@dataclass(frozen=True)
class GreatCircle:
    axis: tuple = (0.0, 0.0, 1.0)
    p0: float = 1.0


@dataclass(frozen=True)
class Loxodrome:
    theta_start: float
    theta_end: float
    turns: float = 1.0
    p0: float = 1.0


def _check_theta(name, theta):
    if not POLE_GUARD <= theta <= math.pi - POLE_GUARD:
        raise ValueError(f"{name}={theta} outside the band [{POLE_GUARD}, pi - {POLE_GUARD}]")


def kinematic_path(kind, n_samples: int = 256) -> MomentumPath:
    """Uniformly parameterized samples of a prescribed momentum contour."""
    if not isinstance(kind, (ConstantColatitudeCircle, GreatCircle, Loxodrome)):
        raise TypeError(f"unknown path kind {type(kind).__name__}")
    if n_samples < 16:
        raise ValueError("n_samples must be at least 16")
    if not kind.p0 > 0:
        raise ValueError("p0 must be positive")
    s = np.linspace(0.0, 1.0, n_samples)
    if isinstance(kind, ConstantColatitudeCircle):
        _check_theta("theta0", kind.theta0)
        phi = 2 * math.pi * kind.turns * s
        st, ct = math.sin(kind.theta0), math.cos(kind.theta0)
        pts = kind.p0 * np.column_stack([st * np.cos(phi), st * np.sin(phi),
                                          np.full_like(phi, ct)])
        closed = float(kind.turns).is_integer() and kind.turns != 0
        if closed:
            pts[-1] = pts[0]
        return MomentumPath(pts, closed)
    if isinstance(kind, GreatCircle):
        a = vec3(kind.axis)
        a = a / np.linalg.norm(a)
        if abs(a[2]) < math.sin(POLE_GUARD):
            raise ValueError("great circle passes through the pole guard")
        helper = np.array([1.0, 0.0, 0.0]) if abs(a[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        e1 = np.cross(a, helper)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(a, e1)
        t = 2 * math.pi * s
        pts = kind.p0 * (np.cos(t)[:, None] * e1 + np.sin(t)[:, None] * e2)
        pts[-1] = pts[0]
        return MomentumPath(pts, True)
    _check_theta("theta_start", kind.theta_start)
    _check_theta("theta_end", kind.theta_end)
    if kind.theta_start == kind.theta_end:
        raise ValueError("loxodrome needs distinct start and end colatitudes")
    theta = np.linspace(kind.theta_start, kind.theta_end, n_samples)
    merc = np.log(np.tan(theta / 2))
    phi = 2 * math.pi * kind.turns * (merc - merc[0]) / (merc[-1] - merc[0])
    st = np.sin(theta)
    pts = kind.p0 * np.column_stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])
    return MomentumPath(pts, False)
