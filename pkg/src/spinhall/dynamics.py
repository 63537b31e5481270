"""Semiclassical ray equations with the Berry-curvature correction.

With ``H = |p|/n(x) + kappa*lam*|p|`` the equations of motion are::

    dp/dt = -grad_x H
    dx/dt =  grad_p H + lam*hbar * (p/|p|^3) x dp/dt

The anomalous velocity is orthogonal to ``grad_x H`` so ``H`` is conserved
exactly by the flow.  Along each run the Rytov angle and the Hall shift are
accumulated over the recorded momentum samples.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import rk
from .core import Helicity, RayState, vec3
from .errors import DomainError, IntegrationError, MediumDomainError
from .functionals import hall_increments, rytov_increments
from .gauge import POLE_GUARD
from .medium import MediumProfile

log = logging.getLogger(__name__)

DEFAULT_SAMPLES = 4096
# A step-size collapse with n below this fraction of its launch value is
# treated as the ray running into the n = 0 boundary.
BOUNDARY_FRACTION = 1e-4


@dataclass(frozen=True)
class PhysicsParams:
    """``hbar_eff`` scales the Berry correction; ``lambda_enabled=False`` sets lam = 0."""

    hbar_eff: float = 1e-3
    kappa: float = 0.0
    lambda_enabled: bool = True
    adiabatic_threshold: float = 0.1

    def __post_init__(self):
        if not self.hbar_eff >= 0:
            raise ValueError("hbar_eff must be non-negative")

    def effective_lambda(self, lam) -> int:
        return int(Helicity(lam)) if self.lambda_enabled else 0


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-10
    atol: float = 1e-12
    t_max: float = 20.0
    max_step: float = 0.5
    sample_interval: float | None = None

    def __post_init__(self):
        for name in ("rtol", "atol", "t_max", "max_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.sample_interval is not None and not self.sample_interval > 0:
            raise ValueError("sample_interval must be positive")

    @property
    def interval(self) -> float:
        if self.sample_interval is None:
            return self.t_max / DEFAULT_SAMPLES
        return self.sample_interval

    def sample_times(self) -> np.ndarray:
        n = max(1, math.ceil(self.t_max / self.interval - 1e-9))
        times = np.arange(n + 1) * self.interval
        times[-1] = self.t_max
        return times


class Status(str, Enum):
    COMPLETED = "completed"
    MEDIUM_EXIT = "medium-domain-exit"
    POLE_HALT = "pole-degeneracy-halt"


@dataclass
class Trajectory:
    """Sampled run of one helicity.

    Arrays share the sample axis: ``t (N,)``, ``x (N, 3)``, ``p (N, 3)``,
    ``H (N,)``, ``gamma (N,)`` and ``dr (N, 3)``.  ``gamma`` and ``dr`` are the
    Rytov angle and Hall shift accumulated up to each sample.
    """

    lam: int
    t: np.ndarray
    x: np.ndarray
    p: np.ndarray
    H: np.ndarray
    gamma: np.ndarray
    dr: np.ndarray
    status: Status = Status.COMPLETED
    warnings: list = field(default_factory=list)

    def __len__(self):
        return len(self.t)

    @property
    def final_dr(self) -> np.ndarray:
        return self.dr[-1]

    @property
    def final_gamma(self) -> float:
        return float(self.gamma[-1])

    def max_relative_drift(self) -> float:
        return float(np.max(np.abs(self.H - self.H[0])) / abs(self.H[0]))

    def states(self) -> list[RayState]:
        lam = Helicity(self.lam) if self.lam else Helicity.PLUS
        return [RayState(x, p, lam, t) for t, x, p in zip(self.t, self.x, self.p)]


def _hamiltonian(m, lam, kappa, y):
    n = m.index_and_gradient(y[0], y[1], y[2])[0]
    pn = math.sqrt(y[3] * y[3] + y[4] * y[4] + y[5] * y[5])
    return pn / n + kappa * lam * pn


def hamiltonian(state: RayState, m: MediumProfile, params: PhysicsParams) -> float:
    """Adiabatic energy of helicity ``state.lam``: ``|p|/n + kappa lam |p|``."""
    lam = params.effective_lambda(state.lam)
    return _hamiltonian(m, lam, params.kappa, np.concatenate([state.x, state.p]))


def make_rhs(m: MediumProfile, lam: int, hbar: float, kappa: float):
    """Right-hand side ``f(t, y)`` for ``y = (x, p)``."""
    corr = lam * hbar

    def f(t, y):
        x0, x1, x2, p0, p1, p2 = y
        n, g0, g1, g2 = m.index_and_gradient(x0, x1, x2)
        pn = math.sqrt(p0 * p0 + p1 * p1 + p2 * p2)
        if pn == 0.0:
            raise DomainError("momentum vanished")
        a = pn / (n * n)
        dp0, dp1, dp2 = a * g0, a * g1, a * g2
        v = (1.0 / n + kappa * lam) / pn
        c = corr / (pn * pn * pn)
        return np.array([
            v * p0 + c * (p1 * dp2 - p2 * dp1),
            v * p1 + c * (p2 * dp0 - p0 * dp2),
            v * p2 + c * (p0 * dp1 - p1 * dp0),
            dp0, dp1, dp2,
        ])

    return f


def eom_rhs(state: RayState, m: MediumProfile, params: PhysicsParams):
    """``(dx/dt, dp/dt)`` at ``state``."""
    lam = params.effective_lambda(state.lam)
    f = make_rhs(m, lam, params.hbar_eff, params.kappa)
    d = f(state.t, np.concatenate([state.x, state.p]))
    return d[:3], d[3:]


def _near_pole(p) -> bool:
    theta = math.atan2(math.hypot(p[0], p[1]), p[2])
    return theta < POLE_GUARD or theta > math.pi - POLE_GUARD


def _accumulate(p: np.ndarray, lam: int, hbar: float):
    n = len(p)
    gamma = np.zeros(n)
    dr = np.zeros((n, 3))
    if n >= 2:
        gamma[1:] = np.cumsum(rytov_increments(p, guard=None))
    if n >= 3 and lam and hbar:
        dr[1:] = lam * hbar * np.cumsum(hall_increments(p), axis=0) + 0.0
    elif n == 2 and lam and hbar:
        mid = 0.5 * (p[0] + p[1])
        dr[1] = lam * hbar * np.cross(mid, p[1] - p[0]) / np.linalg.norm(mid) ** 3 + 0.0
    return gamma, dr


def integrate(initial: RayState, m: MediumProfile, params: PhysicsParams,
              cfg: IntegratorConfig | None = None) -> Trajectory:
    """Adaptive Dormand-Prince 5(4) integration sampled on a uniform time grid.

    Steps are shortened so they land on every sample time.  The run stops
    early with status ``medium-domain-exit`` when the ray reaches n <= 0 (or
    the step size collapses as n -> 0), and
    ``pole-degeneracy-halt`` when the Berry correction is active and the
    momentum direction enters the pole guard.
    """
    cfg = cfg or IntegratorConfig()
    lam = params.effective_lambda(initial.lam)
    hbar = params.hbar_eff
    f = make_rhs(m, lam, hbar, params.kappa)
    times = cfg.sample_times() + initial.t
    y = np.concatenate([initial.x, initial.p])
    k1 = f(times[0], y)
    t = times[0]
    h = min(cfg.max_step, cfg.interval)
    h_min = 1e-14 * max(1.0, abs(times[-1]))
    n_start = m.index_and_gradient(*initial.x)[0]
    track_pole = bool(lam) and hbar > 0
    if track_pole and _near_pole(y[3:]):
        raise DomainError("initial momentum lies inside the pole guard")

    status = Status.COMPLETED
    warnings = []
    ts, ys = [t], [y]
    k = 1
    # set when a rejected attempt since the last accepted step reached n <= 0
    at_boundary = False
    while k < len(times):
        target = times[k]
        h_try = min(h, cfg.max_step, target - t)
        clamped = h_try == target - t
        try:
            y_new, err, k7 = rk.dopri_step(f, t, y, h_try, k1)
        except MediumDomainError:
            at_boundary = True
            h = 0.5 * h_try
            if h < h_min:
                status = Status.MEDIUM_EXIT
                break
            continue
        norm = rk.error_norm(err, y, y_new, cfg.rtol, cfg.atol)
        h_new = rk.next_step(h_try, norm)
        if norm > 1.0:
            h = h_new
            if h < h_min:
                n_here = m.index_and_gradient(y[0], y[1], y[2])[0]
                if at_boundary or n_here < BOUNDARY_FRACTION * n_start:
                    status = Status.MEDIUM_EXIT
                    break
                raise IntegrationError(f"step size underflow at t={t:.6g}")
            continue
        at_boundary = False
        h = max(h, h_new) if clamped else h_new
        t, y, k1 = (target if clamped else t + h_try), y_new, k7
        if not clamped:
            continue
        if track_pole and _near_pole(y[3:]):
            status = Status.POLE_HALT
            break
        ts.append(t)
        ys.append(y)
        k += 1

    ys = np.array(ys)
    x, p = ys[:, :3], ys[:, 3:]
    H = np.array([_hamiltonian(m, lam, params.kappa, row) for row in ys])
    if hbar > 0:
        for ti, xi in zip(ts, x):
            n, g0, g1, g2 = m.index_and_gradient(*xi)
            a = math.sqrt(g0 * g0 + g1 * g1 + g2 * g2) * hbar / (n * n)
            if a > params.adiabatic_threshold:
                msg = (f"adiabaticity parameter {a:.3g} exceeds "
                       f"{params.adiabatic_threshold:g} at t={ti:.6g}")
                warnings.append(msg)
                log.warning(msg)
                break
    gamma, dr = _accumulate(p, lam, hbar)
    traj = Trajectory(lam, np.array(ts), x, p, H, gamma, dr, status, warnings)
    drift = traj.max_relative_drift()
    if drift > 100 * cfg.rtol:
        msg = f"relative energy drift {drift:.3g} exceeds 100*rtol"
        warnings.append(msg)
        log.warning(msg)
    return traj


@dataclass
class TracePair:
    plus: Trajectory
    minus: Trajectory
    splitting: np.ndarray

    @property
    def longitudinal_fraction(self) -> float:
        """|component of the splitting along the final ray direction| / |splitting|."""
        norm = np.linalg.norm(self.splitting)
        if norm == 0.0:
            return 0.0
        d = self.plus.p[-1] / np.linalg.norm(self.plus.p[-1])
        return float(abs(self.splitting @ d) / norm)


def trace_pair(initial: RayState, m: MediumProfile, params: PhysicsParams,
               cfg: IntegratorConfig | None = None) -> TracePair:
    """Trace both helicities from the same ``(x, p)``; ``initial.lam`` is ignored."""
    runs = {}
    for lam in Helicity:
        start = RayState(initial.x, initial.p, lam, initial.t)
        runs[lam] = integrate(start, m, params, cfg)
    plus, minus = runs[Helicity.PLUS], runs[Helicity.MINUS]
    return TracePair(plus, minus, plus.final_dr - minus.final_dr)


def initial_state(m: MediumProfile, x0, direction, lam=Helicity.PLUS) -> RayState:
    """Ray at ``x0`` along ``direction`` with ``|p| = n(x0)`` (so H = 1 when kappa = 0)."""
    x0 = vec3(x0)
    d = vec3(direction)
    d = d / np.linalg.norm(d)
    n = m.index_and_gradient(*x0)[0]
    return RayState(x0, n * d, lam, 0.0)
