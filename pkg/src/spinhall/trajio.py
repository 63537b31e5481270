"""Delimited text formats: trajectory CSV and momentum-path CSV."""

from __future__ import annotations

import csv
import io

import numpy as np

from .dynamics import Status, Trajectory
from .errors import DegeneratePathError
from .functionals import MomentumPath

TRAJECTORY_HEADER = ("t", "x", "y", "z", "px", "py", "pz", "lambda",
                     "gamma", "drx", "dry", "drz", "H")
PATH_HEADER = ("px", "py", "pz")


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_trajectory(traj: Trajectory | None, sink) -> None:
    """Write one row per sample; reals with 17 significant digits, LF endings."""
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(TRAJECTORY_HEADER)
    if traj is None:
        return
    lam = str(int(traj.lam))
    for i in range(len(traj)):
        w.writerow([_fmt(traj.t[i]), *map(_fmt, traj.x[i]), *map(_fmt, traj.p[i]), lam,
                    _fmt(traj.gamma[i]), *map(_fmt, traj.dr[i]), _fmt(traj.H[i])])


def trajectory_to_text(traj: Trajectory | None) -> str:
    buf = io.StringIO()
    write_trajectory(traj, buf)
    return buf.getvalue()


def read_trajectory(source) -> Trajectory:
    """Inverse of :func:`write_trajectory` (status is not stored in the file)."""
    rows = list(csv.reader(source))
    if not rows or tuple(rows[0]) != TRAJECTORY_HEADER:
        raise ValueError("not a trajectory CSV (header mismatch)")
    data = np.array(rows[1:], dtype=float).reshape(-1, len(TRAJECTORY_HEADER))
    lam = int(data[0, 7]) if len(data) else 0
    return Trajectory(lam, data[:, 0], data[:, 1:4], data[:, 4:7], data[:, 12],
                      data[:, 8], data[:, 9:12], Status.COMPLETED)


def read_momentum_path(source) -> MomentumPath:
    """Read ``px,py,pz`` rows; the path is closed when the endpoints coincide."""
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != PATH_HEADER:
        raise DegeneratePathError("momentum path CSV must start with header px,py,pz")
    rows = [r for r in reader if r]
    try:
        samples = np.array(rows, dtype=float)
    except ValueError as exc:
        raise DegeneratePathError(f"bad momentum row: {exc}") from None
    if samples.ndim != 2 or samples.shape[1:] != (3,):
        raise DegeneratePathError("each momentum row needs exactly 3 columns")
    return MomentumPath.from_samples(samples)


def write_momentum_path(path: MomentumPath, sink) -> None:
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(PATH_HEADER)
    for row in path.samples:
        w.writerow([_fmt(v) for v in row])
