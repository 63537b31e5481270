"""Figures for trajectory reports (written as SVG next to the CSV output)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STROKES = {1: dict(color="tab:red", ls="-"), -1: dict(color="tab:blue", ls="--"),
           0: dict(color="k", ls=":")}

plt.rcParams["svg.hashsalt"] = "spinhall"
# keep labels as searchable text rather than glyph outlines
plt.rcParams["svg.fonttype"] = "none"


def _projection_axes(x: np.ndarray):
    """Two coordinate axes with the largest extent of the path."""
    extent = x.max(axis=0) - x.min(axis=0)
    a, b = sorted(np.argsort(extent)[-2:])
    return int(a), int(b)


def plot_trajectories(trajs, out_path, title=None):
    """Projected ray paths plus the helicity-dependent transverse shift.

    Left panel: orthographic projection on the two coordinate axes the ray
    spans most.  Right panel: each helicity's accumulated Hall shift along
    the splitting direction, which is far too small to see on the left.
    """
    names = "xyz"
    a, b = _projection_axes(np.vstack([t.x for t in trajs]))
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(10, 4))
    for tr in trajs:
        style = STROKES.get(int(tr.lam), STROKES[0])
        ax0.plot(tr.x[:, a], tr.x[:, b], lw=1.2, label=f"lambda = {int(tr.lam):+d}", **style)
    ax0.set_xlabel(names[a])
    ax0.set_ylabel(names[b])
    ax0.set_aspect("equal", adjustable="datalim")
    ax0.legend(frameon=False)

    final = {int(tr.lam): tr.dr[-1] for tr in trajs}
    if 1 in final and -1 in final:
        split = final[1] - final[-1]
    else:
        split = next(iter(final.values()))
    norm = np.linalg.norm(split)
    unit = split / norm if norm > 0 else np.array([0.0, 0.0, 1.0])
    for tr in trajs:
        style = STROKES.get(int(tr.lam), STROKES[0])
        ax1.plot(tr.t, tr.dr @ unit, lw=1.2, **style)
    ax1.set_xlabel("t")
    ax1.set_ylabel("Hall shift along splitting")
    if 1 in final and -1 in final:
        ax1.annotate(f"|splitting| = {norm:.4e}\n"
                     f"splitting = ({split[0]:.3e}, {split[1]:.3e}, {split[2]:.3e})",
                     xy=(0.03, 0.97), xycoords="axes fraction", va="top", fontsize=8)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return out_path
