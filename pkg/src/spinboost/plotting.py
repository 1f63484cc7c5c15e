"""Figure rendering for sweep outputs.

Kept separate (and imported lazily) so the numeric pipeline never depends
on a GUI stack.  The Agg backend is forced for headless determinism, and
PNG metadata is pinned so repeated runs produce identical bytes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["save_curves", "save_surface"]

_PNG_METADATA = {"Software": "spinboost"}


def save_curves(
    path: Union[str, Path],
    phis: np.ndarray,
    series: Sequence[tuple[str, Sequence[float]]],
    ylabel: str,
    title: str = "",
) -> Path:
    """Render labeled curves over phi to a PNG; returns the path."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for label, values in series:
        ax.plot(phis, values, linewidth=1.4, label=label)
    ax.set_xlabel("phi (rad)")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)
    return Path(path)


def save_surface(
    path: Union[str, Path],
    phis: np.ndarray,
    params: np.ndarray,
    values: np.ndarray,
    param_label: str,
    value_label: str,
    title: str = "",
) -> Path:
    """Render a (param x phi) value surface as a pseudocolor map.

    `values` rows follow `params`, columns follow `phis`.
    """
    fig, ax = plt.subplots(figsize=(7.0, 4.8))
    mesh = ax.pcolormesh(phis, params, values, shading="auto", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=value_label)
    ax.set_xlabel("phi (rad)")
    ax.set_ylabel(param_label)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)
    return Path(path)
