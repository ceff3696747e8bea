"""Figure rendering for region tables and support-set grids.

Figures are written straight to files (Agg backend), so the CLI can drop a
picture next to its CSV/JSON output without needing a display.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Patch

from .analysis import (
    REGION_ALL_COMPRESSIBLE,
    REGION_ALL_INCOMPRESSIBLE,
    REGION_MIXED,
    RegionTable,
)
from .errors import UnsupportedFormat
from .supports import SupportSet

_REGION_COLORS = {
    REGION_ALL_COMPRESSIBLE: "#4daf4a",
    REGION_MIXED: "#ffb000",
    REGION_ALL_INCOMPRESSIBLE: "#e41a1c",
}


def render_region_bands(table: RegionTable, path: str) -> None:
    """Draw the per-cardinality compressibility bands as a colored strip, with
    the incompressible fraction overlaid when counts are available."""
    fig, ax = plt.subplots(figsize=(8, 2.8))
    for row in table.rows:
        ax.axvspan(
            row.cardinality - 0.5,
            row.cardinality + 0.5,
            color=_REGION_COLORS[row.label],
            alpha=0.6,
        )
    have_counts = all(r.count is not None and r.total for r in table.rows)
    if have_counts:
        xs = [r.cardinality for r in table.rows]
        ys = [r.count / r.total for r in table.rows]
        ax.plot(xs, ys, "k.-", label="incompressible fraction")
        ax.set_ylim(-0.05, 1.05)
    else:
        ax.set_yticks([])
    ax.set_xlim(0.5, table.rows[-1].cardinality + 0.5)
    ax.set_xlabel("support-set cardinality")
    kind = "bit" if table.kind == "bits" else "informant"
    ax.set_title(f"{kind}-compressibility regions, space {table.space} ({table.mode})")
    handles = [Patch(color=c, alpha=0.6, label=l.replace("_", " ")) for l, c in _REGION_COLORS.items()]
    ax.legend(handles=handles + ax.get_legend_handles_labels()[0], loc="center left",
              bbox_to_anchor=(1.01, 0.5), fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_support_grid(support: SupportSet, path: str) -> None:
    """Draw a two-informant support set as an occupancy grid."""
    space = support.space
    if space.num_informants != 2:
        raise UnsupportedFormat("grid figures need exactly 2 informants")
    q = space.alphabet_size
    grid = [[1 if (r, c) in support else 0 for c in range(q)] for r in range(q)]
    fig, ax = plt.subplots(figsize=(3.2, 3.2))
    ax.imshow(grid, cmap="Greys", vmin=0, vmax=1.4)
    ax.set_xticks(range(q))
    ax.set_yticks(range(q))
    ax.set_xlabel("informant 1 value")
    ax.set_ylabel("informant 0 value")
    ax.set_title(f"{len(support)} cells in {space}")
    for edge in range(q + 1):
        ax.axhline(edge - 0.5, color="#bbbbbb", lw=0.5)
        ax.axvline(edge - 0.5, color="#bbbbbb", lw=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
