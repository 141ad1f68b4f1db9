"""SVG figures of level curves (E against well width)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# fixed ids and no timestamp so repeated runs give identical files
matplotlib.rcParams["svg.hashsalt"] = "coreshell"
matplotlib.rcParams["svg.fonttype"] = "none"

CLASS_STYLE = {"N-EL": "-", "A-EL": "--", "non-monotonic": ":", "unclassified": ":"}
BRANCH_COLOR = {"plus": "tab:blue", "minus": "tab:red"}


def plot_level_curves(curves, classes, path, title=""):
    """Write one SVG with every curve; ``classes`` maps curve label -> tag."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for curve in curves:
        n, kappa, branch = curve.label
        tag = classes.get(curve.label, "unclassified")
        ax.plot(
            curve.r0,
            curve.energies,
            CLASS_STYLE.get(tag, "-"),
            color=BRANCH_COLOR.get(branch, "k"),
            lw=1.2,
            label=f"n={n}, κ={kappa}, a{'+' if branch == 'plus' else '−'} ({tag})",
        )
    ax.set_xlabel(r"well width $r_0$ (fm)")
    ax.set_ylabel(r"$E$ (fm$^{-1}$)")
    if title:
        ax.set_title(title, fontsize=10)
    if curves:
        ax.legend(fontsize=6, ncol=2, frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
