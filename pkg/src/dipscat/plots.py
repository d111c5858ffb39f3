"""Figure rendering for scenario CSV outputs.

One figure per CSV: first column is the abscissa, every further column
becomes a line. Rendering is deterministic (fixed hash salt, no embedded
timestamps) so repeated runs produce identical files.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

plt.rcParams["svg.hashsalt"] = "dipscat"

_LINE_STYLES = ("-", "--", "-.", ":")


def render_csv(csv_path, out_path):
    """Render a delimited scenario output to out_path (format by suffix)."""
    # skip the config echo explicitly: genfromtxt would otherwise mistake
    # the first comment line for a commented-out header row
    skip = 0
    with open(csv_path, encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            skip += 1
    data = np.genfromtxt(csv_path, delimiter=",", names=True,
                         skip_header=skip)
    names = data.dtype.names
    if names is None or len(names) < 2:
        raise ValueError(f"no plottable columns in {csv_path}")
    x = np.atleast_1d(data[names[0]])
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for i, col in enumerate(names[1:]):
        y = np.atleast_1d(data[col])
        ax.plot(x, y, _LINE_STYLES[i % len(_LINE_STYLES)],
                label=col.replace("_", " "), linewidth=1.3)
    ax.set_xlabel(names[0].replace("_", " "))
    if len(names) == 2:
        ax.set_ylabel(names[1].replace("_", " "))
    else:
        ax.legend(frameon=False, fontsize=9)
    ax.grid(alpha=0.25, linewidth=0.5)
    fig.tight_layout()
    fig.savefig(out_path, metadata={"Date": None}
                if str(out_path).endswith(".svg") else None)
    plt.close(fig)
    return out_path
