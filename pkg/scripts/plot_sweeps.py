"""Reference plots for sweep CSVs (documentation asset, not tested).

    unruhqfi sweep --preset all --output out
    python scripts/plot_sweeps.py out
"""

import sys
from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd

STYLES = ["-", ":", "--", "-.", (0, (3, 1, 1, 1, 1, 1))]


def plot_csv(path: Path) -> None:
    df = pd.read_csv(path)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    if {"P1", "P2", "P3", "P4"} <= set(df) and path.stem == "fig3":
        for i, col in enumerate(["P1", "P2", "P3", "P4"]):
            ax.plot(df["r"], df[col], linestyle=STYLES[i], label=col)
        ax.set_ylabel("population")
    elif df["curve"].nunique() == 1 and df["F_c"].notna().all() and path.stem in ("fig2", "fig5b", "fig6b"):
        for i, col in enumerate(["F_I", "F_c", "F_p", "F_m"]):
            ax.plot(df["r"], df[col], linestyle=STYLES[i], label=col)
        ax.set_ylabel("Fisher information")
    else:
        for i, (_, g) in enumerate(df.groupby("curve")):
            label = f"x={g['x'].iloc[0]:g}, y={g['y'].iloc[0]:g}, z={g['z'].iloc[0]:g}"
            ax.plot(g["r"], g["F_I"], linestyle=STYLES[i % len(STYLES)], label=label)
        ax.set_ylabel(f"F_I ({df['estimand'].iloc[0]})")
    ax.set_xlabel("r")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path.with_suffix(".png"), dpi=150)
    plt.close(fig)


def main(directory: str) -> None:
    for path in sorted(Path(directory).glob("*.csv")):
        plot_csv(path)
        print(f"wrote {path.with_suffix('.png')}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
