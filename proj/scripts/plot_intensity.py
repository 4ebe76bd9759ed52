#!/usr/bin/env python3
"""Render an intensity_z*.csv from `soti2d evolve` as a site heat map."""
import csv
import sys

import matplotlib.pyplot as plt
import numpy as np


def main() -> None:
    if len(sys.argv) != 2:
        sys.exit("usage: plot_intensity.py <intensity_z.csv>")
    cells = {}
    with open(sys.argv[1], newline="") as fh:
        for row in csv.DictReader(fh):
            cells[(int(row["row"]), int(row["col"]))] = float(row["intensity"])
    nrows = max(r for r, _ in cells) + 1
    ncols = max(c for _, c in cells) + 1
    grid = np.zeros((nrows, ncols))
    for (r, c), v in cells.items():
        grid[r, c] = v
    plt.imshow(grid, cmap="inferno", origin="upper")
    plt.colorbar(label="intensity")
    plt.tight_layout()
    out = sys.argv[1].replace(".csv", ".png")
    plt.savefig(out, dpi=160)
    print(out)


if __name__ == "__main__":
    main()
