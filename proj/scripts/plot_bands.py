#!/usr/bin/env python3
"""Plot a bands.csv produced by `soti2d bands` as an energy-vs-path figure."""
import csv
import sys

import matplotlib.pyplot as plt


def main() -> None:
    if len(sys.argv) != 2:
        sys.exit("usage: plot_bands.py <bands.csv>")
    idx, bands = [], [[], [], [], []]
    with open(sys.argv[1], newline="") as fh:
        for row in csv.DictReader(fh):
            idx.append(int(row["index"]))
            for b in range(4):
                bands[b].append(float(row[f"E{b + 1}"]))
    for b in range(4):
        plt.plot(idx, bands[b], lw=1.2)
    plt.xlabel("path point (Gamma - X - M - Gamma)")
    plt.ylabel("energy (1/mm)")
    plt.tight_layout()
    out = sys.argv[1].replace(".csv", ".png")
    plt.savefig(out, dpi=160)
    print(out)


if __name__ == "__main__":
    main()
