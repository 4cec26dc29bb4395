#!/usr/bin/env python3
"""Plot RSS error curves from a flyby errors CSV (t_s,model,rss_km,flag)."""

import argparse
import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    series = defaultdict(lambda: ([], []))
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            t, e = series[row["model"]]
            t.append(float(row["t_s"]) / 3600.0)
            e.append(float(row["rss_km"]) * 1e3)
    return series


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", help="<name>_errors.csv written by `flyby run`")
    ap.add_argument("-o", "--output", help="image file (default: next to the CSV, .png)")
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(8, 5))
    for model, (t, e) in load(args.csv).items():
        ax.semilogy(t, [max(v, 1e-6) for v in e], label=model)
    ax.set_xlabel("time [h]")
    ax.set_ylabel("RSS position error [m]")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    out = args.output or args.csv.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=150, bbox_inches="tight")
    print(out)


if __name__ == "__main__":
    main()
