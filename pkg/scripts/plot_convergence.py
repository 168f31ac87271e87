#!/usr/bin/env python3
"""Plot metric histories and the final front from stored run payloads.

Usage:
    python3 scripts/plot_convergence.py payloads/*.run.json --out fig.png
"""

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from emolab.orchestrator import load


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("payloads", nargs="+")
    parser.add_argument("--metric", default="igd")
    parser.add_argument("--out", default="convergence.png")
    args = parser.parse_args()

    fig, (ax_hist, ax_front) = plt.subplots(1, 2, figsize=(11, 4.2))
    for raw in args.payloads:
        payload = load(raw)
        label = f"{payload.algorithm['id']}/{payload.problem['id']} s{payload.seed}"
        history = payload.history_for(args.metric)
        if history is not None and history.points:
            fe = [p[0] for p in history.points]
            values = [p[1] for p in history.points]
            ax_hist.plot(fe, values, label=label, linewidth=1.2)
        front = payload.nondominated_front()
        if front.shape[1] == 2:
            ax_front.scatter(front[:, 0], front[:, 1], s=10, label=label)

    ax_hist.set_xlabel("function evaluations")
    ax_hist.set_ylabel(args.metric)
    ax_hist.set_yscale("log")
    ax_hist.legend(fontsize=7)
    ax_hist.set_title(f"{args.metric} vs FE")
    ax_front.set_xlabel("f1")
    ax_front.set_ylabel("f2")
    ax_front.set_title("final nondominated front")
    ax_front.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
