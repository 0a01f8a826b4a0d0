"""Render the three standard views of the coefficient ladder to PNG.

* ``phi_ladder.png``  — phi_n against n, over the linear floor n phi_1;
* ``lambda_bounds.png`` — lambda_n inside its one/two-cluster bounds,
  with the constant-slope (Koebe) estimate underneath;
* ``lambda_growth.png`` — lambda_n against the two comparison curves
  0.3 n + const and 0.1 n log n + const.

Pure presentation: every number is taken from already-computed records
and cast to float, so the figures carry double precision only.
"""
from __future__ import annotations

import math
from pathlib import Path
from typing import List, Sequence

from .cluster import LiRecord


def render_figures(records: Sequence[LiRecord], out_dir: str) -> List[Path]:
    """Write the three figures for the given records; returns the paths."""
    import matplotlib
    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ns = [r.n for r in records]
    phis = [float(r.phi) for r in records]
    lams = [float(r.lam) for r in records]
    lowers = [float(r.lower) for r in records]
    uppers = [float(r.upper) for r in records]
    rwbs = [float(r.rwb_lower) for r in records]
    lam1 = phis[0]
    paths: List[Path] = []

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(ns, phis, "o-", label=r"$\varphi_n$")
    ax.plot(ns, [n * lam1 for n in ns], "--", label=r"$n\,\varphi_1$")
    ax.set_xlabel("n")
    ax.set_ylabel(r"$\varphi_n$")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = out / "phi_ladder.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.fill_between(ns, lowers, uppers, alpha=0.25,
                    label="cluster bounds")
    ax.plot(ns, lams, "o-", label=r"$\lambda_n$")
    ax.plot(ns, rwbs, ":", label="constant-slope estimate")
    ax.set_xlabel("n")
    ax.set_ylabel(r"$\lambda_n$")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = out / "lambda_bounds.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(ns, lams, "o", label=r"$\lambda_n$")
    ax.plot(ns, [0.3 * n + (lam1 - 0.3) for n in ns], "--",
            label=r"$0.3\,n + \mathrm{const}$")
    ax.plot(ns, [0.1 * n * math.log(n) + lam1 for n in ns], "-.",
            label=r"$0.1\,n\log n + \mathrm{const}$")
    ax.set_xlabel("n")
    ax.set_ylabel(r"$\lambda_n$")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = out / "lambda_growth.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    paths.append(path)

    return paths
