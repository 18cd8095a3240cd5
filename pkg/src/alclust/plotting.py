"""Figure rendering for the report-producing commands.

Each report command writes its delimited output first and then, unless
plotting is disabled, renders a companion PNG next to it.  Figures are
drawn headless (Agg) so the CLI works on servers.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_trajectory_figure(points, path, omega: float) -> None:
    """Bootstrap trajectory: accuracy (when available) and graph growth."""
    iterations = [p.iteration for p in points]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    aris = [p.ari for p in points]
    if any(a is not None for a in aris):
        ax.plot(iterations, aris, marker="o", ms=3, color="tab:blue", label="ARI")
        ax.set_ylabel("adjusted Rand index")
        ax.set_ylim(-0.05, 1.05)
    else:
        ax.plot(iterations, [p.cluster_count for p in points], marker="o", ms=3,
                color="tab:blue", label="clusters")
        ax.set_ylabel("cluster count")
    ax2 = ax.twinx()
    ax2.plot(iterations, [p.edge_count for p in points], color="tab:orange",
             alpha=0.7, label="edges")
    ax2.set_ylabel("thresholded edges")
    ax.set_xlabel("iteration")
    ax.set_title(f"bootstrap trajectory (omega = {omega:g})")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_scaling_figure(sizes, medians, exponent: float, intercept: float, path) -> None:
    """Log-log runtime plot with the fitted power law."""
    sizes = np.asarray(sizes, dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.loglog(sizes, medians, "o", color="tab:blue", label="median runtime")
    fit = np.exp(intercept) * sizes**exponent
    ax.loglog(sizes, fit, "--", color="tab:orange",
              label=f"fit: N^{exponent:.2f}")
    ax.set_xlabel("objects N")
    ax.set_ylabel("seconds")
    ax.set_title("engine runtime scaling")
    ax.grid(alpha=0.3, which="both")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_noise_figure(report, path) -> None:
    """Noise-cluster behavior: normalized counts and size distribution."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    ax1.plot(report.sizes, report.mean_normalized, marker="o", color="tab:blue")
    ax1.set_xlabel("objects N")
    ax1.set_ylabel("clusters / N")
    ax1.set_title("normalized cluster count")
    ax1.grid(alpha=0.3)
    sizes = list(report.histogram)
    counts = [report.histogram[s] for s in sizes]
    ax2.bar(sizes, counts, color="tab:orange")
    ax2.set_yscale("log")
    ax2.set_xlabel("cluster size")
    ax2.set_ylabel("count")
    ax2.set_title(f"pooled size distribution (mode {report.mode_size})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _tree_layout(edges, n: int) -> np.ndarray:
    """Radial positions for a tree: ring per depth, angles by subtree size."""
    neighbors: list[list[int]] = [[] for _ in range(n)]
    for i, j, _ in edges:
        neighbors[i].append(j)
        neighbors[j].append(i)
    root = max(range(n), key=lambda v: (len(neighbors[v]), -v))
    depth = [-1] * n
    parent = [-1] * n
    order = [root]
    depth[root] = 0
    for v in order:
        for w in neighbors[v]:
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = v
                order.append(w)
    leaves = [1] * n
    for v in reversed(order):
        if parent[v] >= 0:
            leaves[parent[v]] += leaves[v]
    start = [0.0] * n
    span = [2 * np.pi] * n
    pos = np.zeros((n, 2))
    for v in order:
        cursor = start[v]
        total = sum(leaves[w] for w in neighbors[v] if parent[w] == v) or 1
        for w in neighbors[v]:
            if parent[w] != v:
                continue
            width = span[v] * leaves[w] / total
            start[w] = cursor
            span[w] = width
            angle = cursor + width / 2
            pos[w] = [depth[w] * np.cos(angle), depth[w] * np.sin(angle)]
            cursor += width
    return pos


def save_mst_figure(edges, n: int, path, labels=None) -> None:
    """Spanning tree drawing, nodes optionally colored by cluster."""
    pos = _tree_layout(edges, n)
    fig, ax = plt.subplots(figsize=(6.5, 6.5))
    for i, j, _ in edges:
        ax.plot([pos[i, 0], pos[j, 0]], [pos[i, 1], pos[j, 1]],
                color="0.6", lw=0.8, zorder=1)
    if labels is not None:
        colors = [plt.cm.tab20(int(lab) % 20) for lab in np.asarray(labels)]
    else:
        colors = "tab:blue"
    size = max(8.0, 2400.0 / max(n, 1))
    ax.scatter(pos[:, 0], pos[:, 1], s=size, c=colors, zorder=2)
    ax.set_axis_off()
    ax.set_title("minimum spanning tree (distance 1 - correlation)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
