"""Figures for verification reports (rendered off-screen to PNG)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STATUS_COLORS = {"pass": "#4c9f70", "fail": "#c8553d"}


def plot_report(report, path) -> Path:
    """Horizontal bars of instances per check (log scale), coloured by status."""
    path = Path(path)
    checks = list(report.checks)
    names = [c.claim_id for c in checks]
    counts = [max(c.instances, 1) for c in checks]
    colors = [STATUS_COLORS[c.status] for c in checks]
    fig, ax = plt.subplots(figsize=(7, 0.4 * len(checks) + 1.2))
    ax.barh(names, counts, color=colors)
    ax.set_xscale("log")
    ax.invert_yaxis()
    ax.set_xlabel("instances checked")
    title = f"verification suite (seed {report.seed})"
    if report.fault:
        title += f", fault {report.fault}"
    ax.set_title(title)
    for y, c in enumerate(checks):
        ax.text(counts[y], y, f" {c.status} ({len(c.failures)})", va="center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def write_report_bundle(report, directory) -> dict:
    """report.json, report.tsv and report.png side by side."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {"json": directory / "report.json", "tsv": directory / "report.tsv"}
    paths["json"].write_text(report.to_json() + "\n")
    paths["tsv"].write_text(report.to_tsv())
    paths["png"] = plot_report(report, directory / "report.png")
    return paths
