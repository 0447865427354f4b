"""Matplotlib rendering of analysis reports to image files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_report_figures(report, out_dir, stem: str = "analysis") -> list[Path]:
    """Write the shift-count bar chart and the parallelism breakdown next to
    the delimited export. Returns the created file paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [
        _shift_counts_figure(report, out_dir / f"{stem}_shifts.png"),
        _parallelism_figure(report, out_dir / f"{stem}_parallelism.png"),
    ]
    return paths


def _shift_counts_figure(report, path: Path) -> Path:
    rows = list(report.table.rows)
    labels = [f"{r.source_frame} → {r.target_frame}" for r in rows]
    counts = [r.count for r in rows]
    height = max(2.0, 0.4 * len(rows) + 1.2)
    fig, ax = plt.subplots(figsize=(8, height))
    if rows:
        positions = range(len(rows))[::-1]
        bars = ax.barh(list(positions), counts, color="#4878a8")
        ax.set_yticks(list(positions))
        ax.set_yticklabels(labels, fontsize=9)
        ax.bar_label(bars, padding=3, fontsize=9)
    else:
        ax.text(0.5, 0.5, "no pairs", ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel("aligned expressions")
    ax.set_title(f"Evoked-frame shifts ({report.table.total} pairs)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _parallelism_figure(report, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 2.2))
    parts = [
        ("same frame", report.same_frame, "#2e7d32"),
        ("related shift", report.related_shift, "#f9a825"),
        ("unrelated shift", report.unrelated_shift, "#c62828"),
    ]
    left = 0
    for label, value, color in parts:
        if value:
            ax.barh([0], [value], left=left, color=color, label=f"{label} ({value})")
            left += value
    ax.set_yticks([])
    ax.set_xlim(0, max(report.table.total, 1))
    if report.percentage is not None:
        ax.set_title(
            f"Framing parallelism: {report.parallelism.numerator}/{report.parallelism.denominator}"
            f" ({report.percentage}%)"
        )
        ax.legend(loc="lower right", fontsize=8, ncol=3)
    else:
        ax.set_title("Framing parallelism: undefined (no pairs)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
