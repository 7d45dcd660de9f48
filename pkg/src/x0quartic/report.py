"""Render a scan into reviewable artifacts: JSON, delimited text, figures.

The CSV carries one row per level so the verdicts can be diffed or loaded
into anything tabular; the figures give the shape of the classification at a
glance (where the infinite levels sit against genus, and which mechanism
carries each verdict).
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .classifier import FINITE, INFINITE, UNRESOLVED, ScanReport

_STATUS_COLOR = {INFINITE: "#2a9d8f", FINITE: "#7d8597", UNRESOLVED: "#d62828"}
_STATUS_SHORT = {INFINITE: "infinite", FINITE: "finite", UNRESOLVED: "unresolved"}
_MECHANISM_ORDER = ["genus_zero", "quadratic_infinite", "gonality_four", "bielliptic_quotient", "tetraelliptic"]


def write_csv(report: ScanReport, path: str) -> str:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["level", "genus", "status", "mechanism", "tetraelliptic", "evidence_kinds", "reason"])
        for c in report.results:
            writer.writerow(
                [
                    c.level,
                    c.genus,
                    c.status,
                    c.mechanism or "",
                    c.tetraelliptic.status,
                    ";".join(s.kind for s in c.evidence),
                    c.reason,
                ]
            )
    return path


def write_json(report: ScanReport, path: str) -> str:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
        fh.write("\n")
    return path


def _classification_map(report: ScanReport, path: str) -> str:
    fig, ax = plt.subplots(figsize=(11, 5))
    for status in (FINITE, INFINITE, UNRESOLVED):
        xs = [c.level for c in report.results if c.status == status]
        ys = [c.genus for c in report.results if c.status == status]
        if not xs and status == UNRESOLVED:
            continue
        ax.scatter(xs, ys, s=14, color=_STATUS_COLOR[status], label=f"{_STATUS_SHORT[status]} ({len(xs)})", zorder=2)
    tx = [c.level for c in report.results if c.tetraelliptic.is_positive]
    ty = [c.genus for c in report.results if c.tetraelliptic.is_positive]
    if tx:
        ax.scatter(tx, ty, s=90, facecolors="none", edgecolors="#e76f51", linewidths=1.4,
                   label=f"positive-rank tetraelliptic ({len(tx)})", zorder=3)
    ax.set_xlabel("level N")
    ax.set_ylabel("genus of X0(N)")
    ax.set_title(f"Quartic points on X0(N), levels {report.start}..{report.stop}")
    ax.grid(True, linewidth=0.3, alpha=0.5, zorder=1)
    ax.legend(loc="upper left", framealpha=0.9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _mechanism_counts(report: ScanReport, path: str) -> str:
    counts: dict[str, int] = {}
    for c in report.results:
        if c.status == INFINITE:
            counts[c.mechanism] = counts.get(c.mechanism, 0) + 1
    labels = [m for m in _MECHANISM_ORDER if m in counts]
    labels += sorted(set(counts) - set(labels))
    values = [counts[m] for m in labels]
    labels.append("finite")
    values.append(len(report.finite_levels))
    if report.unresolved_levels:
        labels.append("unresolved")
        values.append(len(report.unresolved_levels))
    colors = [_STATUS_COLOR[INFINITE]] * (len(labels) - (2 if report.unresolved_levels else 1))
    colors.append(_STATUS_COLOR[FINITE])
    if report.unresolved_levels:
        colors.append(_STATUS_COLOR[UNRESOLVED])

    fig, ax = plt.subplots(figsize=(8, 4.5))
    bars = ax.bar(range(len(labels)), values, color=colors)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=20, ha="right")
    ax.bar_label(bars)
    ax.set_ylabel("levels")
    ax.set_title(f"Deciding mechanism, levels {report.start}..{report.stop}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_report(report: ScanReport, out_dir: str, stem: str = "scan") -> dict[str, str]:
    """Write JSON + CSV + figures under out_dir; returns artifact paths by name."""
    os.makedirs(out_dir, exist_ok=True)
    return {
        "json": write_json(report, os.path.join(out_dir, f"{stem}.json")),
        "csv": write_csv(report, os.path.join(out_dir, f"{stem}.csv")),
        "classification_map": _classification_map(report, os.path.join(out_dir, "classification_map.png")),
        "mechanism_counts": _mechanism_counts(report, os.path.join(out_dir, "mechanism_counts.png")),
    }
