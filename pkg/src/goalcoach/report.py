"""Offline report rendering: figures plus delimited output for one user.

Writes four files into the output directory: dartboard.png, progress.png,
goals.csv, and dashboard.json. Figures use the Agg backend so this works
headless.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .metrics import DashboardPayload

_STATUS_COLORS = {"active": "#4c9f70", "paused": "#c9a227", "completed": "#5b7db1"}


def _render_dartboard(payload: DashboardPayload, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.set_aspect("equal")
    ax.axis("off")
    # Score rings: 1 is the outermost ring, 7 the bullseye.
    for score in range(1, 8):
        radius = (8 - score) / 7
        ring = plt.Circle(
            (0, 0), radius, fill=False, color="#b9b9b9", linewidth=0.8, zorder=1
        )
        ax.add_patch(ring)
        ax.annotate(
            str(score),
            xy=(0, radius),
            xytext=(0, 4),
            textcoords="offset points",
            ha="center",
            fontsize=7,
            color="#8a8a8a",
            zorder=2,
        )
    entries = payload.insights.dartboard
    if entries:
        step = 2 * math.pi / len(entries)
        for index, entry in enumerate(entries):
            angle = math.pi / 2 - index * step
            x = entry.radius * math.cos(angle)
            y = entry.radius * math.sin(angle)
            ax.plot(x, y, "o", markersize=9, color="#d1495b", zorder=3)
            label_r = max(entry.radius, 0.18) + 0.13
            ax.annotate(
                f"{entry.domain} ({entry.score})",
                xy=(label_r * math.cos(angle), label_r * math.sin(angle)),
                ha="center",
                fontsize=9,
                zorder=3,
            )
        ax.set_title("Values alignment (closer to center is better)")
    else:
        ax.set_title("Values alignment (check-in not completed yet)")
    limit = 1.25
    ax.set_xlim(-limit, limit)
    ax.set_ylim(-limit, limit)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def _render_progress(payload: DashboardPayload, path: Path) -> None:
    goals = payload.goals_view
    fig, ax = plt.subplots(figsize=(8, max(2.0, 0.8 * len(goals) + 1.2)))
    if goals:
        labels = [
            goal.description if len(goal.description) <= 40 else goal.description[:37] + "..."
            for goal in goals
        ]
        values = [goal.progress for goal in goals]
        colors = [_STATUS_COLORS.get(goal.status, "#777777") for goal in goals]
        positions = range(len(goals))
        ax.barh(positions, values, color=colors)
        ax.set_yticks(list(positions), labels)
        ax.invert_yaxis()
        for pos, value in zip(positions, values):
            ax.annotate(f"{value}%", xy=(value, pos), xytext=(4, 0),
                        textcoords="offset points", va="center", fontsize=9)
    else:
        ax.annotate("No goals yet", xy=(0.5, 0.5), xycoords="axes fraction",
                    ha="center", fontsize=12, color="#8a8a8a")
    ax.set_xlim(0, 105)
    ax.set_xlabel("Progress (%)")
    ax.set_title(
        f"Goal progress - overall {payload.overall_progress}% across "
        f"{payload.active_goal_count} active, consistency {payload.consistency}%"
    )
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def _write_goals_csv(payload: DashboardPayload, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [
                "goal_id",
                "description",
                "status",
                "progress",
                "duration_days",
                "next_steps",
                "midpoint_checkin",
                "end_checkin",
            ]
        )
        for goal in payload.goals_view:
            by_kind = {c.kind: c for c in goal.scheduled_checkins}
            writer.writerow(
                [
                    goal.goal_id,
                    goal.description,
                    goal.status,
                    goal.progress,
                    goal.duration_days,
                    "; ".join(goal.next_steps),
                    by_kind["midpoint"].start.isoformat() if "midpoint" in by_kind else "",
                    by_kind["end"].start.isoformat() if "end" in by_kind else "",
                ]
            )


def render_report(payload: DashboardPayload, out_dir: str | Path) -> list[Path]:
    """Render all report files; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    dartboard = out / "dartboard.png"
    progress = out / "progress.png"
    goals_csv = out / "goals.csv"
    dashboard_json = out / "dashboard.json"
    _render_dartboard(payload, dartboard)
    _render_progress(payload, progress)
    _write_goals_csv(payload, goals_csv)
    dashboard_json.write_text(payload.model_dump_json(indent=2), encoding="utf-8")
    return [dartboard, progress, goals_csv, dashboard_json]
