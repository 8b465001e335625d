"""Rendering of analysis results: text, JSON, CSV, and figure files.

Machine formats keep at least 10 significant digits; the text report shows
unavailability in scientific notation since the interesting regime lives
many decades below 1. Figures are rendered to files (Agg backend) next to
the delimited output.
"""

from __future__ import annotations

import csv
import io
import json

from .chain import ChainResult, ChainSpec, Redundancy
from .mugf import PerfDistribution
from .optimizer import DemandPoint, OptimizationResult
from .sensitivity import SweepPoint, ThresholdResult
from .simulate import SimConfig, SimEstimate


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _vec(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


# ---------------------------------------------------------------- analyze

def acceptable_terms(
    dist: PerfDistribution, demand: tuple[int, ...]
) -> list[tuple[tuple[int, ...], float]]:
    return [
        (g, p)
        for g, p in dist
        if all(gi >= wi for gi, wi in zip(g, demand))
    ]


def analyze_dict(spec: ChainSpec, l: Redundancy, result: ChainResult) -> dict:
    accepted = acceptable_terms(result.distribution, spec.demand)
    return {
        "redundancy": list(l),
        "demand": list(spec.demand),
        "availability": result.availability,
        "unavailability": 1.0 - result.availability,
        "cost": result.cost,
        "state_space": result.state_space,
        "term_count": len(result.distribution),
        "acceptable_mass": sum(p for _, p in accepted),
        "acceptable_terms": [{"g": list(g), "p": p} for g, p in accepted],
        "distribution": result.distribution.to_dict(),
    }


def analyze_text(spec: ChainSpec, l: Redundancy, result: ChainResult) -> str:
    accepted = acceptable_terms(result.distribution, spec.demand)
    lines = [
        f"chain of {spec.size} subsystems, redundancy {_vec(l)}",
        f"demand per tenant: {_vec(spec.demand)} sessions",
        f"availability:   {result.availability:.10f}",
        f"unavailability: {1.0 - result.availability:.6e}",
        f"cost:           {_fmt(result.cost)}",
        f"joint state space (never enumerated): {result.state_space}",
        f"distribution terms: {len(result.distribution)}",
        "",
        f"acceptable performance vectors ({len(accepted)} of "
        f"{len(result.distribution)}, mass {sum(p for _, p in accepted):.10f}):",
    ]
    for g, p in accepted:
        lines.append(f"  {p:.6e} @ {_vec(g)}")
    return "\n".join(lines) + "\n"


def analyze_csv(spec: ChainSpec, l: Redundancy, result: ChainResult) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [f"g{i + 1}" for i in range(spec.tenants)] + ["probability", "acceptable"]
    )
    for g, p in result.distribution:
        ok = all(gi >= wi for gi, wi in zip(g, spec.demand))
        writer.writerow(list(g) + [_fmt(p), int(ok)])
    return out.getvalue()


# --------------------------------------------------------------- optimize

def optimize_dict(result: OptimizationResult) -> dict:
    return {
        "target": result.target,
        "feasible": result.feasible,
        "min_cost": result.min_cost,
        "optima": [
            {"redundancy": list(l), "availability": a}
            for l, a in zip(result.optima, result.availabilities)
        ],
        "evaluated_count": result.evaluated_count,
        "feasible_count": result.feasible_count,
        "best_availability": result.best_availability,
        "best_redundancy": list(result.best_config),
    }


def optimize_text(result: OptimizationResult) -> str:
    lines = [
        f"availability target: {result.target:.10f}",
        f"configurations evaluated: {result.evaluated_count}"
        f" (feasible: {result.feasible_count})",
    ]
    if result.feasible:
        lines.append(f"minimal cost: {_fmt(result.min_cost)}")
        lines.append(f"optima ({len(result.optima)}):")
        for l, a in zip(result.optima, result.availabilities):
            lines.append(
                f"  {_vec(l)}  availability {a:.10f}"
                f"  unavailability {1.0 - a:.6e}"
            )
    else:
        lines.append("INFEASIBLE: no configuration meets the target")
        lines.append(
            f"best availability {result.best_availability:.10f}"
            f" at {_vec(result.best_config)}"
        )
    return "\n".join(lines) + "\n"


def optimize_csv(result: OptimizationResult) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["redundancy", "cost", "availability", "feasible"])
    for row in result.evaluations:
        writer.writerow(
            [
                ",".join(str(x) for x in row.redundancy),
                _fmt(row.cost),
                _fmt(row.availability),
                int(row.feasible),
            ]
        )
    return out.getvalue()


def demand_sweep_dict(points: tuple[DemandPoint, ...]) -> dict:
    return {"demands": [
        {"demand": list(p.demand), **optimize_dict(p.result)} for p in points
    ]}


# ------------------------------------------------------------------ sweep

def sweep_dict(
    points: list[SweepPoint], threshold: ThresholdResult | None = None
) -> dict:
    doc = {
        "points": [
            {
                "parameter": p.parameter,
                "value_per_second": p.value,
                "value_human": p.human_value,
                "unit": p.human_unit,
                "availability": p.availability,
                "unavailability": p.unavailability,
            }
            for p in points
        ]
    }
    if threshold is not None:
        doc["threshold"] = {
            "parameter": threshold.parameter,
            "rate_per_second": threshold.rate,
            "value_human": threshold.human_value,
            "unit": threshold.human_unit,
            "availability": threshold.availability,
            "target": threshold.target,
        }
    return doc


def sweep_csv(points: list[SweepPoint]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "parameter",
            "value_per_second",
            "value_human",
            "unit",
            "availability",
            "unavailability",
        ]
    )
    for p in points:
        writer.writerow(
            [
                p.parameter,
                _fmt(p.value),
                _fmt(p.human_value),
                p.human_unit,
                _fmt(p.availability),
                _fmt(p.unavailability),
            ]
        )
    return out.getvalue()


def sweep_text(
    points: list[SweepPoint], threshold: ThresholdResult | None = None
) -> str:
    lines = [f"sweep of {points[0].parameter} over {len(points)} points:"]
    for p in points:
        lines.append(
            f"  {p.value:.6e}/s  (1/rate = {p.human_value:.6g} {p.human_unit})"
            f"  availability {p.availability:.10f}"
            f"  unavailability {p.unavailability:.6e}"
        )
    if threshold is not None:
        lines.append(
            f"threshold at availability {threshold.target}: "
            f"{threshold.rate:.6e}/s "
            f"(1/rate = {threshold.human_value:.6g} {threshold.human_unit})"
        )
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------- simulate

def simulate_dict(estimate: SimEstimate, config: SimConfig) -> dict:
    return {
        "mean": estimate.availability_mean,
        "std_error": estimate.std_error,
        "replications": estimate.replications,
        "horizon": config.horizon,
        "warmup": config.warmup,
        "seed": config.seed,
    }


def simulate_text(estimate: SimEstimate, config: SimConfig) -> str:
    return (
        f"simulated availability: {estimate.availability_mean:.10f}"
        f" +/- {estimate.std_error:.3e} (std error,"
        f" {estimate.replications} replications,"
        f" horizon {config.horizon:.3e} s, warmup {config.warmup:.3e} s,"
        f" seed {config.seed})\n"
    )


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ----------------------------------------------------------------- plots

def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_sweep_figure(
    points: list[SweepPoint],
    path,
    target: float | None = None,
    nominal_rate: float | None = None,
) -> None:
    """Unavailability vs. the swept parameter's reciprocal form."""
    plt = _pyplot()
    xs = [p.human_value for p in points]
    ys = [max(p.unavailability, 1e-16) for p in points]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(xs, ys, marker="o", ms=3.5, lw=1.2)
    if target is not None:
        ax.axhline(1.0 - target, ls="--", color="0.3", lw=1.0,
                   label=f"target unavailability {1.0 - target:.0e}")
        ax.legend(fontsize=8)
    if nominal_rate is not None:
        from .sensitivity import human_value

        hv, _ = human_value(points[0].parameter, nominal_rate)
        if min(xs) <= hv <= max(xs):
            idx = min(range(len(xs)), key=lambda i: abs(xs[i] - hv))
            ax.plot([xs[idx]], [ys[idx]], "o", ms=10, mfc="none", mec="red")
    ax.set_xlabel(f"1/{points[0].parameter} [{points[0].human_unit}]")
    ax.set_ylabel("unavailability")
    ax.set_yscale("log")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_optimize_figure(result: OptimizationResult, path) -> None:
    """Unavailability of every evaluated configuration, grouped by cost."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    rows = result.evaluations
    if rows:
        feas = [r for r in rows if r.feasible]
        infeas = [r for r in rows if not r.feasible]
        for group, color, label in (
            (infeas, "tab:red", "infeasible"),
            (feas, "tab:green", "feasible"),
        ):
            if group:
                ax.scatter(
                    [r.cost for r in group],
                    [max(1.0 - r.availability, 1e-16) for r in group],
                    s=12, color=color, alpha=0.6, label=label,
                )
        ax.legend(fontsize=8)
    ax.axhline(1.0 - result.target, ls="--", color="0.3", lw=1.0)
    ax.set_xlabel("deployment cost")
    ax.set_ylabel("unavailability")
    ax.set_yscale("log")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_analyze_figure(
    spec: ChainSpec, result: ChainResult, path
) -> None:
    """Term probabilities of the chain distribution; acceptable terms marked."""
    plt = _pyplot()
    terms = list(result.distribution)
    labels = [_vec(g) for g, _ in terms]
    probs = [max(p, 1e-300) for _, p in terms]
    ok = [all(gi >= wi for gi, wi in zip(g, spec.demand)) for g, _ in terms]
    colors = ["tab:green" if flag else "tab:gray" for flag in ok]
    fig, ax = plt.subplots(figsize=(max(6.4, 0.22 * len(terms)), 4.4))
    ax.bar(range(len(terms)), probs, color=colors)
    ax.set_xticks(range(len(terms)))
    ax.set_xticklabels(labels, rotation=90, fontsize=6)
    ax.set_ylabel("probability")
    ax.set_yscale("log")
    ax.set_title(
        f"availability {result.availability:.8f} at demand {_vec(spec.demand)}",
        fontsize=9,
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
