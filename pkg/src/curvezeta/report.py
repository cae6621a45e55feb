"""Report rendering: delimited tables and matplotlib figures.

Everything written here is presentational.  The exact pipeline never depends
on this module; floating-point conversion happens only at the plotting
boundary.  Delimited outputs are fully deterministic (sorted rows, exact
values rendered as strings); figures are rendered with the Agg backend.
"""

from __future__ import annotations

import cmath
import csv
import math
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .algebra.cyclotomic import as_cyclotomic


def _to_complex(value):
    value = as_cyclotomic(value)
    return sum(
        float(c) * cmath.exp(2j * cmath.pi * e / value.m)
        for e, c in enumerate(value.coords)
    )


# ---------------------------------------------------------------------------
# delimited outputs


def write_divisors_csv(path, graph):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["id", "kind", "N", "nu", "base_point", "boundary_count"])
        for d in graph.divisors:
            writer.writerow(
                [
                    d.id,
                    d.kind,
                    ";".join(str(n) for n in d.N),
                    d.nu,
                    "" if d.base_point is None else f"{d.base_point[0]};{d.base_point[1]}",
                    d.boundary_count(),
                ]
            )


def write_poles_csv(path, candidates, unmasked, actual):
    rows = sorted(set(candidates) | set(unmasked) | set(actual))
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["hyperplane", "candidate", "unmasked", "actual"])
        for H in rows:
            writer.writerow(
                [
                    H.render(),
                    int(H in candidates),
                    int(H in unmasked),
                    int(H in actual),
                ]
            )


def write_coefficients_csv(path, Z, table):
    """Side-by-side closed-form and enumerated coefficients over the box."""
    series = Z.taylor_coefficients(table.r * table.B)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["k", "closed_form", "enumeration", "equal"])
        for k in table.box():
            closed = as_cyclotomic(series.get(k, Fraction(0)))
            oracle = table.coefficient(k)
            writer.writerow(
                [
                    ";".join(str(i) for i in k),
                    repr(closed),
                    repr(oracle),
                    int(closed == oracle),
                ]
            )


def write_zeta_csv(path, Z):
    reduced = Z.reduced_function()
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["part", "exponents_or_N", "value_or_nu"])
        for e, c in reduced.numerator.sorted_terms():
            writer.writerow(["numerator", ";".join(str(i) for i in e), repr(as_cyclotomic(c))])
        for fac in reduced.denominator:
            writer.writerow(["denominator", ";".join(str(n) for n in fac.N), fac.nu])


# ---------------------------------------------------------------------------
# figures


def figure_dual_graph(path, graph):
    """Dual graph of the resolution: nodes on a circle, crossings as chords."""
    fig, ax = plt.subplots(figsize=(6, 6))
    n = len(graph.divisors)
    positions = {}
    for idx, d in enumerate(graph.divisors):
        angle = 2 * math.pi * idx / max(n, 1)
        positions[d.id] = (math.cos(angle), math.sin(angle))
    drawn = set()
    for ix in graph.intersections:
        pair = tuple(sorted(ix.divisors))
        if pair in drawn:
            continue
        drawn.add(pair)
        (x0, y0), (x1, y1) = positions[pair[0]], positions[pair[1]]
        ax.plot([x0, x1], [y0, y1], color="gray", zorder=1)
    for d in graph.divisors:
        x, y = positions[d.id]
        color = "tab:orange" if d.kind == "strict" else "tab:blue"
        ax.scatter([x], [y], s=600, color=color, zorder=2)
        ax.annotate(
            f"E{d.id}\nN={tuple(d.N)}\nnu={d.nu}",
            (x, y),
            ha="center",
            va="center",
            fontsize=7,
            zorder=3,
        )
    ax.set_title(f"dual graph: {len(graph.divisors)} divisors, r={graph.r}")
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=120)
    plt.close(fig)


def figure_coefficient_comparison(path, Z, table):
    """Bar chart of |c_k|: closed form next to enumeration over the box."""
    series = Z.taylor_coefficients(table.r * table.B)
    box = table.box()
    closed = [abs(_to_complex(series.get(k, Fraction(0)))) for k in box]
    oracle = [abs(_to_complex(table.coefficient(k))) for k in box]
    labels = [",".join(str(i) for i in k) for k in box]
    xs = range(len(box))
    fig, ax = plt.subplots(figsize=(max(6, len(box) * 0.5), 4))
    ax.bar([x - 0.2 for x in xs], closed, width=0.4, label="closed form")
    ax.bar([x + 0.2 for x in xs], oracle, width=0.4, label="enumeration")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=90, fontsize=6)
    ax.set_xlabel("valuation profile k")
    ax.set_ylabel("|c_k|")
    ax.set_title(f"p={table.p}, chi={table.chi.exponents}, phi={table.phi.label()}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def figure_poles(path, candidates, unmasked, actual, r):
    """Pole hyperplanes: points on the s-line (r=1) or lines in the plane (r=2)."""
    fig, ax = plt.subplots(figsize=(6, 4 if r == 1 else 6))
    if r == 1:
        for H in sorted(candidates):
            s0 = -Fraction(H.nu, H.N[0])
            if H in actual:
                style = dict(color="tab:red", marker="x", s=120, zorder=3)
            elif H in unmasked:
                style = dict(color="tab:orange", marker="o", s=80, zorder=2)
            else:
                style = dict(color="gray", marker="o", s=50, zorder=1)
            ax.scatter([float(s0)], [0], **style)
            ax.annotate(str(s0), (float(s0), 0.02), ha="center", fontsize=8)
        ax.axhline(0, color="black", linewidth=0.5)
        ax.set_yticks([])
        ax.set_xlabel("real part of s")
    else:
        import numpy as np

        span = np.linspace(-3.0, 0.5, 64)
        for H in sorted(candidates):
            a, b = H.N[0], H.N[1]
            color = (
                "tab:red" if H in actual else "tab:orange" if H in unmasked else "gray"
            )
            if b:
                ax.plot(span, [(-H.nu - a * s) / b for s in span], color=color)
            else:
                ax.axvline(-H.nu / a, color=color)
        ax.set_xlabel("s1")
        ax.set_ylabel("s2")
    ax.set_title("candidate (gray) / unmasked (orange) / actual (red)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
