"""Figure rendering for verification reports (opt-in on the CLI report path).

Figures are written as PNG files next to the delimited report output; nothing
here is interactive.  All data comes either from the report itself or from
cheap re-evaluations of the library routes on coarse grids.
"""

from __future__ import annotations

import math
from pathlib import Path

from . import quadrature
from .exact_series import eval_f
from .identities import VerificationReport, f_closed, f_via_j, j_via_f
from .weierstrass import j_closed, j_via_sigma


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _family(name: str) -> str:
    return name.split("/", 1)[0]


def render_report_figures(report: VerificationReport, outdir: "str | Path",
                          dpi: int = 150) -> list[Path]:
    """Render the report figures into ``outdir`` and return the file paths."""
    plt = _pyplot()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    # 1. relative error of every check, grouped by family
    fig, ax = plt.subplots(figsize=(9, 4.5))
    families = sorted({_family(c.name) for c in report.checks})
    colors = plt.cm.tab10.colors
    floor = 1e-18
    offset = 0
    ticks, tick_labels = [], []
    for fam_idx, fam in enumerate(families):
        errs = [max(c.rel_err if math.isfinite(c.rel_err) else 1.0, floor)
                for c in report.checks if _family(c.name) == fam]
        xs = range(offset, offset + len(errs))
        ax.semilogy(list(xs), errs, ".", ms=4,
                    color=colors[fam_idx % len(colors)], label=fam)
        ticks.append(offset + len(errs) / 2)
        tick_labels.append(fam)
        offset += len(errs)
    ax.axhline(1e-9, color="0.4", lw=0.8, ls="--")
    ax.set_xticks(ticks)
    ax.set_xticklabels(tick_labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("relative error")
    ax.set_title(f"verification battery: {report.n_pass} pass / {report.n_fail} fail")
    fig.tight_layout()
    path = outdir / "check_errors.png"
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    written.append(path)

    # 2. the four J routes and their spread
    cs = [0.05 + i * (0.7 - 0.05) / 24 for i in range(25)]
    closed = [j_closed(c) for c in cs]
    series = [j_via_f(c) for c in cs]
    sigma = [j_via_sigma(c) for c in cs]
    quad = [quadrature.integral_j_numeric(c, 1e-11).value for c in cs]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(cs, closed, "-", label="closed form")
    ax1.plot(cs, series, "s", ms=3, label="series route")
    ax1.plot(cs, sigma, "^", ms=3, label="sigma route")
    ax1.plot(cs, quad, ".", ms=3, label="quadrature")
    ax1.set_xlabel("c")
    ax1.set_ylabel("J(c)")
    ax1.legend(fontsize=7)
    spread = [
        max(abs(a - b) for a in vals for b in vals)
        for vals in zip(closed, series, sigma, quad)
    ]
    ax2.semilogy(cs, [max(s, 1e-18) for s in spread], ".-")
    ax2.set_xlabel("c")
    ax2.set_ylabel("max pairwise |difference|")
    fig.tight_layout()
    path = outdir / "j_routes.png"
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    written.append(path)

    # 3. F: series region and analytic continuation
    xs_in = [0.002 + i * (0.055 - 0.002) / 23 for i in range(24)]
    xs_out = [0.07 + i * (0.9 - 0.07) / 23 for i in range(24)]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(xs_in, [eval_f(x) for x in xs_in], "-", label="series")
    ax1.plot(xs_in, [f_closed(x) for x in xs_in], ".", ms=3, label="closed form")
    ax1.axvline(1 / 16, color="0.5", lw=0.8, ls=":")
    ax1.set_xlabel("x")
    ax1.set_ylabel("F(x)")
    ax1.legend(fontsize=7)
    ax2.plot(xs_out, [f_closed(x) for x in xs_out], "-", label="closed form")
    ax2.plot(xs_out, [f_via_j(x, 1e-11) for x in xs_out], ".", ms=3,
             label="J-quadrature route")
    ax2.set_xlabel("x")
    ax2.set_ylabel("F(x), continued past 1/16")
    ax2.legend(fontsize=7)
    fig.tight_layout()
    path = outdir / "f_routes.png"
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    written.append(path)

    return written
