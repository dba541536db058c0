"""CSV, manifest and plot-script output for sweep results."""

from __future__ import annotations

import csv
import datetime as _dt
import io
import os
from pathlib import Path

from .experiments import ComponentRow, SweepPoint

CSV_COLUMNS = (
    "sweep_var", "n1", "n2", "n", "m", "kappa_linear", "realizations", "phase_mode",
    "rho_sq_sim", "rho_sq_se", "rho_sq_theory", "rho_sim", "rho_se", "rho_theory_upper",
    "asymptote",
)
COMPONENT_COLUMNS = ("n", "component", "simulated_mean", "simulated_se", "theory_mean")
FIGURE_KINDS = ("vs_N", "vs_M", "vs_kappa", "components")


class UsageError(ValueError):
    pass


def fmt(x) -> str:
    """Nine significant digits."""
    return f"{float(x):.9g}"


def sweep_rows(points: list[SweepPoint], sweep_var: str, realizations: int, phase_label: str):
    for pt in points:
        g = pt.params.geometry
        s = pt.stats
        yield {
            "sweep_var": sweep_var,
            "n1": str(g.n1),
            "n2": str(g.n2),
            "n": str(g.n),
            "m": str(g.m),
            "kappa_linear": fmt(pt.params.kappa),
            "realizations": str(realizations),
            "phase_mode": phase_label,
            "rho_sq_sim": fmt(s.rho_sq.mean),
            "rho_sq_se": fmt(s.rho_sq.sem),
            "rho_sq_theory": fmt(pt.prediction.mean_rho_sq),
            "rho_sim": fmt(s.rho.mean),
            "rho_se": fmt(s.rho.sem),
            "rho_theory_upper": fmt(pt.prediction.mean_rho_upper),
            "asymptote": fmt(pt.prediction.asymptote),
        }


def _write_rows(path, columns, rows):
    rows = list(rows)
    if not rows:
        raise ValueError("no results to write")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    Path(path).write_text(buf.getvalue())
    return Path(path)


def emit_csv(rows, path) -> Path:
    """Write sweep rows (dicts keyed by :data:`CSV_COLUMNS`)."""
    return _write_rows(path, CSV_COLUMNS, rows)


def emit_components_csv(rows: list[ComponentRow], path) -> Path:
    return _write_rows(path, COMPONENT_COLUMNS, (
        {"n": str(r.n), "component": r.component, "simulated_mean": fmt(r.simulated_mean),
         "simulated_se": fmt(r.simulated_se), "theory_mean": fmt(r.theory_mean)}
        for r in rows
    ))


def read_csv(path) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_manifest(path, entries: dict[str, str], *, version: str, csv_path, plot_path=None,
                   command: str = "") -> Path:
    """Manifest is itself a valid config file: metadata lines are comments."""
    now = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    lines = [
        f"# riscorr {version}",
        f"# command: {command}",
        f"# timestamp: {now}",
        f"# csv: {csv_path}",
    ]
    if plot_path is not None:
        lines.append(f"# plot: {plot_path}")
    lines += [f"{k} = {v}" for k, v in entries.items()]
    Path(path).write_text("\n".join(lines) + "\n")
    return Path(path)


_HEADER = '''#!/usr/bin/env python3
"""Auto-generated plot for {csv_name}. Requires matplotlib."""
import csv
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV = {csv_path!r}
OUT = {png_path!r}

with open(CSV, newline="") as fh:
    rows = list(csv.DictReader(fh))
'''

_BODIES = {
    "vs_N": '''
x = [int(r["n"]) for r in rows]
f = lambda key: [float(r[key]) for r in rows]
fig, ax = plt.subplots()
ax.errorbar(x, f("rho_sq_sim"), yerr=[3 * e for e in f("rho_sq_se")], fmt="o", label="E[rho^2] sim")
ax.plot(x, f("rho_sq_theory"), "-", label="E[rho^2] theory")
ax.errorbar(x, f("rho_sim"), yerr=[3 * e for e in f("rho_se")], fmt="s", label="E[rho] sim")
ax.plot(x, f("rho_theory_upper"), "--", label="E[rho] theory (upper bound)")
m = int(rows[0]["m"])
ax.axhline(1.0 / m, color="gray", linestyle=":", label="1/M")
ax.set_xlabel("N (number of RIS elements)")
ax.set_ylabel("correlation")
ax.set_title(f"Mean (squared) correlation coefficient vs N, M={m}")
''',
    "vs_M": '''
x = [int(r["m"]) for r in rows]
f = lambda key: [float(r[key]) for r in rows]
fig, ax = plt.subplots()
ax.errorbar(x, f("rho_sq_sim"), yerr=[3 * e for e in f("rho_sq_se")], fmt="o", label="E[rho^2] sim")
ax.plot(x, f("rho_sq_theory"), "-", label="E[rho^2] theory")
ax.errorbar(x, f("rho_sim"), yerr=[3 * e for e in f("rho_se")], fmt="s", label="E[rho] sim")
ax.plot(x, f("rho_theory_upper"), "--", label="E[rho] theory (upper bound)")
ax.plot(x, [1.0 / v for v in x], ":", color="gray", label="1/M")
ax.set_xlabel("M (number of BS antennas)")
ax.set_ylabel("correlation")
ax.set_title(f"Mean (squared) correlation coefficient vs M, N={rows[0]['n']}")
''',
    "vs_kappa": '''
groups = defaultdict(list)
for r in rows:
    groups[int(r["n"])].append(r)
fig, ax = plt.subplots()
for n, rs in sorted(groups.items()):
    x = [float(r["kappa_linear"]) for r in rs]
    ax.errorbar(x, [float(r["rho_sq_sim"]) for r in rs],
                yerr=[3 * float(r["rho_sq_se"]) for r in rs], fmt="o", label=f"sim N={n}")
    ax.plot(x, [float(r["rho_sq_theory"]) for r in rs], "-", label=f"theory N={n}")
ax.set_xlabel("Rician factor kappa (linear)")
ax.set_ylabel("E[rho^2]")
ax.set_title("Mean squared correlation coefficient vs Rician factor")
''',
    "components": '''
groups = defaultdict(list)
for r in rows:
    if r["component"].endswith("abs_mean"):
        continue
    groups[r["component"]].append(r)
fig, ax = plt.subplots()
for name, rs in groups.items():
    rs.sort(key=lambda r: int(r["n"]))
    x = [int(r["n"]) for r in rs]
    sim = [float(r["simulated_mean"]) for r in rs]
    th = [float(r["theory_mean"]) for r in rs]
    ref = th[0] if th[0] else 1.0
    line, = ax.plot(x, [t / ref for t in th], "-", label=f"{name} theory")
    ax.plot(x, [s / ref for s in sim], "o", color=line.get_color(), label=f"{name} sim")
ax.set_xscale("log")
ax.set_yscale("log")
ax.set_xlabel("N (number of RIS elements)")
ax.set_ylabel("normalized mean power")
ax.set_title("Normalized mean power of channel components vs N")
''',
}

_FOOTER = '''
ax.grid(True, which="both", alpha=0.3)
ax.legend(fontsize="small")
fig.tight_layout()
fig.savefig(OUT, dpi=150)
print("wrote", OUT)
'''


def emit_plot_script(csv_path, figure_kind: str, out_path=None) -> Path:
    """Write a standalone matplotlib script rendering ``csv_path``."""
    if figure_kind not in FIGURE_KINDS:
        raise UsageError(f"unknown figure kind {figure_kind!r}, expected one of {FIGURE_KINDS}")
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise FileNotFoundError(f"{csv_path}: no such CSV")
    if out_path is None:
        out_path = csv_path.with_suffix(".plot")
    png = os.fspath(csv_path.with_suffix(".png"))
    text = (_HEADER.format(csv_name=csv_path.name, csv_path=os.fspath(csv_path), png_path=png)
            + _BODIES[figure_kind] + _FOOTER)
    Path(out_path).write_text(text)
    return Path(out_path)
