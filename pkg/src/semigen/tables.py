"""CSV tables of radii, kappa and decay rates.

Output is byte-stable: fixed parameter grids, fixed column order, numbers
written with 10 significant digits.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

from .radius import ClassSpec, PhiTarget, decay_rate, kappa, radius_a_beta, radius_janowski_closed_form

JANOWSKI_PAIRS = ((1.0, -1.0), (0.0, -1.0))
NAMED_TARGETS = ("sg", "parabolic", "rhoexp")


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(float(x), ".10g")


def beta_grid(start=0.0, stop=1.0, step=0.05):
    """start, start+step, ... up to stop inclusive, rounded to kill float drift."""
    if step <= 0 or stop < start:
        raise ValueError(f"bad grid {start}:{stop}:{step}")
    n = int(math.floor((stop - start) / step + 1e-9))
    return [round(start + i * step, 12) for i in range(n + 1)]


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def radius_sweep_rows(target: PhiTarget, betas):
    for b in betas:
        res = radius_a_beta(b, target)
        yield b, res.k, res.m, res.r, res.branch


def radius_sweep_csv(target: PhiTarget, betas) -> str:
    return _csv(["beta", "kappa", "m", "r", "branch"], radius_sweep_rows(target, betas))


def janowski_csv(betas) -> str:
    rows = []
    for A, B in JANOWSKI_PAIRS:
        for b in betas:
            res = radius_janowski_closed_form(b, A, B)
            rows.append((A, B, b, res.k, res.m, res.r, res.branch))
    return _csv(["A", "B", "beta", "kappa", "m", "r", "branch"], rows)


def kappa_csv(betas) -> str:
    return _csv(["beta", "kappa"], ((b, kappa(b)) for b in betas))


def decay_rates_csv() -> str:
    specs = [ClassSpec("janowski", {"A": A, "B": B}) for A, B in ((0.0, -1.0), (-0.5, -1.0), (0.0, -0.5))]
    specs += [ClassSpec("starlike_order", {"alpha": a}) for a in (0.5, 0.75)]
    specs += [ClassSpec("bs", {"alpha": a}) for a in (0.05, 0.1, 0.15, 3.0 - 2.0 * math.sqrt(2.0))]
    specs += [ClassSpec("u", {"lambda": lam}) for lam in (0.1, 0.2, 0.25, 0.3, 1.0 / 3.0)]
    rows = []
    for spec in specs:
        params = ";".join(f"{k}={fmt(v)}" for k, v in spec.params.items())
        rows.append((spec.kind, params, decay_rate(spec)))
    return _csv(["class", "params", "rate"], rows)


def emit_paper_tables(outdir, step: float = 0.05) -> list:
    """Write every table into ``outdir``; returns the written paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    betas = beta_grid(0.0, 1.0, step)
    files = {"radius_janowski.csv": janowski_csv(betas)}
    for tag in NAMED_TARGETS:
        files[f"radius_{tag}.csv"] = radius_sweep_csv(PhiTarget(tag), betas)
    files["kappa.csv"] = kappa_csv(betas)
    files["decay_rates.csv"] = decay_rates_csv()
    paths = []
    for name, text in files.items():
        path = out / name
        path.write_text(text, encoding="utf-8")
        paths.append(path)
    return paths
