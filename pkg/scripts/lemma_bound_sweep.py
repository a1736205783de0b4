"""Sweep the lower bound of Re((1-alpha) z p'/(alpha + (1-alpha) p)) over (alpha, r).

For each point the closed-form bound is compared against a brute-force minimum
over two-point Herglotz functions.  The extremal angle from the quadratic in
cos(theta) is evaluated in both transcriptions (derived, printed).  CSV on stdout.

    python3 scripts/lemma_bound_sweep.py --alphas 0.1:0.9:0.2 --radii 0.1:0.9:0.2
"""

import argparse
import math
import sys

import numpy as np

from semigen.errors import SemigenError
from semigen.radius import eqnf3_cos_theta, tuan_anh_bound
from semigen.tables import fmt


def brute_min(alpha, r, thetas=1001, angles=1001):
    th = np.linspace(0, np.pi, thetas)[:, None]
    z = r * np.exp(1j * np.linspace(0, 2 * np.pi, angles))[None, :]
    e = np.exp(1j * th)
    p = 0.5 * ((1 + z / e) / (1 - z / e) + (1 + z * e) / (1 - z * e))
    dp = (1 / e) / (1 - z / e) ** 2 + e / (1 - z * e) ** 2
    return ((1 - alpha) * z * dp / (alpha + (1 - alpha) * p)).real.min()


def at_angle(alpha, r, c, angles=4001):
    z = r * np.exp(1j * np.linspace(0, 2 * np.pi, angles))
    e = complex(c, math.sqrt(max(0.0, 1 - c * c)))
    p = 0.5 * ((1 + z / e) / (1 - z / e) + (1 + z * e) / (1 - z * e))
    dp = (1 / e) / (1 - z / e) ** 2 + e / (1 - z * e) ** 2
    return ((1 - alpha) * z * dp / (alpha + (1 - alpha) * p)).real.min()


def span(text):
    a, b, s = (float(x) for x in text.split(":"))
    return np.round(np.arange(a, b + s / 2, s), 12)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alphas", default="0.1:0.9:0.2")
    ap.add_argument("--radii", default="0.1:0.9:0.2")
    args = ap.parse_args()

    out = sys.stdout
    out.write("alpha,r,branch,bound,brute_min,gap,derived_at_root,printed_at_root\n")
    for alpha in span(args.alphas):
        for r in span(args.radii):
            res = tuan_anh_bound(alpha, r)
            brute = brute_min(alpha, r)
            cols = {"derived": "", "printed": ""}
            if res.branch == "R2leR1":
                for variant in cols:
                    try:
                        c = eqnf3_cos_theta(alpha, r, variant)[0]
                        cols[variant] = fmt(at_angle(alpha, r, c))
                    except SemigenError as exc:
                        cols[variant] = type(exc).__name__
            row = [fmt(alpha), fmt(r), res.branch, fmt(res.bound), fmt(brute), fmt(brute - res.bound)]
            out.write(",".join(row + [cols["derived"], cols["printed"]]) + "\n")


if __name__ == "__main__":
    main()
