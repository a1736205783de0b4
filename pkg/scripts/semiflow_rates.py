"""Compare class decay rates with the rates observed along semiflow orbits.

For each class the extremal generator is integrated from eight starting points
on |z| = 0.9; the observed rate is min over samples of -log(|u|/|z0|)/t.
The closed-form rate should never exceed it.

    python3 scripts/semiflow_rates.py
"""

import math

import numpy as np

from semigen.functions import booth_psi, janowski_phi, ma_minda_extremal, u_lambda_extremal
from semigen.radius import ClassSpec, decay_rate
from semigen.semiflow import integrate
from semigen.tables import fmt

ORDER = 256


def observed_rate(f, radius=0.9, T=10.0, n=8):
    rates = []
    for z0 in radius * np.exp(2j * np.pi * (np.arange(n) + 0.5) / n):
        traj = integrate(f, z0, T)
        t, m = traj.times[1:], traj.moduli[1:]
        rates.append(np.min(-np.log(m / abs(z0)) / t))
    return float(min(rates))


def cases():
    for A, B in ((0.0, -1.0), (-0.5, -1.0), (-0.2, -0.6)):
        yield f"janowski A={A:g} B={B:g}", ClassSpec("janowski", {"A": A, "B": B}), ma_minda_extremal(janowski_phi(A, B, ORDER))
    for lam in (0.1, 0.25, 1 / 3):
        yield f"u lambda={lam:.4g}", ClassSpec("u", {"lambda": lam}), u_lambda_extremal(lam, ORDER)
    for alpha in (0.05, 3 - 2 * math.sqrt(2)):
        spec = ClassSpec("bs", {"alpha": alpha})
        yield f"bs alpha={alpha:.4g}", spec, ma_minda_extremal(1.0 + booth_psi(alpha, ORDER))


def main():
    print("class,rate,observed,slack")
    for name, spec, f in cases():
        k = decay_rate(spec)
        seen = observed_rate(f)
        print(",".join([name, fmt(k), fmt(seen), fmt(seen - k)]))


if __name__ == "__main__":
    main()
