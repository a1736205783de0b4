"""Numerical semiflows u'(t) = -f(u), u(0) = z0, and checks of their decay.

For f = z p with Re p >= k on the disk, |u(t, z0)| <= |z0| exp(-k t).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import BadParams, EscapedDisk, StepUnderflow
from .numerics import periodic_min
from .series import PowerSeries

ESCAPE_MARGIN = 1e-6


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    points: np.ndarray
    z0: complex
    f_id: str = ""

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.points)

    @property
    def end(self) -> complex:
        return complex(self.points[-1])

    def to_dict(self) -> dict:
        return {
            "f_id": self.f_id,
            "z0": [self.z0.real, self.z0.imag],
            "times": [float(t) for t in self.times],
            "points": [[float(p.real), float(p.imag)] for p in self.points],
        }

    @classmethod
    def from_dict(cls, d):
        pts = np.array([complex(a, b) for a, b in d["points"]])
        return cls(np.array(d["times"], dtype=float), pts, complex(*d["z0"]), d.get("f_id", ""))


@dataclass(frozen=True)
class DecayCertificate:
    rate_k: float
    max_violation: float
    holds: bool
    tol: float

    def to_dict(self):
        return dict(self.__dict__)


def _rhs(f: PowerSeries):
    c = f.coeffs
    n = np.arange(len(c))

    def rhs(t, y):
        return -(c @ y[0] ** n)[None]

    return rhs


def integrate(
    f: PowerSeries,
    z0: complex,
    T: float,
    step_tol: float = 1e-9,
    samples: int = 201,
    f_id: str = "",
) -> Trajectory:
    """Solve u' = -f(u), u(0) = z0 on [0, T] with an embedded 4(5) Runge-Kutta
    pair and dense output at ``samples`` equally spaced times.

    Raises EscapedDisk (carrying the partial trajectory) as soon as |u|
    exceeds 1 + 1e-6, which means f is not a generator at this truncation.
    """
    z0 = complex(z0)
    if not abs(z0) < 1:
        raise BadParams(f"|z0| must be < 1, got {abs(z0)}")
    if not T > 0:
        raise BadParams(f"T must be positive, got {T}")
    if samples < 2:
        raise BadParams("need at least 2 samples")

    def escaped(t, y):
        return abs(y[0]) - (1.0 + ESCAPE_MARGIN)

    escaped.terminal = True
    t_eval = np.linspace(0.0, T, samples)
    sol = solve_ivp(
        _rhs(f),
        (0.0, T),
        np.array([z0]),
        method="RK45",
        t_eval=t_eval,
        rtol=step_tol,
        atol=step_tol * 1e-5,
        events=escaped,
    )
    times, points = sol.t, sol.y[0]
    if sol.status == 1:
        partial = Trajectory(times, points, z0, f_id)
        t_hit = float(sol.t_events[0][0])
        raise EscapedDisk(f"|u| left the unit disk at t = {t_hit:.6g}: not a generator at this truncation", partial)
    if sol.status != 0:
        raise StepUnderflow(sol.message)
    points = points.copy()
    points[0] = z0
    return Trajectory(times, points, z0, f_id)


def verify_decay(traj: Trajectory, k: float, tol: float = 1e-9) -> DecayCertificate:
    """Check |u(t_i)| <= |z0| exp(-k t_i) + tol at every sample."""
    if k < 0:
        raise BadParams(f"rate must be >= 0, got {k}")
    bound = abs(traj.z0) * np.exp(-k * traj.times)
    viol = float(np.max(traj.moduli - bound))
    return DecayCertificate(float(k), viol, viol <= tol, float(tol))


def verify_semigroup_law(f: PowerSeries, z0: complex, t: float, s: float, step_tol: float = 1e-9) -> float:
    """|u(t+s, z0) - u(t, u(s, z0))| from separate integrations."""
    if t == 0 or s == 0:
        return 0.0
    if t < 0 or s < 0:
        raise BadParams("t and s must be >= 0")
    direct = integrate(f, z0, t + s, step_tol, samples=2).end
    mid = integrate(f, z0, s, step_tol, samples=2).end
    composed = integrate(f, mid, t, step_tol, samples=2).end
    return abs(direct - composed)


def wolff_limit(f: PowerSeries, z0: complex, horizon: float = 50.0, step_tol: float = 1e-9) -> complex:
    """u(horizon, z0), an estimate of the attracting point (0 for f in G[0])."""
    return integrate(f, z0, horizon, step_tol, samples=2).end


def min_re_ratio(f: PowerSeries, radius: float, samples: int = 1024) -> float:
    """min of Re(f/z) over |z| <= radius, i.e. over the circle (minimum principle)."""
    if not 0 < radius < 1:
        raise BadParams(f"radius must lie in (0, 1), got {radius}")
    p = f.shift_down()
    rev = p.coeffs[::-1]
    return float(periodic_min(lambda th: np.polyval(rev, radius * np.exp(1j * th)).real, samples, tol=1e-12)[1])
