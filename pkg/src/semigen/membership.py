"""Grid-based membership tests for the function classes.

Each check samples a functional of ``f`` on concentric rings and reduces it
to a single witness value; ``member`` is true exactly when the witness
exceeds the grid margin.  Ring values are computed with one FFT per ring
(see :func:`semigen.series.eval_ring`), so series of order 10^4 and beyond
are cheap to test near the unit circle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ArgUndefined, BadParams, TruncationWarning
from .functions import a_beta_functional
from .series import (
    PowerSeries,
    derivative,
    eval_ring,
    exp_integral_transform,
    hadamard,
    multiply,
    normalized,
    reciprocal,
    tail_estimate,
)

DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999)
TAIL_TOL = 1e-8


@dataclass(frozen=True)
class GridSpec:
    radii: tuple = DEFAULT_RADII
    angular_samples: int = 720
    margin: float = 1e-9

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii or any(not 0.0 < r < 1.0 for r in radii):
            raise BadParams("grid radii must lie strictly inside (0, 1)")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise BadParams("grid radii must be strictly increasing")
        if self.angular_samples < 8:
            raise BadParams("need at least 8 angular samples per ring")
        if self.margin < 0:
            raise BadParams("margin must be non-negative")

    @classmethod
    def from_counts(cls, rings: int, angles: int = 720, rmax: float = 0.999, margin: float = 1e-9):
        """``rings`` radii from 0.1 to ``rmax``, spaced geometrically in 1 - r
        so that rings crowd towards the boundary."""
        if rings < 1:
            raise BadParams("need at least one ring")
        if rings == 1:
            return cls((rmax,), angles, margin)
        t = np.linspace(0.0, 1.0, rings)
        radii = 1.0 - 0.9 * ((1.0 - rmax) / 0.9) ** t
        return cls(tuple(radii), angles, margin)

    @property
    def rmax(self) -> float:
        return self.radii[-1]

    def angles(self, samples=None) -> np.ndarray:
        m = self.angular_samples if samples is None else samples
        return 2 * math.pi * np.arange(m) / m

    def points(self) -> np.ndarray:
        """Complex grid, shape (rings, angular_samples)."""
        return np.outer(self.radii, np.exp(1j * self.angles()))


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    witness_min: float
    witness_point: complex
    functional_name: str

    def to_dict(self) -> dict:
        return {
            "member": bool(self.member),
            "witness_min": float(self.witness_min),
            "witness_point": [float(self.witness_point.real), float(self.witness_point.imag)],
            "functional_name": self.functional_name,
        }

    @classmethod
    def from_dict(cls, d):
        re, im = d["witness_point"]
        return cls(bool(d["member"]), float(d["witness_min"]), complex(re, im), d["functional_name"])


def _check_tail(series: PowerSeries, r: float, what: str):
    est = tail_estimate(series, r)
    if est > TAIL_TOL:
        warnings.warn(
            f"{what}: truncation tail ~{est:.2g} at |z| = {r} (order {series.order}); raise the order",
            TruncationWarning,
            stacklevel=3,
        )


def ring_values(series: PowerSeries, grid: GridSpec, what: str = "series") -> np.ndarray:
    """Values of ``series`` on the grid, shape (rings, angular_samples)."""
    _check_tail(series, grid.rmax, what)
    return np.stack([eval_ring(series, r, grid.angular_samples) for r in grid.radii])


def _report(values: np.ndarray, grid: GridSpec, name: str, offset=0.0) -> MembershipReport:
    """Member iff min(values) + offset > margin."""
    idx = np.unravel_index(int(np.argmin(values)), values.shape)
    wmin = float(values[idx]) + offset
    point = grid.radii[idx[0]] * np.exp(1j * grid.angles()[idx[1]])
    return MembershipReport(wmin > grid.margin, wmin, complex(point), name)


def _quotient_and_derivative(f: PowerSeries, grid: GridSpec):
    """Grid values of f(z)/z and f'(z)."""
    f = normalized(f)
    q = ring_values(f.shift_down(), grid, "f/z")
    d = ring_values(derivative(f), grid, "f'")
    return q, d


def check_a_beta(f: PowerSeries, beta: float, grid: GridSpec = GridSpec()) -> MembershipReport:
    """Re(beta f/z + (1-beta) f') > 0 on the grid.  beta = 1 is the G_0 test
    Re(f/z) > 0, beta = 0 the bounded-turning test Re f' > 0."""
    if not 0.0 <= beta <= 1.0:
        raise BadParams(f"beta must lie in [0, 1], got {beta}")
    f = normalized(f)
    F = ring_values(a_beta_functional(f, beta), grid, "A_beta functional")
    return _report(F.real, grid, f"Re(beta f/z + (1-beta) f'), beta={beta:g}")


def coeff_sufficient_a_beta(f: PowerSeries, beta: float, variant: str = "AbsoluteSeries"):
    """Coefficient test for A_beta.  The terms are
    c_n = (n(beta-1) - beta) a_n + (n(1-beta) + 1) a_{n+1}, n >= 1.

    ``LiteralTelescoped`` returns |sum c_n| over the truncation,
    ``AbsoluteSeries`` returns sum |c_n|.  Returns (value <= 1, value).

    sum |c_n| <= 1 bounds |(beta f/z + (1-beta) f')(1-z) - 1| by 1 on the
    disk, which gives Re((1-z) F) > 0 for the functional F but not Re F > 0:
    f = z + z^2/2 + z^3/3 passes at beta = 0 while Re f' < 0 near |z| = 1.
    Treat a pass as evidence, not a certificate; check_a_beta decides.
    """
    if not 0.0 <= beta <= 1.0:
        raise BadParams(f"beta must lie in [0, 1], got {beta}")
    a = normalized(f).coeffs
    N = f.order
    n = np.arange(1, N + 1)
    a_next = np.concatenate([a[2:], [0.0]])
    c = (n * (beta - 1.0) - beta) * a[1:] + (n * (1.0 - beta) + 1.0) * a_next
    if variant == "LiteralTelescoped":
        value = float(abs(c.sum()))
    elif variant == "AbsoluteSeries":
        value = float(np.abs(c).sum())
    else:
        raise BadParams(f"unknown variant {variant!r}")
    return value <= 1.0, value


def _base_kernel(beta: float, order: int) -> PowerSeries:
    """z(1 - beta z)/(1-z)^2 = beta z/(1-z) + (1-beta) z/(1-z)^2; convolving
    with it gives beta f + (1-beta) z f'."""
    n = np.arange(order + 1)
    c = (beta + n * (1.0 - beta)).astype(complex)
    c[0] = 0.0
    return PowerSeries(c)


def a_beta_kernel(beta: float, zeta: complex, order: int) -> PowerSeries:
    """z(1 - beta z)/(1-z)^2 - z (1+zeta)/(1-zeta); the last term is the
    identity kernel z scaled by (1+zeta)/(1-zeta)."""
    c = _base_kernel(beta, order).coeffs.copy()
    c[1] -= (1 + zeta) / (1 - zeta)
    return PowerSeries(c)


def _winding(values: np.ndarray) -> tuple:
    """Winding number of a closed sampled curve about 0 and the largest phase step."""
    steps = np.angle(np.roll(values, -1) / values)
    return int(round(steps.sum() / (2 * math.pi))), float(np.abs(steps).max())


def hadamard_criterion_a_beta(f: PowerSeries, beta: float, zeta_samples: int = 64,
                              grid: GridSpec = GridSpec(), max_refine: int = 1 << 15) -> MembershipReport:
    """Convolution form of the A_beta test: f * K_{beta,zeta} must not vanish
    in the punctured disk for every unimodular zeta.

    f * K_zeta = (f * K_inf) - w_zeta z with K_inf = z(1-beta z)/(1-z)^2, so the
    base convolution is formed once.  It always has a simple zero at the
    origin; any further zero inside a ring shows up as a winding number
    above one (argument principle).  The witness is min |f * K| over the
    samples, negated when an extra zero was found.
    """
    if not 0.0 <= beta <= 1.0:
        raise BadParams(f"beta must lie in [0, 1], got {beta}")
    if zeta_samples < 16:
        raise BadParams("need at least 16 zeta samples")
    f = normalized(f)
    # psi = 0 is the pole of (1+zeta)/(1-zeta); |psi| < 2 pi / zeta_samples is skipped
    psi = 2 * math.pi * np.arange(1, zeta_samples) / zeta_samples
    zetas = np.exp(1j * psi)
    w = (1 + zetas) / (1 - zetas)
    base = hadamard(f, _base_kernel(beta, f.order))
    _check_tail(base, grid.rmax, "f * kernel")

    best = (math.inf, 0j)
    failure = None
    for ring, r in enumerate(grid.radii):
        samples = grid.angular_samples
        B = eval_ring(base, r, samples)
        z = r * np.exp(2j * math.pi * np.arange(samples) / samples)
        for j, wz in enumerate(w):
            v = B - wz * z
            wind, jump = _winding(v)
            m = samples
            while jump > 0.75 * math.pi and m < max_refine:
                m *= 2
                zz = r * np.exp(2j * math.pi * np.arange(m) / m)
                vv = eval_ring(base, r, m) - wz * zz
                wind, jump = _winding(vv)
            k = int(np.argmin(np.abs(v)))
            val = float(abs(v[k]))
            if val < best[0]:
                best = (val, complex(z[k]))
            if wind != 1 and failure is None:
                failure = (val, complex(z[k]), ring, j)
    name = f"|f * K_beta,zeta|, beta={beta:g}"
    if failure is not None:
        return MembershipReport(False, -failure[0], failure[1], name)
    return MembershipReport(best[0] > grid.margin, best[0], best[1], name)


def check_u_lambda(f: PowerSeries, lam: float, grid: GridSpec = GridSpec()) -> MembershipReport:
    """|f'(z) (z/f(z))^2 - 1| < lambda on the grid; witness = lambda - max."""
    if not 0.0 < lam <= 1.0:
        raise BadParams(f"lambda must lie in (0, 1], got {lam}")
    q, d = _quotient_and_derivative(f, grid)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        G = np.abs(d / q**2 - 1.0)
    G = np.where(np.isfinite(G), G, np.inf)
    idx = np.unravel_index(int(np.argmax(G)), G.shape)
    wmin = lam - float(G[idx])
    point = grid.radii[idx[0]] * np.exp(1j * grid.angles()[idx[1]])
    return MembershipReport(wmin > grid.margin, wmin, complex(point), f"lambda - |f'(z/f)^2 - 1|, lambda={lam:g}")


def bs_preimages(w, alpha):
    """Both solutions of alpha w t^2 + t - w = 0, i.e. t with t/(1 - alpha t^2) = w.

    The first is the branch that tends to w as alpha -> 0, written in the
    cancellation-free form 2w/(1 + sqrt(1 + 4 alpha w^2)); the second follows
    from the product of the roots, -1/alpha.
    """
    w = np.asarray(w, dtype=complex)
    t1 = 2 * w / (1 + np.sqrt(1 + 4 * alpha * w**2))
    if alpha == 0:
        return t1, np.full_like(t1, np.inf)
    with np.errstate(divide="ignore"):
        t2 = np.where(t1 == 0, np.inf, -1.0 / (alpha * np.where(t1 == 0, 1, t1)))
    return t1, t2


def log_derivative_values(f: PowerSeries, grid: GridSpec) -> np.ndarray:
    """z f'(z)/f(z) on the grid, evaluated pointwise as f'/(f/z)."""
    q, d = _quotient_and_derivative(f, grid)
    with np.errstate(divide="ignore", invalid="ignore"):
        return d / q


def check_bs_subordination(f: PowerSeries, alpha: float, grid: GridSpec = GridSpec()) -> MembershipReport:
    """(z f'/f - 1) subordinate to z/(1 - alpha z^2).  The target is univalent,
    so this is the same as every value w having a preimage inside the disk;
    the witness is 1 - max |preimage|."""
    if not 0.0 <= alpha < 1.0:
        raise BadParams(f"alpha must lie in [0, 1), got {alpha}")
    w = log_derivative_values(f, grid) - 1.0
    t1, t2 = bs_preimages(w, alpha)
    t = np.minimum(np.abs(t1), np.abs(t2))
    t = np.where(np.isfinite(t), t, np.inf)
    return _report(-t, grid, f"1 - |Psi^-1(zf'/f - 1)|, alpha={alpha:g}", offset=1.0)


def check_janowski_subordination(f: PowerSeries, A: float, B: float, grid: GridSpec = GridSpec()) -> MembershipReport:
    """z f'/f subordinate to (1+Az)/(1+Bz), via the Moebius inverse
    (w - 1)/(A - B w)."""
    if not -1.0 <= B < A <= 1.0:
        raise BadParams(f"need -1 <= B < A <= 1, got A={A}, B={B}")
    w = log_derivative_values(f, grid)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.abs((w - 1.0) / (A - B * w))
    t = np.where(np.isfinite(t), t, np.inf)
    return _report(-t, grid, f"1 - |phi^-1(zf'/f)|, A={A:g}, B={B:g}", offset=1.0)


def inclusion_rate_from_psi(psi: PowerSeries, grid: GridSpec = GridSpec()) -> float:
    """min over the grid of Re exp(int_0^z Psi(t)/t dt).  A positive value
    certifies F(Psi) in G_0 (for convex Psi) and is the semiflow decay rate."""
    E = exp_integral_transform(psi)
    return float(ring_values(E, grid, "exp transform").real.min())


def inclusion_rate_from_phi(phi: PowerSeries, grid: GridSpec = GridSpec()) -> float:
    """min over the grid of Re exp(int_0^z (phi(t)-1)/t dt), the real part of
    f/z for the Ma-Minda extremal of S*(phi)."""
    if abs(phi.coeffs[0] - 1.0) > 1e-12:
        raise BadParams("phi(0) must be 1")
    h = PowerSeries(np.concatenate([[0.0], phi.coeffs[1:]]))
    return inclusion_rate_from_psi(h, grid)


def sector_extension_angle(f: PowerSeries, grid: GridSpec = GridSpec()) -> float:
    """alpha = 1 - (2/pi) sup |arg(f/z)|, clamped to [0, 1]: the semiflow
    extends analytically to |arg t| < pi alpha / 2."""
    f = normalized(f)
    q = ring_values(f.shift_down(), grid, "f/z")
    small = np.abs(q) < 1e-12
    if small.any():
        idx = np.unravel_index(int(np.argmax(small)), q.shape)
        raise ArgUndefined(f"f/z vanishes near z = {grid.points()[idx]:.6g}")
    sup = float(np.abs(np.angle(q)).max())
    return min(1.0, max(0.0, 1.0 - 2.0 * sup / math.pi))


def generator_from_starlike(f: PowerSeries, grid: GridSpec = GridSpec()):
    """g = f / f', the generator of u(t, z) = f^-1(e^-t f(z)), and the G_0
    check of g."""
    f = normalized(f)
    g = multiply(f, reciprocal(derivative(f)))
    c = g.coeffs.copy()
    c[0], c[1] = 0.0, 1.0
    g = normalized(PowerSeries(c))
    return g, check_a_beta(g, 1.0, grid)
