"""Named functions, kernels and extremals, plus random class members.

Every constructor returns a truncated series.  Where the Taylor coefficients
have a closed form they are written down directly, so building a series of
order 30000 costs O(N); only the Ma-Minda extremal goes through the
exponential recurrence.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadNormalization, BadParams, BadWeights
from .series import NormalizedSeries, PowerSeries, default_order, exp_integral_transform


class NamedFunctionId(enum.Enum):
    HalfPlaneExtremal = "half_plane"
    StarlikeNonGenerator = "starlike_nongen"
    Koebe = "koebe"
    ULambdaExtremal = "ulambda"
    HypergeometricExtremal = "hyper"
    BernardiKernel = "bernardi"
    LogKernel = "log"
    XLogKernel = "xlog"
    MaMindaExtremal = "maminda"
    TwoPointHerglotz = "twopoint"


# CLI parameter names accepted per function
PARAMS = {
    NamedFunctionId.HalfPlaneExtremal: (),
    NamedFunctionId.StarlikeNonGenerator: (),
    NamedFunctionId.Koebe: (),
    NamedFunctionId.ULambdaExtremal: ("lambda",),
    NamedFunctionId.HypergeometricExtremal: ("beta",),
    NamedFunctionId.BernardiKernel: ("gamma",),
    NamedFunctionId.LogKernel: (),
    NamedFunctionId.XLogKernel: ("x",),
    NamedFunctionId.MaMindaExtremal: ("A", "B", "alpha"),
    NamedFunctionId.TwoPointHerglotz: ("theta", "k"),
}


def lookup(name: str) -> NamedFunctionId:
    try:
        return NamedFunctionId(name)
    except ValueError:
        pass
    try:
        return NamedFunctionId[name]
    except KeyError:
        names = ", ".join(t.value for t in NamedFunctionId)
        raise BadParams(f"unknown function {name!r}; known: {names}") from None


def _n(order):
    return np.arange(order + 1)


def half_plane_extremal(order):
    """z(1+z)/(1-z) = z + 2z^2 + 2z^3 + ..."""
    c = np.full(order + 1, 2.0, dtype=complex)
    c[0], c[1] = 0.0, 1.0
    return NormalizedSeries(c)


def starlike_non_generator(order):
    """z/(1-z+z^2); since 1/(1-z+z^2) = (1+z)/(1+z^3) the coefficients repeat
    with period 6."""
    period = np.array([1, 1, 0, -1, -1, 0], dtype=complex)
    c = np.zeros(order + 1, dtype=complex)
    c[1:] = np.resize(period, order)
    return NormalizedSeries(c)


def koebe(order):
    return NormalizedSeries(_n(order).astype(complex))


def u_lambda_extremal(lam, order):
    """z/((1+z)(1+lam z)); partial fractions give the coefficients."""
    if not 0.0 < lam <= 1.0:
        raise BadParams(f"lambda must lie in (0, 1], got {lam}")
    k = np.arange(order)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    if lam == 1.0:
        body = sign * (k + 1)
    else:
        body = sign * (1.0 - lam ** (k + 1)) / (1.0 - lam)
    return NormalizedSeries(np.concatenate([[0.0], body]))


def hypergeometric_extremal(beta, order):
    """Sharpness function of the coefficient criterion:
    z + sum 2/(n - (n-1) beta) z^n, which is z(1+z)/(1-z) at beta = 1."""
    if not 0.0 <= beta <= 1.0:
        raise BadParams(f"beta must lie in [0, 1], got {beta}")
    n = _n(order).astype(float)
    c = np.zeros(order + 1, dtype=complex)
    c[2:] = 2.0 / (n[2:] - (n[2:] - 1.0) * beta)
    c[1] = 1.0
    return NormalizedSeries(c)


def bernardi_kernel(gamma, order):
    """sum (1+gamma)/(n+gamma) z^n, convex for Re gamma >= -1/2."""
    gamma = complex(gamma)
    if gamma.real < -0.5:
        raise BadParams(f"Bernardi kernel needs Re gamma >= -1/2, got {gamma}")
    n = _n(order)
    c = np.zeros(order + 1, dtype=complex)
    c[1:] = (1.0 + gamma) / (n[1:] + gamma)
    c[1] = 1.0
    return NormalizedSeries(c)


def log_kernel(order):
    """-log(1-z); the Alexander operator as a Hadamard product."""
    return bernardi_kernel(0.0, order)


def xlog_kernel(x, order):
    """log((1-xz)/(1-z)) / (1-x) = sum (1-x^n)/((1-x) n) z^n."""
    x = complex(x)
    if abs(x) > 1.0 + 1e-12 or abs(x - 1.0) < 1e-12:
        raise BadParams(f"x-log kernel needs |x| <= 1 and x != 1, got {x}")
    n = _n(order)[1:]
    c = np.zeros(order + 1, dtype=complex)
    c[1:] = (1.0 - x ** n) / ((1.0 - x) * n)
    c[1] = 1.0
    return NormalizedSeries(c)


def janowski_phi(A, B, order):
    """(1+Az)/(1+Bz)."""
    n = _n(order)[1:]
    c = np.ones(order + 1, dtype=complex)
    c[1:] = (A - B) * (-B) ** (n - 1)
    return PowerSeries(c)


def booth_psi(alpha, order):
    """z/(1 - alpha z^2), the target of BS(alpha) after subtracting 1."""
    c = np.zeros(order + 1, dtype=complex)
    k = np.arange(1, order + 1, 2)
    c[k] = alpha ** ((k - 1) // 2)
    return PowerSeries(c)


def ma_minda_extremal(phi: PowerSeries) -> NormalizedSeries:
    """z exp(int_0^z (phi(t)-1)/t dt), the extremal function of S*(phi).
    With phi = 1 + Psi this is also the extremal of F(Psi)."""
    if abs(phi.coeffs[0] - 1.0) > 1e-12:
        raise BadParams("phi(0) must be 1")
    h = phi - 1.0
    h = PowerSeries(np.concatenate([[0.0], h.coeffs[1:]]))
    E = exp_integral_transform(h)
    c = np.concatenate([[0.0], E.coeffs])
    c[1] = 1.0
    return NormalizedSeries(c[: phi.order + 1])


def two_point_herglotz(theta, order):
    """(1/2)[(1+z e^{-i theta})/(1-z e^{-i theta}) + (1+z e^{i theta})/(1-z e^{i theta})]."""
    return herglotz_p(HerglotzSpec((cmath.exp(1j * theta), cmath.exp(-1j * theta)), (0.5, 0.5)), order)


def second_branch_extremal(k, theta, order):
    """k z + (1-k) z p(z) with p the two-point Herglotz function."""
    p = two_point_herglotz(theta, order - 1)
    c = np.concatenate([[0.0], (1.0 - k) * p.coeffs])
    c[1] = 1.0
    return NormalizedSeries(c)


def first_branch_extremal(k, order):
    """z (1 + (2k-1) z)/(1 + z)."""
    n = _n(order)
    c = np.zeros(order + 1, dtype=complex)
    # (1 + (2k-1)z)/(1+z) = 1 + (2k-2) z/(1+z)
    c[1] = 1.0
    c[2:] = (2.0 * k - 2.0) * np.where(n[2:] % 2 == 0, 1.0, -1.0)
    return NormalizedSeries(c)


def make_named(fid, order=None, **params) -> PowerSeries:
    """Series for a named function.  ``fid`` is a :class:`NamedFunctionId`
    or its registry string."""
    if isinstance(fid, str):
        fid = lookup(fid)
    order = default_order() if order is None else int(order)
    if order < 2:
        raise BadParams("order must be at least 2")
    unknown = set(params) - set(PARAMS[fid])
    if unknown:
        raise BadParams(f"{fid.value} does not take {sorted(unknown)}")

    def need(name):
        if name not in params:
            raise BadParams(f"{fid.value} needs parameter {name}")
        return params[name]

    F = NamedFunctionId
    if fid is F.HalfPlaneExtremal:
        return half_plane_extremal(order)
    if fid is F.StarlikeNonGenerator:
        return starlike_non_generator(order)
    if fid is F.Koebe:
        return koebe(order)
    if fid is F.ULambdaExtremal:
        return u_lambda_extremal(float(need("lambda")), order)
    if fid is F.HypergeometricExtremal:
        return hypergeometric_extremal(float(need("beta")), order)
    if fid is F.BernardiKernel:
        return bernardi_kernel(need("gamma"), order)
    if fid is F.LogKernel:
        return log_kernel(order)
    if fid is F.XLogKernel:
        return xlog_kernel(need("x"), order)
    if fid is F.MaMindaExtremal:
        if "alpha" in params:
            alpha = float(params["alpha"])
            if not 0.0 <= alpha < 1.0:
                raise BadParams(f"alpha must lie in [0, 1), got {alpha}")
            return ma_minda_extremal(1.0 + booth_psi(alpha, order))
        A, B = float(need("A")), float(need("B"))
        if not -1.0 <= B < A <= 1.0:
            raise BadParams(f"Janowski parameters need -1 <= B < A <= 1, got A={A}, B={B}")
        return ma_minda_extremal(janowski_phi(A, B, order))
    if fid is F.TwoPointHerglotz:
        theta = float(need("theta"))
        if "k" in params:
            k = float(params["k"])
            if not 0.0 <= k < 1.0:
                raise BadParams(f"k must lie in [0, 1), got {k}")
            return second_branch_extremal(k, theta, order)
        return two_point_herglotz(theta, order)
    raise BadParams(f"no constructor for {fid}")  # pragma: no cover


@dataclass(frozen=True)
class HerglotzSpec:
    points: tuple
    weights: tuple

    def __post_init__(self):
        pts = tuple(complex(x) for x in self.points)
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        if len(pts) != len(w) or not pts:
            raise BadWeights("need one weight per point")
        if any(x <= 0 for x in w) or abs(sum(w) - 1.0) > 1e-12:
            raise BadWeights(f"weights must be positive and sum to 1, got {w}")
        if any(abs(abs(x) - 1.0) > 1e-12 for x in pts):
            raise BadWeights("Herglotz points must be unimodular")


def herglotz_p(spec: HerglotzSpec, order=None) -> PowerSeries:
    """p(z) = sum_j w_j (1 + conj(x_j) z)/(1 - conj(x_j) z); p(0) = 1 and
    Re p > 0 in the open disk."""
    order = default_order() if order is None else int(order)
    n = _n(order)
    c = np.zeros(order + 1, dtype=complex)
    for x, w in zip(spec.points, spec.weights):
        c += 2.0 * w * np.conj(x) ** n
    c[0] = 1.0
    return PowerSeries(c)


def a_beta_functional(f: PowerSeries, beta: float) -> PowerSeries:
    """Series of beta f(z)/z + (1-beta) f'(z); order drops by one."""
    n = np.arange(1, f.order + 1)
    return PowerSeries((beta + n * (1.0 - beta)) * f.coeffs[1:])


def solve_a_beta_from_p(p: PowerSeries, beta: float) -> NormalizedSeries:
    """The normalized f with beta f/z + (1-beta) f' = p."""
    if not 0.0 <= beta <= 1.0:
        raise BadParams(f"beta must lie in [0, 1], got {beta}")
    if abs(p.coeffs[0] - 1.0) > 1e-12:
        raise BadNormalization(f"p(0) must be 1, got {p.coeffs[0]}")
    n = np.arange(1, p.order + 2)
    c = np.concatenate([[0.0], p.coeffs / (beta + n * (1.0 - beta))])
    c[1] = 1.0
    return NormalizedSeries(c)


def random_herglotz(rng: np.random.Generator, atoms=(2, 5)) -> HerglotzSpec:
    m = int(rng.integers(atoms[0], atoms[1] + 1))
    angles = rng.uniform(0.0, 2 * math.pi, m)
    w = rng.dirichlet(np.ones(m))
    w = w / w.sum()
    # renormalise the last weight so the sum is 1 to rounding
    w[-1] = 1.0 - w[:-1].sum()
    return HerglotzSpec(tuple(np.exp(1j * angles)), tuple(w))


def random_a_beta_member(beta, rng, order=None) -> NormalizedSeries:
    """Random member of A_beta, built from a random Herglotz function so that
    membership holds strictly."""
    order = default_order() if order is None else int(order)
    p = herglotz_p(random_herglotz(rng), order - 1)
    return solve_a_beta_from_p(p, beta)


def parse_value(text: str):
    """Parse a CLI parameter value: float, or complex written with ``i``/``j``."""
    t = text.strip().replace(" ", "")
    try:
        return float(t)
    except ValueError:
        pass
    t = t.replace("i", "j")
    if t in ("j", "+j"):
        return 1j
    if t == "-j":
        return -1j
    try:
        return complex(t)
    except ValueError:
        raise BadParams(f"cannot parse parameter value {text!r}") from None


def parse_function_spec(text: str, extra_params=()):
    """``name:key=value,key=value`` -> (NamedFunctionId, params)."""
    name, _, rest = text.partition(":")
    params = {}
    items = [s for s in rest.split(",") if s] + list(extra_params)
    for item in items:
        key, eq, value = item.partition("=")
        if not eq:
            raise BadParams(f"parameter {item!r} is not key=value")
        params[key.strip()] = parse_value(value)
    return lookup(name.strip()), params
