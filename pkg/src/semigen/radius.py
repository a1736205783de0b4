"""Radius and rate formulas, with a bisection oracle to check them.

The central object is the radius r(k, m): the largest r such that every
normalized f with Re(f/z) > k satisfies Re(z f'/f) > m on |z| <= r.  It has
three closed-form branches separated by k0(m) (where the first two agree)
and k1(m) (where the second degenerates).  For f in A_beta the lower bound
k = kappa(beta) applies, which gives the radius for A_beta.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    BadParams,
    BadRange,
    NegativeRadicand,
    NoRootInRange,
    OutOfStatedRange,
    TruncationWarning,
)
from .numerics import bisect, bisect_predicate, periodic_min, quad
from .series import PowerSeries, eval_series, log_deriv_ratio

RADICAND_SLACK = 1e-12
K1_WINDOW = 1e-8

CASE1, CASE2, CASE3 = "Case1", "Case2", "Case3Degenerate"


def _sqrt(x, what="radicand"):
    if x < 0:
        if x < -RADICAND_SLACK:
            raise NegativeRadicand(f"{what} = {x:.3g} < 0: parameters outside the formula's range")
        return 0.0
    return math.sqrt(x)


# ---------------------------------------------------------------- kappa

def _kappa_integrand(beta):
    s = 1.0 - beta

    # (1 - t^s)/(1 + t^s) = tanh(-s log(t)/2), which stays accurate as t -> 0
    def g(t):
        return math.tanh(-0.5 * s * math.log(t))

    return g


def kappa(beta: float) -> float:
    """Lower bound of Re(f/z) over A_beta: int_0^1 (1 - t^(1-beta))/(1 + t^(1-beta)) dt.
    Decreasing from 2 ln 2 - 1 at beta = 0 to 0 at beta = 1."""
    if not 0.0 <= beta <= 1.0:
        raise BadParams(f"beta must lie in [0, 1], got {beta}")
    if beta == 1.0:
        return 0.0
    return quad(_kappa_integrand(beta), 0.0, 1.0, split=1e-4)


# ---------------------------------------------------------------- k0, k1

def k0(m: float) -> float:
    """Transition value of k where the first two radius branches meet."""
    num = 2 * m**3 - 6 * m**2 + 9 * m - 6 + 2 * math.sqrt((m - 1) ** 4 * (m * (m - 2) + 4))
    den = 4 * m**3 - 21 * m**2 + 36 * m - 20  # = (m-2)^2 (4m-5) < 0 on [0, 1]
    return num / den


def k1(m: float) -> float:
    """Value of k where the second branch degenerates to sqrt((m-1)/(m-2))."""
    return (m * m - 4 * m + 4) / (m * m - 8 * m + 8)


def _check_km(k, m):
    if not 0.0 <= k <= 1.0:
        raise BadParams(f"k must lie in [0, 1], got {k}")
    if not 0.0 <= m <= 1.0:
        raise BadParams(f"m must lie in [0, 1], got {m}")


def radius_case1(k, m):
    """Smallest positive root of (2k-1)(1-m) r^2 - 2(1-2k+mk) r + (1-m).

    Written as (1-m)/((1-2k+mk) + sqrt(D)), the rationalised form of
    (2k - mk - 1 + sqrt(D))/((1-2k)(1-m)); it stays finite at k = 1/2 and
    gives the limit 0 at m = 1.
    """
    b = 1.0 - 2.0 * k + m * k
    D = _sqrt(b * b + (1.0 - 2.0 * k) * (1.0 - m) ** 2, "case 1 discriminant")
    den = b + D
    if den <= 0:
        return math.inf
    return (1.0 - m) / den


def radius_case1_printed(k, m):
    """The first branch exactly as usually displayed; singular at k = 1/2 and m = 1."""
    D = _sqrt((k - 1) * (k * (m - 2) ** 2 - (m - 2) * m - 2))
    return (2 * k - m * k - 1 + D) / ((1 - 2 * k) * (1 - m))


def radius_case2(k, m):
    num = m * m * (1 - k) - m * (2 - 6 * k) - 4 * k + 4 * _sqrt((m - 1) * (k - 1) * k)
    den = m * m * (1 - k) - m * (4 - 8 * k) - 8 * k + 4
    if den == 0:
        return radius_case3(m)
    return _sqrt(num / den, "case 2 radius squared")


def radius_case3(m):
    return math.sqrt((m - 1) / (m - 2))


@dataclass(frozen=True)
class RadiusQuery:
    k: float
    m: float

    def __post_init__(self):
        if not 0.0 <= self.k < 1.0:
            raise BadParams(f"k must lie in [0, 1), got {self.k}")
        if not 0.0 <= self.m <= 1.0:
            raise BadParams(f"m must lie in [0, 1], got {self.m}")

    def solve(self) -> "RadiusResult":
        return radius_ithm(self.k, self.m)


@dataclass(frozen=True)
class RadiusResult:
    r: float
    branch: str
    k: float
    m: float
    k0: float
    k1: float
    beta_star: float | None = None
    clamped: bool = False

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "branch": self.branch,
            "k": self.k,
            "m": self.m,
            "k0": self.k0,
            "k1": self.k1,
            "beta_star": self.beta_star,
            "clamped": self.clamped,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def radius_ithm(k: float, m: float) -> RadiusResult:
    """Radius for Re(f/z) > k and a target with inf Re(phi) = m.

    k in [0, k0]: first branch; k in (k0, 1]: second branch; k within 1e-8
    of k1: the degenerate third branch.  Values above 1 are clamped to 1
    (the bound never reaches m inside the disk) and flagged.
    """
    _check_km(k, m)
    a, b = k0(m), k1(m)
    if abs(k - b) < K1_WINDOW:
        r, branch = radius_case3(m), CASE3
    elif k <= a:
        r, branch = radius_case1(k, m), CASE1
    else:
        r, branch = radius_case2(k, m), CASE2
    clamped = r > 1.0
    return RadiusResult(min(r, 1.0), branch, k, m, a, b, clamped=clamped)


# ---------------------------------------------------------------- targets

_SG_M = 2.0 / (1.0 + math.e)


@dataclass(frozen=True)
class PhiTarget:
    """A Ma-Minda target phi.  ``tag`` is one of janowski, sg, parabolic,
    rhoexp, custom."""

    tag: str
    A: float = 0.0
    B: float = 0.0
    series: PowerSeries | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.tag not in ("janowski", "sg", "parabolic", "rhoexp", "custom"):
            raise BadParams(f"unknown target {self.tag!r}")
        if self.tag == "janowski" and not -1.0 <= self.B < self.A <= 1.0:
            raise BadParams(f"Janowski target needs -1 <= B < A <= 1, got A={self.A}, B={self.B}")
        if self.tag == "custom" and self.series is None:
            raise BadParams("custom target needs a series")

    @classmethod
    def janowski(cls, A, B):
        return cls("janowski", float(A), float(B))

    @classmethod
    def parse(cls, text: str, series_loader=None):
        """``janowski:A,B`` (or ``janowski:A=..,B=..``), ``sg``, ``parabolic``,
        ``rhoexp``, ``custom:file.json``."""
        tag, _, rest = text.partition(":")
        tag = tag.strip().lower()
        if tag == "janowski":
            parts = [p for p in rest.split(",") if p]
            if len(parts) != 2:
                raise BadParams("janowski target is written janowski:A,B")
            vals = {}
            for i, p in enumerate(parts):
                key, eq, val = p.partition("=")
                vals[key.strip() if eq else "AB"[i]] = float(val if eq else key)
            return cls.janowski(vals["A"], vals["B"])
        if tag == "custom":
            if series_loader is None:
                raise BadParams("custom targets need a series file")
            return cls("custom", series=series_loader(rest))
        if rest:
            raise BadParams(f"target {tag} takes no parameters")
        return cls(tag)

    def label(self) -> str:
        if self.tag == "janowski":
            return f"janowski:{self.A:g},{self.B:g}"
        return self.tag

    def value(self, z):
        z = np.asarray(z, dtype=complex)
        if self.tag == "janowski":
            return (1 + self.A * z) / (1 + self.B * z)
        if self.tag == "sg":
            return 2.0 / (1.0 + np.exp(-z))
        if self.tag == "rhoexp":
            return 1.0 + z * np.exp(z)
        if self.tag == "parabolic":
            s = np.sqrt(z)
            return 1.0 + (2.0 / math.pi**2) * np.log((1 + s) / (1 - s)) ** 2
        return eval_series(self.series, z)

    @cached_property
    def m(self) -> float:
        return phi_inf_re(self)


def phi_inf_re(target: PhiTarget, samples: int = 2048, method: str = "auto") -> float:
    """inf Re(phi) over the disk, i.e. the minimum over the unit circle.

    ``auto`` uses the closed forms where they exist (Janowski (1-A)/(1-B),
    parabolic 1/2, SG 2/(1+e)); ``sample`` forces boundary sampling with a
    golden-section polish, which is always used for rhoexp and custom.
    """
    if samples < 360:
        raise BadParams("phi_inf_re needs at least 360 samples")
    if method not in ("auto", "sample"):
        raise BadParams(f"unknown method {method!r}")
    if method == "auto":
        if target.tag == "janowski":
            return (1.0 - target.A) / (1.0 - target.B)
        if target.tag == "parabolic":
            return 0.5
        if target.tag == "sg":
            return _SG_M

    def re_phi(theta):
        with np.errstate(all="ignore"):
            v = target.value(np.exp(1j * np.asarray(theta))).real
        return np.where(np.isfinite(v), v, np.inf)

    # half-step offset keeps samples off boundary singularities at theta = 0
    step = 2 * math.pi / samples
    _, val = periodic_min(lambda t: re_phi(np.asarray(t) + 0.5 * step), samples, tol=1e-10)
    return float(val)


# ---------------------------------------------------------------- A_beta radii

@lru_cache(maxsize=256)
def beta_star(m: float, tol: float = 1e-10):
    """beta with kappa(beta) = k0(m), or None when k0(m) > kappa(0) (then the
    first branch holds for every beta)."""
    target = k0(m)
    if target > kappa(0.0):
        return None
    return bisect(lambda b: kappa(b) - target, 0.0, 1.0, tol=tol)


def radius_a_beta(beta: float, target: PhiTarget) -> RadiusResult:
    """Radius of S*(phi) for the class A_beta: radius_ithm(kappa(beta), m)."""
    k = kappa(beta)
    res = radius_ithm(k, target.m)
    return RadiusResult(res.r, res.branch, res.k, res.m, res.k0, res.k1, beta_star(target.m), res.clamped)


def k0_janowski(A, B):
    """k0((1-A)/(1-B)) written in A and B."""
    poly = -1 - 3 * A - 2 * A**3 + 6 * (1 + A + A * A) * B - 9 * (1 + A) * B * B + 6 * B**3
    root = 2 * (A - B) ** 2 * math.sqrt(3 + A * A - 2 * (3 + A) * B + 4 * B * B)
    return (poly + root) / ((1 + A - 2 * B) ** 2 * (5 * B - 4 * A - 1))


def radius_janowski_closed_form(beta: float, A: float, B: float) -> RadiusResult:
    """Radius of S*[A, B] for A_beta from the explicit Janowski expressions,
    without passing through m."""
    if not -1.0 <= B < A <= 1.0:
        raise BadParams(f"need -1 <= B < A <= 1, got A={A}, B={B}")
    kap = kappa(beta)
    t0 = k0_janowski(A, B)
    t1 = (1 + A - 2 * B) ** 2 / (1 + A * A + A * (6 - 8 * B) - 8 * (1 - B) * B)
    m = (1 - A) / (1 - B)
    if abs(kap - t1) < K1_WINDOW:
        r, branch = math.sqrt((A - B) / (1 + A - 2 * B)), CASE3
    elif kap <= t0:
        P = _sqrt((1 - kap) * (1 + A * A - 2 * B - 2 * A * B + 2 * B * B - (1 + A - 2 * B) ** 2 * kap))
        r, branch = (A - B) / (P + (1 - B) - (1 + A - 2 * B) * kap), CASE1
    else:
        num = (4 * _sqrt((A - B) * (1 - B) ** 3 * (1 - kap) * kap)
               - (1 - A) * (1 + A - 2 * B)
               + (1 - A * (4 + A) + 2 * B + 6 * A * B - 4 * B * B) * kap)
        den = (1 + A - 2 * B) ** 2 - (1 + A * A + A * (6 - 8 * B) - 8 * (1 - B) * B) * kap
        r, branch = _sqrt(num / den, "Janowski radius squared"), CASE2
    bstar = None if t0 > kappa(0.0) else bisect(lambda b: kappa(b) - t0, 0.0, 1.0, tol=1e-10)
    return RadiusResult(min(r, 1.0), branch, kap, m, t0, t1, bstar, r > 1.0)


# ---------------------------------------------------------------- Tuan-Anh lemma

@dataclass(frozen=True)
class TuanAnhBound:
    bound: float
    branch: str
    R1: float
    R2: float
    a: float
    cos_theta: float | None = None

    def to_dict(self):
        return dict(self.__dict__)


def _lemma_parts(alpha, r):
    if not 0.0 <= alpha < 1.0:
        raise BadRange(f"alpha must lie in [0, 1), got {alpha}")
    if not 0.0 <= r < 1.0:
        raise BadRange(f"r must lie in [0, 1), got {r}")
    R1 = math.sqrt((alpha - alpha * (2 * alpha - 1) * r * r) / (1 - r * r))
    R2 = (1 + (2 * alpha - 1) * r) / (1 + r)
    a = (1 - (2 * alpha - 1) * r * r) / (1 - r * r)
    return R1, R2, a


def tuan_anh_bound(alpha: float, r: float) -> TuanAnhBound:
    """Sharp lower bound of Re((1-alpha) z p'/(alpha + (1-alpha) p)) on |z| = r
    over Caratheodory functions p."""
    R1, R2, a = _lemma_parts(alpha, r)
    if R1 <= R2:
        b = -2 * (1 - alpha) * r / ((1 + (2 * alpha - 1) * r) * (1 + r))
        return TuanAnhBound(b, "R1leR2", R1, R2, a)
    b = -alpha / (1 - alpha) + (2 * R1 - a) / (1 - alpha)
    try:
        roots = eqnf3_cos_theta(alpha, r)
        c = roots[0]
    except NoRootInRange:
        c = None
    return TuanAnhBound(b, "R2leR1", R1, R2, a, c)


def extremal_angle_coefficients(alpha, r, variant="derived"):
    """Coefficients (c2, c1, c0) of the extremal condition as a quadratic in
    c = cos(theta).

    With Q = 2 R1 - a - alpha the condition reads
        Q (2 alpha - 1) r^4 - 2c (Q (3 alpha - 1) + (1-alpha)^2) r^3
        + (2 alpha Q (1 + 2c^2) + 4 (1-alpha)^2) r^2
        - 2c (Q (1 + alpha) + (1-alpha)^2) r + Q = 0,
    obtained by equating the functional of the two-point extremal at z = r to
    the bound.  ``printed`` drops the factor Q on the r^4 term; that variant
    only agrees at alpha = 1/2 and is kept for comparison.
    """
    R1, R2, a = _lemma_parts(alpha, r)
    Q = 2 * R1 - a - alpha
    s = (1 - alpha) ** 2
    lead = (2 * alpha - 1) * r**4 * (Q if variant == "derived" else 1.0)
    if variant not in ("derived", "printed"):
        raise BadParams(f"unknown variant {variant!r}")
    c2 = 4 * alpha * Q * r * r
    c1 = -2 * (Q * (3 * alpha - 1) + s) * r**3 - 2 * (Q * (1 + alpha) + s) * r
    c0 = lead + (2 * alpha * Q + 4 * s) * r * r + Q
    return c2, c1, c0


def eqnf3_cos_theta(alpha: float, r: float, variant: str = "derived", scan: int = 401) -> list:
    """Real roots in [-1, 1] of the extremal condition for cos(theta).

    Sign changes on a scan grid are refined by bisection.  At the extremum
    the condition has a double root (the bound is a minimum over theta), so
    the vertex of the quadratic is also accepted when the polynomial nearly
    vanishes there.
    """
    R1, R2, _ = _lemma_parts(alpha, r)
    if R1 <= R2:
        raise BadRange("cos(theta) is only defined in the R2 <= R1 regime")
    c2, c1, c0 = extremal_angle_coefficients(alpha, r, variant)

    def g(c):
        return (c2 * c + c1) * c + c0

    scale = abs(c2) + abs(c1) + abs(c0)
    xs = np.linspace(-1.0, 1.0, scan)
    gs = g(xs)
    roots = []
    for x0, x1, g0, g1 in zip(xs[:-1], xs[1:], gs[:-1], gs[1:]):
        if g0 == 0:
            roots.append(float(x0))
        elif g0 * g1 < 0:
            roots.append(bisect(g, float(x0), float(x1), tol=1e-14))
    if gs[-1] == 0:
        roots.append(1.0)
    if c2 != 0:
        v = -c1 / (2 * c2)
        if -1.0 <= v <= 1.0 and abs(g(v)) <= 1e-8 * scale:
            roots = [x for x in roots if abs(x - v) > 1e-6] + [v]
    roots = sorted(roots)
    merged = []
    for x in roots:
        if not merged or abs(x - merged[-1]) > 1e-8:
            merged.append(x)
    if not merged:
        raise NoRootInRange(f"no cos(theta) in [-1, 1] for alpha={alpha}, r={r} ({variant})")
    return merged


def lemma_functional_min(p: PowerSeries, alpha: float, r: float, samples: int = 2048) -> float:
    """min over |z| = r of Re((1-alpha) z p'/(alpha + (1-alpha) p))."""
    from .series import derivative

    dp = derivative(p)

    def re_func(theta):
        z = r * np.exp(1j * np.asarray(theta))
        return ((1 - alpha) * z * eval_series(dp, z) / (alpha + (1 - alpha) * eval_series(p, z))).real

    return periodic_min(re_func, samples, tol=1e-10)[1]


# ---------------------------------------------------------------- oracle

def _trust_radius(series: PowerSeries, tol=1e-12, cap=0.999):
    last = float(np.abs(series.coeffs[-8:]).max())
    if last == 0.0:
        return cap
    r = cap
    for _ in range(3):
        r = min(cap, (tol * (1 - r) / last) ** (1.0 / (series.order + 1)))
    return r


def starlike_min_on_circle(L: PowerSeries, r: float, samples: int = 1024) -> float:
    """min over |z| = r of Re L(z)."""
    return periodic_min(lambda th: eval_series(L, r * np.exp(1j * np.asarray(th))).real, samples, tol=1e-11)[1]


def radius_numeric_oracle(f: PowerSeries, m: float, tol: float = 1e-8, samples: int = 1024) -> float:
    """Largest r with min over |z| = r of Re(z f'/f) >= m, by bisection in r.

    Independent of the closed forms: it only evaluates z f'/f.  The search is
    confined to radii where the truncated series is trustworthy; 1 is
    returned when the condition still holds at 0.999.
    """
    if not 1e-12 < tol < 1e-2:
        raise BadParams(f"tol must lie in (1e-12, 1e-2), got {tol}")
    L = log_deriv_ratio(f)
    hi = _trust_radius(L)

    def ok(r):
        return starlike_min_on_circle(L, r, samples) >= m

    if ok(hi):
        if hi >= 0.999:
            return 1.0
        warnings.warn(f"condition holds up to the trust radius {hi:.4f}; raise the order", TruncationWarning)
        return hi
    return bisect_predicate(ok, 0.0, hi, tol=tol)


# ---------------------------------------------------------------- decay rates

@dataclass(frozen=True)
class ClassSpec:
    """A function class and its parameters, e.g. ClassSpec("janowski", {"A": 0, "B": -1})."""

    kind: str
    params: dict = field(default_factory=dict, compare=True, hash=False)

    def get(self, name):
        if name not in self.params:
            raise BadParams(f"class {self.kind} needs parameter {name}")
        return float(self.params[name])


BS_ALPHA_MAX = 3.0 - 2.0 * math.sqrt(2.0)
_EDGE = 1e-12


def decay_rate(spec: ClassSpec) -> float:
    """Rate k with |u(t, z)| <= exp(-k t) |z| for semiflows generated by the class."""
    kind = spec.kind
    if kind == "janowski":
        A, B = spec.get("A"), spec.get("B")
        if not -1.0 <= B < A <= 0.0:
            raise OutOfStatedRange(f"Janowski rate needs -1 <= B < A <= 0, got A={A}, B={B}")
        return (1.0 - B) ** ((A - B) / B)
    if kind == "starlike_order":
        a = spec.get("alpha")
        if not 0.5 <= a < 1.0:
            raise OutOfStatedRange(f"starlike order needs 1/2 <= alpha < 1, got {a}")
        return decay_rate(ClassSpec("janowski", {"A": 1 - 2 * a, "B": -1.0}))
    if kind == "bs":
        a = spec.get("alpha")
        if not 0.0 < a <= BS_ALPHA_MAX + _EDGE:
            raise OutOfStatedRange(f"BS rate needs 0 < alpha <= 3 - 2 sqrt 2, got {a}")
        s = math.sqrt(a)
        return ((1 - s) / (1 + s)) ** (1 / (2 * s))
    if kind == "u":
        lam = spec.get("lambda")
        if not 0.0 < lam <= 1.0 / 3.0 + _EDGE:
            raise OutOfStatedRange(f"U(lambda) rate needs 0 < lambda <= 1/3, got {lam}")
        return max(0.0, (1 - 3 * lam) / (2 * lam * lam - 4 * lam + 2))
    raise BadParams(f"no decay rate for class {kind!r}")


def convexity_radius_fpsi1() -> float:
    """Positive root below 1 of r^4 - 6 r^2 + 1, the radius of convexity of
    -2z/(1 - z^2)."""
    return bisect(lambda r: r**4 - 6 * r**2 + 1, 0.0, 1.0, tol=1e-15)
