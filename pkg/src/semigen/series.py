"""Truncated complex power series.

A :class:`PowerSeries` holds the Taylor coefficients ``c_0 .. c_N`` of a
function analytic in the unit disk, truncated at degree ``N`` (its
``order``).  Binary operations between series of different orders return a
series of the smaller order, since coefficients beyond a truncation are
unknown rather than zero.

All operations are pure; coefficient arrays are stored read-only.

    >>> f = PowerSeries([0, 1, 1])          # z + z**2
    >>> f(1j)
    (-1+1j)
    >>> derivative(f).coeffs
    array([1.+0.j, 2.+0.j])
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import BadNormalization, BadRadius, NonVanishingConstant, ZeroConstantTerm

ZERO_TOL = 1e-12


def default_order() -> int:
    """Truncation order used when none is given (``SEMIGEN_ORDER`` overrides 128)."""
    return int(os.environ.get("SEMIGEN_ORDER", 128))


class PowerSeries:
    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size < 1:
            raise ValueError("a power series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("power series coefficients must be finite")
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self):
        return self._c.size

    def __getitem__(self, n):
        return self._c[n]

    def __call__(self, z):
        return eval_series(self, z)

    def __repr__(self):
        head = ", ".join(f"{x:.6g}" for x in self._c[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"{type(self).__name__}(order={self.order}, [{head}{tail}])"

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    __hash__ = None

    # arithmetic sugar; results are plain PowerSeries
    def _coerce(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order) + 1
            return self._c[:n], other._c[:n]
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            c = self._c.copy()
            c[0] += other
            return PowerSeries(c)
        return PowerSeries(pair[0] + pair[1])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self._c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return multiply(self, other)
        return PowerSeries(self._c * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return multiply(self, reciprocal(other))
        return PowerSeries(self._c / other)

    def truncate(self, order: int) -> "PowerSeries":
        return type(self)(self._c[: order + 1]) if order < self.order else self

    def shift_down(self) -> "PowerSeries":
        """f(z)/z for a series with vanishing constant term."""
        if abs(self._c[0]) > ZERO_TOL:
            raise NonVanishingConstant("f(0) != 0, f/z is not analytic")
        return PowerSeries(self._c[1:])

    def shift_up(self) -> "PowerSeries":
        """z*f(z); the order grows by one."""
        return PowerSeries(np.concatenate([[0.0], self._c]))

    def to_dict(self) -> dict:
        return {"order": self.order, "coeffs": [[float(x.real), float(x.imag)] for x in self._c]}

    @classmethod
    def from_dict(cls, d: dict) -> "PowerSeries":
        coeffs = [complex(re, im) for re, im in d["coeffs"]]
        if len(coeffs) != int(d["order"]) + 1:
            raise ValueError(f"order {d['order']} does not match {len(coeffs)} coefficients")
        return cls(coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "PowerSeries":
        return cls.from_dict(json.loads(text))


class NormalizedSeries(PowerSeries):
    """Series with ``c_0 = 0`` and ``c_1 = 1`` exactly (the class A normalization)."""

    __slots__ = ()

    def __init__(self, coeffs):
        super().__init__(coeffs)
        if self.order < 1 or self._c[0] != 0 or self._c[1] != 1:
            raise BadNormalization("normalized series need c0 = 0 and c1 = 1")


def normalized(f: PowerSeries) -> NormalizedSeries:
    if isinstance(f, NormalizedSeries):
        return f
    return NormalizedSeries(f.coeffs)


def eval_series(f: PowerSeries, z):
    """Horner evaluation of the truncation at ``z`` (scalar or array)."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for c in f.coeffs[::-1]:
        out = out * z + c
    return out[()] if out.ndim == 0 else out


def eval_ring(f: PowerSeries, r: float, samples: int) -> np.ndarray:
    """Values at ``r * exp(2j*pi*k/samples)``, k = 0..samples-1, via one FFT.

    Coefficients are folded modulo ``samples`` first, so the cost is linear in
    the order; this is what makes orders in the tens of thousands affordable
    on rings close to the unit circle.
    """
    n = f.order + 1
    scaled = f.coeffs * np.power(float(r), np.arange(n))
    pad = (-n) % samples
    folded = np.concatenate([scaled, np.zeros(pad, dtype=complex)]).reshape(-1, samples).sum(axis=0)
    return np.fft.ifft(folded) * samples


def tail_estimate(f: PowerSeries, r: float, window: int = 8) -> float:
    """Rough size of the neglected tail on |z| = r, assuming the last
    coefficients keep their size."""
    last = np.abs(f.coeffs[-window:]).max()
    if r >= 1.0:
        return np.inf if last > 0 else 0.0
    return float(last * r ** (f.order + 1) / (1.0 - r))


def derivative(f: PowerSeries) -> PowerSeries:
    if f.order < 1:
        raise ValueError("derivative needs order >= 1")
    n = np.arange(1, f.order + 1)
    return PowerSeries(n * f.coeffs[1:])


def antiderivative(f: PowerSeries) -> PowerSeries:
    """Term-by-term integral from 0; the order grows by one."""
    n = np.arange(1, f.order + 2)
    return PowerSeries(np.concatenate([[0.0], f.coeffs / n]))


def multiply(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    n = min(f.order, g.order) + 1
    return PowerSeries(np.convolve(f.coeffs[:n], g.coeffs[:n])[:n])


def reciprocal(f: PowerSeries) -> PowerSeries:
    c = f.coeffs
    if abs(c[0]) <= ZERO_TOL:
        raise ZeroConstantTerm(f"|c0| = {abs(c[0]):.3g} is too small to invert")
    N = f.order
    r = np.zeros(N + 1, dtype=complex)
    r[0] = 1.0 / c[0]
    for n in range(1, N + 1):
        r[n] = -np.dot(c[1 : n + 1], r[n - 1 :: -1]) * r[0]
    return PowerSeries(r)


def hadamard(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    n = min(f.order, g.order) + 1
    return PowerSeries(f.coeffs[:n] * g.coeffs[:n])


def log_deriv_ratio(f: PowerSeries) -> PowerSeries:
    """Series of z f'(z) / f(z) for normalized f; the constant term is 1."""
    f = normalized(f)
    q = f.shift_down()
    zfp_over_z = derivative(f)
    out = multiply(zfp_over_z, reciprocal(q))
    c = out.coeffs.copy()
    c[0] = 1.0
    return PowerSeries(c)


def exp_integral_transform(h: PowerSeries) -> PowerSeries:
    """exp( int_0^z h(t)/t dt ) for h with h(0) = 0.

    Uses n E_n = sum_{k=1..n} h_k E_{n-k}, which is the usual exp recurrence
    with the integrated coefficients h_k / k folded in.
    """
    c = h.coeffs
    if c[0] != 0:
        raise NonVanishingConstant("h(0) must vanish for int_0^z h(t)/t dt to exist")
    N = h.order
    E = np.zeros(N + 1, dtype=complex)
    E[0] = 1.0
    for n in range(1, N + 1):
        E[n] = np.dot(c[1 : n + 1], E[n - 1 :: -1]) / n
    return PowerSeries(E)


def rescale(f: PowerSeries, r: float) -> PowerSeries:
    """Coefficients c_n r^(n-1), i.e. f(rz)/r; keeps a normalized series normalized."""
    if not 0.0 < r <= 1.0:
        raise BadRadius(f"rescale radius must lie in (0, 1], got {r}")
    n = np.arange(f.order + 1)
    c = f.coeffs * np.power(float(r), n - 1.0)
    return type(f)(c) if isinstance(f, NormalizedSeries) else PowerSeries(c)


def geometric(order: int, ratio: complex = 1.0) -> PowerSeries:
    """1/(1 - ratio*z)."""
    return PowerSeries(np.power(complex(ratio), np.arange(order + 1)))


def identity(order: int) -> NormalizedSeries:
    c = np.zeros(order + 1, dtype=complex)
    c[1] = 1.0
    return NormalizedSeries(c)
