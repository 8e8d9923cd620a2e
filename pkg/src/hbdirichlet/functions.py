"""Closed-form analytic functions on the unit disk.

Every function is an immutable value.  ``eval`` enforces ``|z| < 1``;
``boundary_values`` evaluates the representation on the circle itself,
which is legitimate because every shipped variant is given by a formula
that extends continuously to the closed disk (the radial limit equals the
value of the formula).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError, ValidationError
from .grids import UnitCircleGrid, is_power_of_two

#: Sarason's constant ``(3 - sqrt 5) / 2``.
S0 = (3.0 - math.sqrt(5.0)) / 2.0

DISK_MARGIN = 1e-12


def _as_coeffs(coeffs) -> np.ndarray:
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
    if c.ndim != 1 or c.size == 0:
        raise ValidationError("polynomial needs a nonempty 1-d coefficient sequence")
    c.setflags(write=False)
    return c


def _scalar_or_array(z, values):
    if np.ndim(z) == 0:
        return complex(values)
    return values


def _check_disk(z):
    zz = np.asarray(z, dtype=complex)
    if np.any(~np.isfinite(zz)) or np.any(np.abs(zz) >= 1.0):
        raise DomainError("evaluation point must satisfy |z| < 1")
    return zz


def polyroots(coeffs) -> np.ndarray:
    """Roots of an ascending-coefficient polynomial via companion-matrix eigenvalues."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    if c.size <= 1:
        return np.zeros(0, dtype=complex)
    return npoly.polyroots(c)


class AnalyticFunction:
    """Base class.  Subclasses implement ``_value`` and ``_deriv`` without domain checks."""

    kind = "abstract"

    def eval(self, z):
        zz = _check_disk(z)
        return _scalar_or_array(z, self._value(zz))

    __call__ = eval

    def derivative(self, z):
        zz = _check_disk(z)
        return _scalar_or_array(z, self._deriv(zz))

    def boundary_values(self, theta) -> np.ndarray:
        """Values of the representation at ``exp(i theta)`` (the radial limits)."""
        lam = np.exp(1j * np.asarray(theta, dtype=float))
        return self._value(lam)

    def boundary_derivative(self, theta) -> np.ndarray:
        lam = np.exp(1j * np.asarray(theta, dtype=float))
        return self._deriv(lam)

    def _value(self, z):
        raise NotImplementedError

    def _deriv(self, z):
        raise NotImplementedError

    def continuous_to_boundary(self) -> bool:
        """True when the formula is guaranteed continuous on the closed disk."""
        return False

    def to_descriptor(self) -> dict:
        raise ValidationError(f"{self.kind} functions have no descriptor form")

    def __mul__(self, other):
        if isinstance(other, AnalyticFunction):
            return Product(self, other)
        return Scaled(complex(other), self)

    def __rmul__(self, other):
        return Scaled(complex(other), self)


_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ah = _SPLIT * a
    ah = ah - (ah - a)
    bh = _SPLIT * b
    bh = bh - (bh - b)
    al, bl = a - ah, b - bh
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def compensated_horner(coeffs: np.ndarray, z) -> np.ndarray:
    """Horner's rule with error-free transformations (result as if in doubled precision).

    Cancellation-prone evaluations such as ``c (1 - z)`` near ``z = 1`` keep
    full relative accuracy this way.
    """
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    sr = np.full(z.shape, coeffs[-1].real)
    si = np.full(z.shape, coeffs[-1].imag)
    er = np.zeros(z.shape)
    ei = np.zeros(z.shape)
    for c in coeffs[-2::-1]:
        p1, e1 = _two_prod(sr, x)
        p2, e2 = _two_prod(si, y)
        p3, e3 = _two_prod(sr, y)
        p4, e4 = _two_prod(si, x)
        re, e5 = _two_sum(p1, -p2)
        im, e6 = _two_sum(p3, p4)
        sr, e7 = _two_sum(re, c.real)
        si, e8 = _two_sum(im, c.imag)
        er, ei = (er * x - ei * y) + (e1 - e2 + e5 + e7), (er * y + ei * x) + (e3 + e4 + e6 + e8)
    return (sr + er) + 1j * (si + ei)


_COMPENSATED_MAX_DEGREE = 64


def _pairs(c):
    return [[float(x.real), float(x.imag)] for x in c]


@dataclass(frozen=True, eq=False)
class Polynomial(AnalyticFunction):
    coeffs: np.ndarray
    kind = "poly"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def _value(self, z):
        if 1 <= self.coeffs.size - 1 <= _COMPENSATED_MAX_DEGREE:
            return compensated_horner(self.coeffs, z)
        return npoly.polyval(z, self.coeffs)

    def _deriv(self, z):
        if self.coeffs.size == 1:
            return np.zeros_like(np.asarray(z, dtype=complex))
        return npoly.polyval(z, npoly.polyder(self.coeffs))

    def roots(self) -> np.ndarray:
        return polyroots(self.coeffs)

    def continuous_to_boundary(self):
        return True

    def to_descriptor(self):
        return {"type": "poly", "coeffs": _pairs(self.coeffs)}


@dataclass(frozen=True, eq=False)
class Rational(AnalyticFunction):
    numerator: Polynomial
    denominator: Polynomial
    kind = "rational"

    def __post_init__(self):
        num = self.numerator if isinstance(self.numerator, Polynomial) else Polynomial(self.numerator)
        den = self.denominator if isinstance(self.denominator, Polynomial) else Polynomial(self.denominator)
        if not np.any(den.coeffs):
            raise ValidationError("rational denominator is identically zero")
        r = den.roots()
        if r.size and np.min(np.abs(r)) < 1.0 - DISK_MARGIN:
            raise ValidationError("rational denominator vanishes in the open unit disk")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def _value(self, z):
        return self.numerator._value(z) / self.denominator._value(z)

    def _deriv(self, z):
        n, d = self.numerator, self.denominator
        dv = d._value(z)
        return (n._deriv(z) * dv - n._value(z) * d._deriv(z)) / dv**2

    def continuous_to_boundary(self):
        r = self.denominator.roots()
        return bool(r.size == 0 or np.min(np.abs(r)) > 1.0 + DISK_MARGIN)

    def to_descriptor(self):
        return {"type": "rational", "num": self.numerator.to_descriptor(), "den": self.denominator.to_descriptor()}


@dataclass(frozen=True, eq=False)
class ExpPoly(AnalyticFunction):
    """``exp(exponent(z))``."""

    exponent: Polynomial
    kind = "exp_poly"

    def __post_init__(self):
        if not isinstance(self.exponent, Polynomial):
            object.__setattr__(self, "exponent", Polynomial(self.exponent))

    def _value(self, z):
        return np.exp(self.exponent._value(z))

    def _deriv(self, z):
        return self.exponent._deriv(z) * np.exp(self.exponent._value(z))

    def log_modulus_boundary(self, theta) -> np.ndarray:
        """``log|f|`` on the circle, computed without exponentiating."""
        lam = np.exp(1j * np.asarray(theta, dtype=float))
        return self.exponent._value(lam).real

    def continuous_to_boundary(self):
        return True

    def to_descriptor(self):
        return {"type": "exp_poly", "coeffs": _pairs(self.exponent.coeffs)}


@dataclass(frozen=True, eq=False)
class OuterFromSamples(AnalyticFunction):
    """Outer function built from sampled boundary log-modulus.

    Stored as ``exp(sum_k coeffs[k] z^k) * prod_s (1 - conj(zeta_s) z)^m_s``;
    the product carries the boundary zeros that were split off before the
    Fourier step, the exponential is the truncated analytic completion of
    the remaining smooth part.
    """

    log_modulus: np.ndarray
    coeffs: np.ndarray
    boundary_zeros: tuple = ()
    meta: dict = field(default_factory=dict)
    kind = "outer_samples"

    def __post_init__(self):
        lm = np.asarray(self.log_modulus, dtype=float).copy()
        if not is_power_of_two(lm.size) or lm.size < 256:
            raise ValidationError(f"outer grid size must be a power of two >= 256, got {lm.size}")
        lm.setflags(write=False)
        object.__setattr__(self, "log_modulus", lm)
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))
        object.__setattr__(
            self, "boundary_zeros", tuple((complex(z), int(m)) for z, m in self.boundary_zeros)
        )
        dc = npoly.polyder(self.coeffs) if self.coeffs.size > 1 else np.zeros(1, dtype=complex)
        object.__setattr__(self, "_dcoeffs", dc)

    @property
    def grid(self) -> UnitCircleGrid:
        return UnitCircleGrid(self.log_modulus.size)

    def _zero_factor(self, z):
        out = np.ones_like(np.asarray(z, dtype=complex))
        for zeta, m in self.boundary_zeros:
            out = out * (1.0 - np.conj(zeta) * z) ** m
        return out

    def _value(self, z):
        return np.exp(npoly.polyval(z, self.coeffs)) * self._zero_factor(z)

    def _deriv(self, z):
        logder = npoly.polyval(z, self._dcoeffs)
        for zeta, m in self.boundary_zeros:
            logder = logder - m * np.conj(zeta) / (1.0 - np.conj(zeta) * z)
        return self._value(z) * logder

    def value_at_zero(self) -> float:
        return float(np.exp(self.coeffs[0].real))


@dataclass(frozen=True, eq=False)
class Scaled(AnalyticFunction):
    constant: complex
    inner: AnalyticFunction
    kind = "scaled"

    def __post_init__(self):
        object.__setattr__(self, "constant", complex(self.constant))

    def _value(self, z):
        return self.constant * self.inner._value(z)

    def _deriv(self, z):
        return self.constant * self.inner._deriv(z)

    def continuous_to_boundary(self):
        return self.inner.continuous_to_boundary()

    def to_descriptor(self):
        c = self.constant
        return {"type": "scaled", "c": [c.real, c.imag], "inner": self.inner.to_descriptor()}


@dataclass(frozen=True, eq=False)
class Product(AnalyticFunction):
    left: AnalyticFunction
    right: AnalyticFunction
    kind = "product"

    def _value(self, z):
        return self.left._value(z) * self.right._value(z)

    def _deriv(self, z):
        return self.left._deriv(z) * self.right._value(z) + self.left._value(z) * self.right._deriv(z)

    def continuous_to_boundary(self):
        return self.left.continuous_to_boundary() and self.right.continuous_to_boundary()

    def to_descriptor(self):
        factors = []
        for side in (self.left, self.right):
            d = side.to_descriptor()
            factors.extend(d["factors"] if d["type"] == "product" else [d])
        return {"type": "product", "factors": factors}


def constant(c) -> Polynomial:
    return Polynomial([complex(c)])


def identity() -> Polynomial:
    return Polynomial([0.0, 1.0])


def sarason_b(zeta=1.0) -> Rational:
    zc = np.conj(complex(zeta))
    return Rational(Polynomial([0.0, (1 - S0) * zc]), Polynomial([1.0, -S0 * zc]))


def sarason_a(zeta=1.0) -> Rational:
    zc = np.conj(complex(zeta))
    return Rational(Polynomial([1 - S0, -(1 - S0) * zc]), Polynomial([1.0, -S0 * zc]))


def cauchy_kernel(w) -> Rational:
    """The Cauchy-Szego kernel ``1 / (1 - conj(w) z)``."""
    w = complex(w)
    if abs(w) >= 1:
        raise DomainError("kernel point must lie in the open disk")
    return Rational(Polynomial([1.0]), Polynomial([1.0, -np.conj(w)]))


def as_rational(f: AnalyticFunction):
    """``(numerator, denominator)`` coefficient arrays if ``f`` is rational, else ``None``."""
    if isinstance(f, Polynomial):
        return np.array(f.coeffs), np.array([1.0 + 0j])
    if isinstance(f, Rational):
        return np.array(f.numerator.coeffs), np.array(f.denominator.coeffs)
    if isinstance(f, Scaled):
        inner = as_rational(f.inner)
        if inner is None:
            return None
        return f.constant * inner[0], inner[1]
    if isinstance(f, Product):
        left, right = as_rational(f.left), as_rational(f.right)
        if left is None or right is None:
            return None
        return npoly.polymul(left[0], right[0]), npoly.polymul(left[1], right[1])
    return None


def hb_kernel(b: AnalyticFunction, w) -> Rational:
    """Reproducing kernel ``(1 - conj(b(w)) b(z)) / (1 - conj(w) z)`` for rational ``b``."""
    w = complex(w)
    if abs(w) >= 1:
        raise DomainError("kernel point must lie in the open disk")
    rat = as_rational(b)
    if rat is None:
        raise ValidationError("reproducing kernel is only built for rational b")
    num, den = rat
    bw = complex(b.eval(w))
    top = npoly.polysub(den, np.conj(bw) * num)
    bottom = npoly.polymul(den, [1.0, -np.conj(w)])
    return Rational(Polynomial(top), Polynomial(bottom))


def poly_divide_linear(p, zeta):
    """Synthetic division ``p(z) = (z - zeta) q(z) + r``.

    Returns ``(Polynomial q, complex r)``.
    """
    c = np.asarray(p.coeffs if isinstance(p, Polynomial) else p, dtype=complex)
    if not np.any(c):
        raise ValidationError("cannot divide the zero polynomial")
    zeta = complex(zeta)
    n = c.size - 1
    if n == 0:
        return Polynomial([0.0]), complex(c[0])
    q = np.empty(n, dtype=complex)
    q[n - 1] = c[n]
    for k in range(n - 1, 0, -1):
        q[k - 1] = c[k] + zeta * q[k]
    r = c[0] + zeta * q[0]
    return Polynomial(q), complex(r)


def _complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValidationError(f"complex scalar must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def from_descriptor(d: dict) -> AnalyticFunction:
    """Build a function from its JSON descriptor (coefficients ascending in degree)."""
    if not isinstance(d, dict) or "type" not in d:
        raise ValidationError("function descriptor must be an object with a 'type' field")
    t = d["type"]
    try:
        if t == "poly":
            return Polynomial([_complex(c) for c in d["coeffs"]])
        if t == "rational":
            num, den = from_descriptor(d["num"]), from_descriptor(d["den"])
            if not (isinstance(num, Polynomial) and isinstance(den, Polynomial)):
                raise ValidationError("rational num/den must be polynomial descriptors")
            return Rational(num, den)
        if t == "exp_poly":
            return ExpPoly(Polynomial([_complex(c) for c in d["coeffs"]]))
        if t in ("sarason_b", "sarason_a"):
            zeta = _complex(d.get("zeta", [1.0, 0.0]))
            if abs(abs(zeta) - 1.0) > 1e-12:
                raise DomainError("Sarason pair needs |zeta| = 1")
            return sarason_b(zeta) if t == "sarason_b" else sarason_a(zeta)
        if t == "product":
            factors = [from_descriptor(f) for f in d["factors"]]
            if not factors:
                raise ValidationError("product needs at least one factor")
            out = factors[0]
            for f in factors[1:]:
                out = Product(out, f)
            return out
        if t == "scaled":
            return Scaled(_complex(d["c"]), from_descriptor(d["inner"]))
    except KeyError as exc:
        raise ValidationError(f"descriptor of type {t!r} is missing field {exc}") from None
    raise ValidationError(f"unknown function type {t!r}")


def boundary_profile(f: AnalyticFunction, grid: UnitCircleGrid, radius: float = 1.0 - 1e-9) -> np.ndarray:
    """Samples ``f(radius * exp(i theta_k))`` over the grid."""
    if not 0.0 < radius <= 1.0 - DISK_MARGIN:
        raise DomainError("profile radius must lie in (0, 1 - 1e-12]")
    return np.asarray(f.eval(radius * grid.points))
