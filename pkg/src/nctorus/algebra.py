"""Twisted polynomial arithmetic in the rotation algebra.

Elements are finite sums ``sum c[m, n] U**m V**n`` kept in normal order
(powers of U to the left). The generators obey

    U V = exp(2 pi i lam) V U,

so moving V**a to the right of U**b costs the factor ``omega**(-a*b)`` with
``omega = exp(2 pi i lam)``. That single rule, `reorder_phase`, is the only
place the sign convention lives; the matrix representations and the
projection builder import it from here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import InvalidParameterError, ParameterMismatchError

#: coefficients below this magnitude are dropped after every operation
PRUNE_THRESHOLD = 1e-30

# lam = hi + lo with hi on a 2**-26 grid, so k*hi is an exact integer
# multiple of 2**-26 for |k| < 2**27 and the reduction mod 1 loses nothing.
_SPLIT_BITS = 26
_SPLIT = 1 << _SPLIT_BITS
_MAX_SPLIT_K = 1 << 27


@dataclass(frozen=True)
class RotationParameter:
    """The rotation angle ``lam`` in [0, 1), in units of full turns.

    ``exact`` holds the reduced fraction ``(p, q)`` when the angle is known
    to be rational. A parameter without it is treated as irrational; that is
    a proxy, since every float is rational, and the guarantees that depend
    on it hold only at the resolution of whatever tolerance is in play.
    """

    value: float
    exact: tuple[int, int] | None = None

    def __post_init__(self):
        if self.exact is not None:
            p, q = self.exact
            if q < 1 or not 0 <= p < q or math.gcd(p, q) != 1:
                raise InvalidParameterError(f"exact parameter must be a reduced p/q in [0,1), got {p}/{q}")
            if self.value != p / q:
                raise InvalidParameterError(f"value {self.value!r} does not equal {p}/{q}")
        elif not (0.0 <= self.value < 1.0) or math.isnan(self.value):
            raise InvalidParameterError(f"rotation parameter must lie in [0, 1), got {self.value!r}")

    @classmethod
    def rational(cls, p: int, q: int) -> "RotationParameter":
        """Exact parameter p/q, reduced and brought into [0, 1)."""
        if q == 0:
            raise InvalidParameterError("denominator must be nonzero")
        fr = Fraction(p, q)
        fr -= math.floor(fr)
        p, q = fr.numerator, fr.denominator
        return cls(p / q, (p, q))

    @classmethod
    def from_float(cls, x: float) -> "RotationParameter":
        x = float(x)
        if x == 0.0:
            # the commutative point is always carried exactly
            return cls.rational(0, 1)
        return cls(x)

    @classmethod
    def parse(cls, text: str) -> "RotationParameter":
        """``"p/q"`` gives an exact parameter, a decimal gives a floating one."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            try:
                return cls.rational(int(num), int(den))
            except ValueError as exc:
                if isinstance(exc, InvalidParameterError):
                    raise
                raise InvalidParameterError(f"cannot parse rational {text!r}") from None
        try:
            x = float(text)
        except ValueError:
            raise InvalidParameterError(f"cannot parse rotation parameter {text!r}") from None
        return cls.from_float(x)

    @property
    def is_rational(self) -> bool:
        return self.exact is not None

    @property
    def is_irrational_proxy(self) -> bool:
        return self.exact is None

    def frac_multiple(self, k):
        """``k * lam mod 1`` in [0, 1) for an integer or integer array ``k``.

        Exact for rational parameters; within a few ulp for floating ones
        whenever ``|k| < 2**27``.
        """
        k_arr = np.asarray(k, dtype=np.int64)
        if self.exact is not None:
            p, q = self.exact
            r = np.mod(k_arr * p, q) / q
        else:
            if k_arr.size and np.max(np.abs(k_arr)) >= _MAX_SPLIT_K:
                r = np.vectorize(self._frac_multiple_slow, otypes=[float])(k_arr)
            else:
                hi_num = math.floor(self.value * _SPLIT)
                lo = self.value - hi_num / _SPLIT
                r = np.mod(k_arr * hi_num, _SPLIT) / _SPLIT + k_arr * lo
                r = np.mod(r, 1.0)
                r = np.where(r >= 1.0, 0.0, r)
        if np.ndim(k) == 0:
            return float(r)
        return r

    def _frac_multiple_slow(self, k: int) -> float:
        x = Fraction(self.value) * int(k)
        return float(x - math.floor(x))

    def omega_power(self, k):
        """``exp(2 pi i k lam)`` with ``k * lam`` reduced mod 1 first."""
        return np.exp(2j * np.pi * self.frac_multiple(k))

    def __str__(self):
        if self.exact is not None:
            return f"{self.exact[0]}/{self.exact[1]}"
        return repr(self.value)


def as_parameter(lam) -> RotationParameter:
    if isinstance(lam, RotationParameter):
        return lam
    if isinstance(lam, Fraction):
        return RotationParameter.rational(lam.numerator, lam.denominator)
    if isinstance(lam, str):
        return RotationParameter.parse(lam)
    return RotationParameter.from_float(lam)


def reorder_phase(lam: RotationParameter, a, b):
    """Phase picked up by ``V**a U**b = phase * U**b V**a``."""
    return lam.omega_power(-np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64))


def _prune(coeffs: Mapping[tuple[int, int], complex]) -> dict[tuple[int, int], complex]:
    return {k: complex(c) for k, c in coeffs.items() if abs(c) >= PRUNE_THRESHOLD}


@dataclass(frozen=True, eq=False)
class NCTElement:
    """A finitely supported element ``sum c[m, n] U**m V**n`` of the algebra."""

    lam: RotationParameter
    coeffs: Mapping[tuple[int, int], complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _prune(self.coeffs))

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, lam) -> "NCTElement":
        return cls(as_parameter(lam), {})

    @classmethod
    def one(cls, lam) -> "NCTElement":
        return cls(as_parameter(lam), {(0, 0): 1.0})

    @classmethod
    def from_arrays(cls, lam, m, n, c) -> "NCTElement":
        """Build from parallel index/coefficient arrays, summing repeated indices."""
        lam = as_parameter(lam)
        return cls(lam, _accumulate(np.asarray(m), np.asarray(n), np.asarray(c, dtype=complex)))

    # -- inspection -------------------------------------------------------

    @property
    def support(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs)

    def coeff(self, m: int, n: int) -> complex:
        return self.coeffs.get((m, n), 0j)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support_radius(self) -> int:
        return max((max(abs(m), abs(n)) for m, n in self.coeffs), default=0)

    def arrays(self):
        """Parallel arrays ``(m, n, c)`` in sorted index order."""
        keys = self.support
        m = np.fromiter((k[0] for k in keys), dtype=np.int64, count=len(keys))
        n = np.fromiter((k[1] for k in keys), dtype=np.int64, count=len(keys))
        c = np.fromiter((self.coeffs[k] for k in keys), dtype=complex, count=len(keys))
        return m, n, c

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, NCTElement):
            return add(self, other)
        return add(self, NCTElement(self.lam, {(0, 0): complex(other)}))

    __radd__ = __add__

    def __neg__(self):
        return NCTElement(self.lam, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NCTElement):
            return multiply(self, other)
        s = complex(other)
        return NCTElement(self.lam, {k: s * c for k, c in self.coeffs.items()})

    def __rmul__(self, other):
        s = complex(other)
        return NCTElement(self.lam, {k: s * c for k, c in self.coeffs.items()})

    def __pow__(self, k: int):
        if k < 0:
            # a unitary monomial is inverted by its adjoint; nothing else has a finite inverse in general
            if len(self.coeffs) != 1 or abs(abs(next(iter(self.coeffs.values()))) - 1.0) > 1e-15:
                raise InvalidParameterError("negative powers are only defined for unitary monomials")
            return adjoint(self) ** (-k)
        out = NCTElement.one(self.lam)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def adjoint(self) -> "NCTElement":
        return adjoint(self)

    def trace(self) -> complex:
        return trace(self)

    def l1_norm(self) -> float:
        return l1_norm(self)

    def __repr__(self):
        terms = ", ".join(f"({m},{n}): {c:.6g}" for (m, n), c in sorted(self.coeffs.items())[:6])
        more = "" if len(self.coeffs) <= 6 else f", ... {len(self.coeffs)} terms"
        return f"NCTElement(lam={self.lam}, {{{terms}{more}}})"


def _check_same(a: NCTElement, b: NCTElement):
    if a.lam != b.lam:
        raise ParameterMismatchError(f"rotation parameters differ: {a.lam} vs {b.lam}")


def _accumulate(m, n, c) -> dict[tuple[int, int], complex]:
    if m.size == 0:
        return {}
    m = m.ravel()
    n = n.ravel()
    c = c.ravel()
    m0, n0 = int(m.min()), int(n.min())
    width = int(n.max()) - n0 + 1
    key = (m - m0) * width + (n - n0)
    uniq, inv = np.unique(key, return_inverse=True)
    re = np.bincount(inv, weights=c.real, minlength=len(uniq))
    im = np.bincount(inv, weights=c.imag, minlength=len(uniq))
    out = {}
    for kk, r, i in zip(uniq.tolist(), re.tolist(), im.tolist()):
        z = complex(r, i)
        if abs(z) >= PRUNE_THRESHOLD:
            out[(kk // width + m0, kk % width + n0)] = z
    return out


def monomial(m: int, n: int, c: complex = 1.0, lam=None) -> NCTElement:
    """``c * U**m V**n``; the zero element when ``c == 0``."""
    if lam is None:
        raise InvalidParameterError("a rotation parameter is required")
    return NCTElement(as_parameter(lam), {(int(m), int(n)): complex(c)})


def generators(lam) -> tuple[NCTElement, NCTElement]:
    lam = as_parameter(lam)
    return monomial(1, 0, 1.0, lam), monomial(0, 1, 1.0, lam)


def add(a: NCTElement, b: NCTElement) -> NCTElement:
    _check_same(a, b)
    out = dict(a.coeffs)
    for k, c in b.coeffs.items():
        out[k] = out.get(k, 0j) + c
    return NCTElement(a.lam, out)


def multiply(a: NCTElement, b: NCTElement) -> NCTElement:
    _check_same(a, b)
    if a.is_zero() or b.is_zero():
        return NCTElement(a.lam, {})
    ma, na, ca = a.arrays()
    mb, nb, cb = b.arrays()
    phase = reorder_phase(a.lam, na[:, None], mb[None, :])
    m = ma[:, None] + mb[None, :]
    n = na[:, None] + nb[None, :]
    c = ca[:, None] * cb[None, :] * phase
    return NCTElement(a.lam, _accumulate(m, n, c))


def adjoint(a: NCTElement) -> NCTElement:
    """``(c U**m V**n)* = conj(c) V**-n U**-m``, brought back to normal order."""
    if a.is_zero():
        return a
    m, n, c = a.arrays()
    phase = reorder_phase(a.lam, -n, -m)
    out = np.conj(c) * phase
    return NCTElement(a.lam, {(-int(i), -int(j)): z for i, j, z in zip(m, n, out.tolist())})


def trace(a: NCTElement) -> complex:
    """The normalized trace: the coefficient of the identity monomial."""
    return a.coeff(0, 0)


def l1_norm(a: NCTElement) -> float:
    """Sum of coefficient moduli; bounds the norm in every unitary representation."""
    return math.fsum(abs(c) for c in a.coeffs.values())


def from_terms(terms: Iterable[tuple[int, int, complex]], lam) -> NCTElement:
    lam = as_parameter(lam)
    out: dict[tuple[int, int], complex] = {}
    for m, n, c in terms:
        out[(m, n)] = out.get((m, n), 0j) + complex(c)
    return NCTElement(lam, out)
