"""Projections, K0 bookkeeping, and the arithmetic classification of A_lam.

The pieces here are

* `build_rieffel_projection`: an explicit self-adjoint element
  ``p = g(U) V + f(U) + (g(U) V)*`` with ``trace(p) = lam`` whose
  idempotent defect is set by Fourier truncation only;
* the K0 data model ``K0(A_lam) = Z + Z`` with trace pairing ``m + n lam``,
  and the inverse map from a trace value back to ``(m, n)``;
* rank classification and formal differences for matrix projections;
* the canonical parameter in [0, 1/2] and a continued-fraction test for
  lying on one GL(2, Z) orbit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Callable, Sequence

import numpy as np

from .algebra import NCTElement, RotationParameter, adjoint, as_parameter, l1_norm, multiply
from .errors import (
    AmbiguousResolutionError,
    DegenerateInputError,
    InvalidParameterError,
    NotAProjectionError,
    NotInRangeError,
    ParameterMismatchError,
    PrecisionError,
    UnsupportedParameterError,
)

# ---------------------------------------------------------------------------
# functions on the circle


@dataclass(frozen=True, eq=False)
class CircleFunction:
    """A 1-periodic function together with its Fourier coefficients.

    ``func`` must accept numpy arrays. When ``knots`` is given the function is
    the continuous piecewise-linear interpolant through those points and the
    Fourier coefficients are computed in closed form; otherwise they come
    from an oversampled FFT.
    """

    func: Callable[[np.ndarray], np.ndarray]
    knots: tuple[tuple[float, float], ...] | None = None
    real: bool = True
    name: str = ""
    fft_size: int = 1 << 16

    @classmethod
    def piecewise_linear(cls, xs: Sequence[float], ys: Sequence[float], name: str = "") -> "CircleFunction":
        """Continuous periodic interpolant; ``xs`` increasing within [0, 1)."""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise InvalidParameterError("need at least two knots with matching values")
        if np.any(np.diff(xs) <= 0) or xs[0] < 0 or xs[-1] >= 1:
            raise InvalidParameterError("knots must be strictly increasing in [0, 1)")
        xp = np.concatenate([xs, [xs[0] + 1.0]])
        yp = np.concatenate([ys, [ys[0]]])

        def func(t):
            t = np.mod(np.asarray(t, dtype=float) - xs[0], 1.0) + xs[0]
            return np.interp(t, xp, yp)

        return cls(func, tuple(zip(xs.tolist(), ys.tolist())), True, name)

    @classmethod
    def exponential(cls, k: int) -> "CircleFunction":
        return cls(lambda t: np.exp(2j * np.pi * k * np.asarray(t, dtype=float)), None, False, f"e(k={k})")

    @classmethod
    def constant(cls, c: float) -> "CircleFunction":
        return cls.piecewise_linear([0.0, 0.5], [c, c], name=f"const({c})")

    def __call__(self, t):
        return self.func(np.asarray(t, dtype=float))

    def fourier(self, M: int) -> np.ndarray:
        """Coefficients ``c_k = int f(t) exp(-2 pi i k t) dt`` for k = -M..M."""
        if self.knots is not None:
            return self._pl_fourier(np.arange(-M, M + 1))
        K = max(self.fft_size, 8 * (M + 1))
        t = np.arange(K) / K
        vals = self.func(t)
        if self.real:
            half = np.fft.rfft(np.real(vals)) / K
            pos = half[: M + 1]
            # mirror so the coefficients are conjugate-symmetric to the bit
            return np.concatenate([np.conj(pos[:0:-1]), pos])
        full = np.fft.fft(vals) / K
        return full[np.arange(-M, M + 1) % K]

    def _pl_fourier(self, ks: np.ndarray) -> np.ndarray:
        xs = np.array([k[0] for k in self.knots])
        ys = np.array([k[1] for k in self.knots])
        xp = np.concatenate([xs, [xs[0] + 1.0]])
        yp = np.concatenate([ys, [ys[0]]])
        slopes = np.diff(yp) / np.diff(xp)
        # f'' is a sum of point masses at the knots
        jumps = slopes - np.roll(slopes, 1)
        out = np.empty(ks.shape, dtype=complex)
        nz = ks != 0
        kk = ks[nz].astype(float)
        phases = np.exp(-2j * np.pi * np.outer(kk, xs))
        out[nz] = -(phases @ jumps) / (4 * np.pi**2 * kk**2)
        out[~nz] = self.integral()
        return out

    def integral(self) -> float:
        if self.knots is not None:
            xs = np.array([k[0] for k in self.knots] + [self.knots[0][0] + 1.0])
            ys = np.array([k[1] for k in self.knots] + [self.knots[0][1]])
            return float(np.sum(np.diff(xs) * (ys[1:] + ys[:-1]) / 2))
        K = self.fft_size
        vals = self.func(np.arange(K) / K)
        return complex(np.mean(vals)).real if self.real else complex(np.mean(vals))

    def truncation_error(self, M: int) -> float:
        """l1 mass of the coefficients dropped when truncating at order M."""
        K = max(self.fft_size, 64 * (M + 1))
        if self.knots is not None:
            ks = np.arange(M + 1, K // 2)
            return float(2 * np.sum(np.abs(self._pl_fourier(ks))))
        vals = self.func(np.arange(K) / K)
        full = np.fft.fft(vals) / K
        ks = np.fft.fftfreq(K, 1.0 / K)
        return float(np.sum(np.abs(full[np.abs(ks) > M])))

    def variation(self, samples: int = 1 << 16) -> float:
        """Total variation over one period."""
        if self.knots is not None:
            ys = np.array([k[1] for k in self.knots] + [self.knots[0][1]])
            return float(np.sum(np.abs(np.diff(ys))))
        t = np.arange(samples + 1) / samples
        return float(np.sum(np.abs(np.diff(self.func(t)))))

    def to_element(self, lam, M: int, n: int = 0) -> NCTElement:
        """``f(U) V**n`` truncated at Fourier order M, with ``U <-> exp(2 pi i t)``."""
        coeffs = self.fourier(M)
        return NCTElement(as_parameter(lam), {(k, n): c for k, c in zip(range(-M, M + 1), coeffs.tolist())})


# ---------------------------------------------------------------------------
# Rieffel projection


def _linear_ramp(s):
    return np.clip(s, 0.0, 1.0)


def _smooth_ramp(s):
    # sin^2 of a quintic smoothstep; makes both f and sqrt(f(1-f)) three times differentiable
    s = np.clip(s, 0.0, 1.0)
    h = s**3 * (10.0 - 15.0 * s + 6.0 * s * s)
    return np.sin(0.5 * np.pi * h) ** 2


RAMPS = {"linear": _linear_ramp, "smooth": _smooth_ramp}


def rieffel_functions(lam: float, eps: float, ramp: str = "smooth") -> tuple[CircleFunction, CircleFunction]:
    """The bump ``f`` and the off-diagonal profile ``g`` for the projection.

    ``f`` rises 0 -> 1 on [0, eps], is 1 on [eps, lam], falls back on
    [lam, lam + eps] as the mirror image of the rise, and vanishes elsewhere,
    so its integral is exactly ``lam`` for either ramp shape.
    ``g = sqrt(f (1 - f))`` on the falling ramp only.
    """
    if ramp not in RAMPS:
        raise InvalidParameterError(f"unknown ramp {ramp!r}; choose from {sorted(RAMPS)}")
    r = RAMPS[ramp]

    def f(t):
        t = np.mod(np.asarray(t, dtype=float), 1.0)
        out = np.zeros_like(t)
        rise = t < eps
        flat = (t >= eps) & (t < lam)
        fall = (t >= lam) & (t < lam + eps)
        out[rise] = r(t[rise] / eps)
        out[flat] = 1.0
        out[fall] = 1.0 - r((t[fall] - lam) / eps)
        return out

    def g(t):
        t = np.mod(np.asarray(t, dtype=float), 1.0)
        out = np.zeros_like(t)
        fall = (t >= lam) & (t < lam + eps)
        s = r((t[fall] - lam) / eps)
        out[fall] = np.sqrt(np.clip(s * (1.0 - s), 0.0, None))
        return out

    if ramp == "linear":
        f_fn = CircleFunction.piecewise_linear([0.0, eps, lam, lam + eps], [0.0, 1.0, 1.0, 0.0], name="rieffel_f")
    else:
        f_fn = CircleFunction(f, name="rieffel_f")
    return f_fn, CircleFunction(g, name="rieffel_g")


@dataclass(frozen=True, eq=False)
class RieffelProjection:
    element: NCTElement
    f: CircleFunction
    g: CircleFunction
    eps: float
    order: int
    ramp: str
    idempotent_defect: float
    selfadjoint_defect: float
    truncation_error: float

    @property
    def trace(self) -> float:
        return self.element.trace().real


def build_rieffel_projection(lam, eps: float, M: int, ramp: str = "smooth") -> RieffelProjection:
    """A projection of trace ``lam``, up to Fourier truncation at order M.

    With ``V h(U) V* = h(U shifted by -lam)``, the element
    ``g(U) V + f(U) + V* g(U)`` is idempotent exactly when
    ``g(t) g(t - lam) = 0``, ``g(t) (f(t) + f(t - lam)) = g(t)`` and
    ``g(t)^2 + g(t + lam)^2 = f(t) - f(t)^2``; the bump from
    `rieffel_functions` meets all three once ``eps < min(lam, 1 - lam) / 2``.

    The returned record carries the measured defects; nothing is assumed.
    """
    lam = as_parameter(lam)
    if lam.is_rational:
        raise UnsupportedParameterError(
            f"lam = {lam} is rational; projections there have traces in (1/q)Z, use the matrix picture"
        )
    x = lam.value
    if not (0.0 < eps < min(x, 1.0 - x) / 2):
        raise InvalidParameterError(f"eps must lie in (0, {min(x, 1.0 - x) / 2:.6g}), got {eps}")
    if M < 8.0 / eps:
        raise InvalidParameterError(f"Fourier order {M} too small to resolve ramps of width {eps}; need M >= {8.0 / eps:.6g}")

    f, g = rieffel_functions(x, eps, ramp)
    f_elem = f.to_element(lam, M, n=0)
    gv = g.to_element(lam, M, n=1)
    p = f_elem + gv + adjoint(gv)
    idem, sa = projection_defect(p)
    return RieffelProjection(
        element=p,
        f=f,
        g=g,
        eps=eps,
        order=M,
        ramp=ramp,
        idempotent_defect=idem,
        selfadjoint_defect=sa,
        truncation_error=f.truncation_error(M) + 2 * g.truncation_error(M),
    )


def projection_defect(p: NCTElement) -> tuple[float, float]:
    """``(l1(p^2 - p), l1(p - p*))``."""
    return l1_norm(multiply(p, p) - p), l1_norm(p - adjoint(p))


# ---------------------------------------------------------------------------
# K0 data model


@dataclass(frozen=True)
class K0Class:
    """The class ``(m, n)`` in ``K0(A_lam) = Z + Z``; its trace is ``m + n lam``."""

    m: int
    n: int
    lam: RotationParameter

    @property
    def trace_value(self) -> float:
        if self.lam.exact is not None:
            p, q = self.lam.exact
            return float(Fraction(self.m) + Fraction(self.n * p, q))
        return self.m + self.n * self.lam.value

    def __add__(self, other: "K0Class") -> "K0Class":
        _same_ambient(self, other)
        return K0Class(self.m + other.m, self.n + other.n, self.lam)

    def __sub__(self, other: "K0Class") -> "K0Class":
        _same_ambient(self, other)
        return K0Class(self.m - other.m, self.n - other.n, self.lam)

    def __neg__(self) -> "K0Class":
        return K0Class(-self.m, -self.n, self.lam)


def _same_ambient(a: K0Class, b: K0Class):
    if a.lam != b.lam:
        raise ParameterMismatchError(f"K0 classes over different algebras: lam={a.lam} vs lam={b.lam}")


def trace_range_sample(lam, mmax: int, nmax: int) -> list[float]:
    """Sorted values ``m + n lam`` in [0, 1] with ``|m| <= mmax``, ``|n| <= nmax``."""
    lam = as_parameter(lam)
    if mmax < 1 or nmax < 1:
        raise InvalidParameterError("mmax and nmax must be at least 1")
    if lam.exact is not None:
        p, q = lam.exact
        vals = {
            Fraction(m) + Fraction(n * p, q)
            for n in range(-nmax, nmax + 1)
            for m in range(-mmax, mmax + 1)
        }
        return sorted(float(v) for v in vals if 0 <= v <= 1)

    x = lam.value
    raw = []
    for n in range(-nmax, nmax + 1):
        for m in range(-mmax, mmax + 1):
            v = m + n * x
            if -1e-12 <= v <= 1 + 1e-12:
                raw.append(min(max(v, 0.0), 1.0))
    raw.sort()
    out: list[float] = []
    for v in raw:
        if not out or v - out[-1] > 1e-12:
            out.append(v)
    return out


def k0_from_trace(tau_value: float, lam, nmax: int, tol: float) -> K0Class:
    """The unique ``(m, n)``, ``|n| <= nmax``, with ``|tau - m - n lam| <= tol``.

    Uniqueness needs ``tol`` below half the spacing of the candidates, which
    the caller is responsible for. For a rational ``lam = p/q`` classes with
    n differing by q share a trace, so keep ``nmax < q/2`` there.
    """
    lam = as_parameter(lam)
    if nmax < 0:
        raise InvalidParameterError("nmax must be nonnegative")
    hits = []
    for n in range(-nmax, nmax + 1):
        shift = n * lam.value
        m = round(tau_value - shift)
        resid = abs(tau_value - m - shift)
        if resid <= tol:
            hits.append((resid, m, n))
    if not hits:
        raise NotInRangeError(f"no m + n*lam within {tol:g} of {tau_value!r} for |n| <= {nmax}")
    if len(hits) > 1:
        pairs = ", ".join(f"({m},{n})" for _, m, n in sorted(hits))
        raise AmbiguousResolutionError(f"{len(hits)} classes match {tau_value!r} within {tol:g}: {pairs}")
    _, m, n = hits[0]
    return K0Class(int(m), int(n), lam)


# ---------------------------------------------------------------------------
# matrix projections


@dataclass(frozen=True, eq=False)
class MatrixProjection:
    matrix: np.ndarray
    tol: float = 1e-10

    def __post_init__(self):
        P = np.asarray(self.matrix, dtype=complex)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise NotAProjectionError(f"projection must be square, got shape {P.shape}")
        object.__setattr__(self, "matrix", P)
        if P.size:
            idem = np.max(np.abs(P @ P - P))
            sa = np.max(np.abs(P - P.conj().T))
            if idem > self.tol or sa > self.tol:
                raise NotAProjectionError(f"defects |P^2-P| = {idem:.3g}, |P-P*| = {sa:.3g} exceed {self.tol:g}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def stabilize(self, k: int = 1) -> "MatrixProjection":
        """``P + 0_k`` placed in the upper-left corner of a larger matrix."""
        out = np.zeros((self.dim + k, self.dim + k), dtype=complex)
        out[: self.dim, : self.dim] = self.matrix
        return MatrixProjection(out, self.tol)

    def direct_sum(self, other: "MatrixProjection") -> "MatrixProjection":
        n1, n2 = self.dim, other.dim
        out = np.zeros((n1 + n2, n1 + n2), dtype=complex)
        out[:n1, :n1] = self.matrix
        out[n1:, n1:] = other.matrix
        return MatrixProjection(out, max(self.tol, other.tol))


def rank_classify(P) -> int:
    """Unitary-equivalence class of a matrix projection, i.e. its rank."""
    if not isinstance(P, MatrixProjection):
        P = MatrixProjection(P)
    tr = np.trace(P.matrix).real
    r = round(tr)
    if abs(tr - r) > 1e-6:
        raise NotAProjectionError(f"trace {tr!r} is not within 1e-6 of an integer")
    return int(r)


def grothendieck_difference(a, b):
    """Formal difference ``[a] - [b]``.

    Ranks (ints or `MatrixProjection`) give an integer; `K0Class` values give
    the componentwise difference. Mixing the two is a mismatch.
    """
    a_is_k0 = isinstance(a, K0Class)
    b_is_k0 = isinstance(b, K0Class)
    if a_is_k0 and b_is_k0:
        return a - b
    if a_is_k0 or b_is_k0:
        raise ParameterMismatchError("cannot subtract a matrix rank and a K0(A_lam) class")
    return _as_rank(a) - _as_rank(b)


def _as_rank(x) -> int:
    if isinstance(x, MatrixProjection):
        return rank_classify(x)
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        if x < 0:
            raise InvalidParameterError(f"rank must be nonnegative, got {x}")
        return int(x)
    return rank_classify(MatrixProjection(x))


# ---------------------------------------------------------------------------
# canonical parameter and GL(2, Z) orbits


def canonical_parameter(x) -> float:
    """``min({x}, 1 - {x})``, the representative in [0, 1/2].

    Evaluated in exact rational arithmetic on the given number, so the only
    rounding is the final conversion to float.
    """
    fr = _to_fraction(x)
    frac = fr - math.floor(fr)
    return float(min(frac, 1 - frac))


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise InvalidParameterError(f"cannot parse {x!r} as a number") from None
    if isinstance(x, Real):
        if not math.isfinite(float(x)):
            raise InvalidParameterError(f"parameter must be finite, got {x!r}")
        return Fraction(x)
    raise InvalidParameterError(f"cannot interpret {x!r} as a real number")


def continued_fraction(x, depth: int) -> list[int]:
    """Plain expansion ``[a0; a1, a2, ...]`` of ``x`` as an exact rational."""
    fr = _to_fraction(x)
    out = []
    while len(out) < depth:
        a = math.floor(fr)
        out.append(a)
        fr -= a
        if fr == 0:
            break
        fr = 1 / fr
    return out


@dataclass(frozen=True)
class CertifiedExpansion:
    """Partial quotients shared by every real within ``resolution`` of x.

    ``tails[i]`` is the interval ``(lo, hi)`` containing the complete
    quotient after i steps, i.e. the value ``[0; a_{i+1}, a_{i+2}, ...]``.
    """

    terms: tuple[int, ...]
    tails: tuple[tuple[Fraction, Fraction], ...]


def certified_expansion(x, depth: int, resolution: float = 1e-15) -> CertifiedExpansion:
    fr = _to_fraction(x)
    res = Fraction(resolution)
    lo, hi = fr - res, fr + res
    a = math.floor(lo)
    if math.floor(hi) != a:
        return CertifiedExpansion((), ())
    lo, hi = lo - a, hi - a
    terms: list[int] = []
    tails = [(lo, hi)]
    while len(terms) < depth and lo > 0:
        lo, hi = 1 / hi, 1 / lo
        a = math.floor(lo)
        if math.floor(hi) != a:
            break
        terms.append(a)
        lo, hi = lo - a, hi - a
        tails.append((lo, hi))
    return CertifiedExpansion(tuple(terms), tuple(tails))


@dataclass(frozen=True)
class MoritaResult:
    equivalent: bool
    witness: tuple[int, int] | None
    terms_lambda: tuple[int, ...]
    terms_mu: tuple[int, ...]

    def __bool__(self):
        return self.equivalent


MAX_RELIABLE_DEPTH = 60
_MAX_TERM = 10**6
_MIN_TERMS = 3


def morita_equivalent(
    lam,
    mu,
    depth: int = 40,
    resolution: float = 1e-15,
    tail_tol: float = 1e-6,
) -> MoritaResult:
    """Whether ``lam`` and ``mu`` lie on one GL(2, Z) orbit.

    Two irrationals are on one orbit exactly when their continued fractions
    agree after dropping finitely many leading terms. Only about 14 terms of
    a double are meaningful, so instead of comparing raw terms this tracks,
    for each number, interval enclosures of the complete quotients
    ``t_i = [0; a_{i+1}, ...]`` that are valid for every real within
    ``resolution`` of the input. The pair is reported equivalent when some
    ``t_i(lam)`` and ``t_j(mu)`` enclosures overlap while both are narrower
    than ``tail_tol``; the witness is the first such ``(i, j)`` in order of
    ``i + j``.
    """
    if depth < 1:
        raise InvalidParameterError("depth must be positive")
    if depth > MAX_RELIABLE_DEPTH:
        raise PrecisionError(f"depth {depth} exceeds the reliable limit {MAX_RELIABLE_DEPTH} for double inputs")
    exps = []
    for name, x in (("lambda", lam), ("mu", mu)):
        fr = _to_fraction(x.value if isinstance(x, RotationParameter) else x)
        if not 0 < fr < 1:
            raise InvalidParameterError(f"{name} must lie in (0, 1), got {float(fr)!r}")
        e = certified_expansion(fr, depth, resolution)
        if len(e.terms) < min(_MIN_TERMS, depth) or any(t > _MAX_TERM for t in e.terms):
            raise DegenerateInputError(
                f"{name} = {float(fr)!r} is within {resolution:g} of a rational with small denominator "
                f"(certified terms: {list(e.terms)})"
            )
        exps.append(e)
    a, b = exps
    tol = Fraction(tail_tol)
    la, lb = len(a.tails), len(b.tails)
    for s in range(la + lb - 1):
        for i in range(max(0, s - lb + 1), min(s, la - 1) + 1):
            j = s - i
            alo, ahi = a.tails[i]
            blo, bhi = b.tails[j]
            if ahi - alo > tol or bhi - blo > tol:
                continue
            if alo <= bhi and blo <= ahi:
                return MoritaResult(True, (i, j), a.terms, b.terms)
    return MoritaResult(False, None, a.terms, b.terms)


def linear_fractional(matrix, x) -> Fraction:
    """Apply ``[[a, b], [c, d]]`` to x exactly: ``(a x + b) / (c x + d)``."""
    (a, b), (c, d) = matrix
    fr = _to_fraction(x)
    den = c * fr + d
    if den == 0:
        raise InvalidParameterError("x is the pole of the linear fractional map")
    return (a * fr + b) / den
