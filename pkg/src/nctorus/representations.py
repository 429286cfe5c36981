"""Matrix realizations of the generators.

Two families:

* `WeylPair` -- the q x q clock and shift matrices at ``lam = p/q``. They
  satisfy the commutation relation exactly and give a genuine
  *-representation.
* `TruncatedRep` -- the Fourier picture on L^2 of the circle cut down to
  modes ``-N..N``. U is the shift ``e_k -> e_{k-1}`` (zero-padded, so only a
  partial isometry) and V is ``diag(exp(2 pi i lam k))``. Represented
  elements are compressions of the infinite-dimensional operators, which
  makes their norms honest lower bounds.

Swapping the roles of U and V would also work but flips ``lam -> -lam``;
the choice here matches the ordering rule in `nctorus.algebra`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import NCTElement, RotationParameter, as_parameter
from .errors import InvalidParameterError, ParameterMismatchError, SupportExceedsBandError


@dataclass(frozen=True, eq=False)
class WeylPair:
    p: int
    q: int
    u_matrix: np.ndarray
    v_matrix: np.ndarray

    @property
    def lam(self) -> RotationParameter:
        return RotationParameter.rational(self.p, self.q)

    def u_power(self, m: int) -> np.ndarray:
        """``u**m``, a cyclic permutation matrix (negative powers allowed)."""
        q = self.q
        out = np.zeros((q, q), dtype=complex)
        k = np.arange(q)
        out[(k - m) % q, k] = 1.0
        return out

    def v_power(self, n: int) -> np.ndarray:
        k = np.arange(self.q)
        return np.diag(np.exp(2j * np.pi * (np.mod(k * n * self.p, self.q) / self.q)))

    @property
    def dim(self) -> int:
        return self.q


@dataclass(frozen=True, eq=False)
class TruncatedRep:
    lam: RotationParameter
    band: int
    u_matrix: np.ndarray
    v_matrix: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * self.band + 1

    def u_power(self, m: int) -> np.ndarray:
        # u has ones on the superdiagonal; u**m for m < 0 means (u*)**|m|
        return np.eye(self.dim, k=m, dtype=complex)

    def v_power(self, n: int) -> np.ndarray:
        k = np.arange(-self.band, self.band + 1)
        return np.diag(self.lam.omega_power(k * n))


def weyl_pair_rational(p: int, q: int) -> WeylPair:
    """Clock and shift matrices with ``u v = exp(2 pi i p/q) v u``."""
    if q < 1:
        raise InvalidParameterError(f"q must be positive, got {q}")
    if math.gcd(p, q) != 1:
        raise InvalidParameterError(f"p/q must be reduced, got gcd({p}, {q}) = {math.gcd(p, q)}")
    p_red = p % q
    k = np.arange(q)
    u = np.zeros((q, q), dtype=complex)
    u[(k - 1) % q, k] = 1.0
    v = np.diag(np.exp(2j * np.pi * (np.mod(k * p_red, q) / q)))
    return WeylPair(p_red, q, u, v)


def truncated_rep(lam, N: int) -> TruncatedRep:
    lam = as_parameter(lam)
    if N < 1:
        raise InvalidParameterError(f"band must be at least 1, got {N}")
    k = np.arange(-N, N + 1)
    u = np.eye(2 * N + 1, k=1, dtype=complex)
    v = np.diag(lam.omega_power(k))
    return TruncatedRep(lam, N, u, v)


def represent(a: NCTElement, rep: WeylPair | TruncatedRep) -> np.ndarray:
    """``sum c[m, n] u**m v**n`` in the given representation."""
    if isinstance(rep, WeylPair):
        if a.lam != rep.lam:
            raise ParameterMismatchError(f"element at lam={a.lam} cannot use the Weyl pair at {rep.p}/{rep.q}")
    elif isinstance(rep, TruncatedRep):
        if a.lam != rep.lam:
            raise ParameterMismatchError(f"element at lam={a.lam} cannot use a truncation at lam={rep.lam}")
        r = a.support_radius()
        if r > rep.band:
            raise SupportExceedsBandError(f"support radius {r} exceeds band {rep.band}")
    else:
        raise TypeError(f"unknown representation type {type(rep).__name__}")

    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    u_cache: dict[int, np.ndarray] = {}
    v_cache: dict[int, np.ndarray] = {}
    for (m, n), c in a.coeffs.items():
        if m not in u_cache:
            u_cache[m] = rep.u_power(m)
        if n not in v_cache:
            v_cache[n] = np.diagonal(rep.v_power(n)).copy()
        # u**m diag(d) scales the columns of u**m by d
        out += c * (u_cache[m] * v_cache[n][None, :])
    return out


def normalized_trace(mat: np.ndarray) -> complex:
    return complex(np.trace(mat)) / mat.shape[0]


def commutator_trace_check(P, Q) -> float:
    """``|Tr(PQ - QP)| / (1 + |P| |Q|)`` with operator 2-norms.

    Always zero up to rounding, which is why no pair of finite matrices can
    satisfy ``PQ - QP = c I`` with ``c != 0``.
    """
    P = np.asarray(P)
    Q = np.asarray(Q)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise InvalidParameterError(f"P must be square, got shape {P.shape}")
    if P.shape != Q.shape:
        raise InvalidParameterError(f"dimension mismatch: {P.shape} vs {Q.shape}")
    comm = P @ Q - Q @ P
    scale = 1.0 + np.linalg.norm(P, 2) * np.linalg.norm(Q, 2)
    return float(abs(np.trace(comm)) / scale)


def weyl_commutator_trace_sides(pair: WeylPair) -> tuple[complex, complex]:
    """Both sides of ``Tr(uv - vu) = (omega - 1) Tr(vu)`` for a Weyl pair."""
    u, v = pair.u_matrix, pair.v_matrix
    omega = np.exp(2j * np.pi * pair.p / pair.q)
    lhs = complex(np.trace(u @ v - v @ u))
    rhs = complex((omega - 1) * np.trace(v @ u))
    return lhs, rhs


def operator_norm_lower_bound(a: NCTElement, N: int) -> float:
    """Largest singular value of ``a`` in the band-N truncation.

    A compression of the true operator, so it never exceeds the C*-norm;
    together with `l1_norm` it brackets that norm.
    """
    mat = represent(a, truncated_rep(a.lam, N))
    if mat.shape[0] == 0:
        return 0.0
    return float(np.linalg.norm(mat, 2))
