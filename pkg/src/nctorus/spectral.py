"""Harper operator spectra at rational angles and gap labelling.

``H = U + U* + mu (V + V*)`` is represented at ``lam = p/q`` through the
family of q x q matrices obtained by twisting the clock and shift pair with
Bloch phases, ``U -> exp(i theta1) u``, ``V -> exp(i theta2) v``. The union
of their spectra over the phase torus is the spectrum of H. Inside a gap
the normalized eigenvalue count is the trace of a spectral projection, so
it must be of the form ``m + n p/q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import RotationParameter
from .errors import InvalidParameterError, NumericalError
from .ktheory import K0Class, k0_from_trace
from .representations import weyl_pair_rational


@dataclass(frozen=True, eq=False)
class SpectrumSample:
    p: int
    q: int
    coupling: float
    phase_grid: np.ndarray  # (n_phases, 2)
    bands: np.ndarray  # (n_phases, q), ascending in each row
    eigenvalues: np.ndarray  # all of `bands`, flattened and sorted

    @property
    def lam(self) -> RotationParameter:
        return RotationParameter.rational(self.p, self.q)

    @property
    def grid_size(self) -> int:
        return int(round(math.sqrt(len(self.phase_grid))))


@dataclass(frozen=True)
class GapLabel:
    gap: tuple[float, float]
    ids: float
    k0: K0Class
    residual: float

    @property
    def width(self) -> float:
        return self.gap[1] - self.gap[0]


def _check_pq(p: int, q: int):
    if q < 1:
        raise InvalidParameterError(f"q must be positive, got {q}")
    if math.gcd(p, q) != 1:
        raise InvalidParameterError(f"p/q must be reduced, got {p}/{q}")


def harper_matrix(p: int, q: int, mu: float, phases: tuple[float, float]) -> np.ndarray:
    """``e^{i t1} u + h.c. + mu (e^{i t2} v + h.c.)`` on C^q."""
    _check_pq(p, q)
    if not mu > 0:
        raise InvalidParameterError(f"coupling must be positive, got {mu}")
    pair = weyl_pair_rational(p, q)
    a = np.exp(1j * phases[0]) * pair.u_matrix
    b = mu * np.exp(1j * phases[1]) * pair.v_matrix
    return a + a.conj().T + b + b.conj().T


def bloch_grid(grid_size: int) -> np.ndarray:
    """Uniform half-open grid ``2 pi (j1, j2) / grid_size`` including the origin."""
    if grid_size < 1:
        raise InvalidParameterError(f"grid_size must be positive, got {grid_size}")
    t = 2 * np.pi * np.arange(grid_size) / grid_size
    t1, t2 = np.meshgrid(t, t, indexing="ij")
    return np.column_stack([t1.ravel(), t2.ravel()])


def spectrum_sweep(p: int, q: int, mu: float = 1.0, grid_size: int = 32) -> SpectrumSample:
    _check_pq(p, q)
    if not mu > 0:
        raise InvalidParameterError(f"coupling must be positive, got {mu}")
    grid = bloch_grid(grid_size)
    pair = weyl_pair_rational(p, q)
    e1 = np.exp(1j * grid[:, 0])[:, None, None]
    e2 = np.exp(1j * grid[:, 1])[:, None, None]
    a = e1 * pair.u_matrix[None]
    b = mu * e2 * pair.v_matrix[None]
    stack = a + np.conj(np.swapaxes(a, 1, 2)) + b + np.conj(np.swapaxes(b, 1, 2))
    try:
        bands = np.linalg.eigvalsh(stack)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue solve failed at p/q = {p}/{q}: {exc}") from exc
    if not np.all(np.isfinite(bands)):
        raise NumericalError(f"non-finite eigenvalues at p/q = {p}/{q}")
    return SpectrumSample(pair.p, q, float(mu), grid, bands, np.sort(bands.ravel()))


def integrated_density_of_states(s: SpectrumSample, E: float) -> float:
    """Fraction of eigenvalues ``<= E``."""
    return np.searchsorted(s.eigenvalues, E, side="right") / s.eigenvalues.size


def find_gaps(s: SpectrumSample, min_gap_width: float, band_edges_only: bool = True) -> list[tuple[int, float, float]]:
    """``(count_below, E_lo, E_hi)`` for each eigenvalue-free interval at least this wide.

    Every phase contributes one eigenvalue per band, so a hole in the merged
    list sits between two bands only when the count below it is a multiple
    of the number of phases. Other holes are gaps between samples inside a
    band; they are dropped unless ``band_edges_only`` is false.
    """
    ev = s.eigenvalues
    widths = np.diff(ev)
    idx = np.nonzero(widths >= min_gap_width)[0]
    n_phases = len(s.phase_grid)
    out = []
    for i in idx.tolist():
        count = i + 1
        if band_edges_only and count % n_phases:
            continue
        out.append((count, float(ev[i]), float(ev[i + 1])))
    return out


def gap_labels(
    s: SpectrumSample,
    min_gap_width: float = 0.05,
    nmax: int | None = None,
    tol: float = 1e-3,
) -> list[GapLabel]:
    """Open gaps annotated with their IDS and the class ``(m, n)`` it pairs to.

    ``nmax`` defaults to ``q // 2``: at a rational angle classes whose n
    differ by q have the same trace, so a window of width q keeps the
    recovery unique except at the central value of an even q.
    """
    if nmax is None:
        nmax = s.q // 2
    lam = s.lam
    total = s.eigenvalues.size
    out = []
    for count, lo, hi in find_gaps(s, min_gap_width):
        ids = count / total
        k0 = k0_from_trace(ids, lam, nmax, tol)
        out.append(GapLabel((lo, hi), ids, k0, abs(ids - k0.trace_value)))
    return out


def farey_fractions(qmax: int) -> list[tuple[int, int]]:
    """Reduced ``(p, q)`` with ``0 <= p < q <= qmax``, ordered by q then p."""
    if qmax < 1:
        raise InvalidParameterError(f"qmax must be positive, got {qmax}")
    return [(p, q) for q in range(1, qmax + 1) for p in range(q) if math.gcd(p, q) == 1]


def butterfly_dataset(qmax: int, mu: float = 1.0, grid_size: int = 16) -> list[SpectrumSample]:
    return [spectrum_sweep(p, q, mu, grid_size) for p, q in farey_fractions(qmax)]
