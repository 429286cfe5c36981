"""CSV and JSON encodings of the datasets the CLI emits.

Floats are written as their shortest round-trip repr (with a bare integer
for whole numbers), so reading a file back reproduces the arrays bit for bit.

Butterfly CSV, one row per eigenvalue::

    p,q,lambda,theta1,theta2,band_index,energy

Gap-label JSON::

    {"p": 1, "q": 3, "mu": 1, "grid": 32, "min_gap_width": 0.05,
     "labels": [{"e_lo": ..., "e_hi": ..., "ids": ..., "m": 0, "n": 1, "residual": ...}, ...]}
"""

from __future__ import annotations

import csv
import io
import json
from typing import IO, Iterable

import numpy as np

from .algebra import RotationParameter
from .ktheory import K0Class
from .spectral import GapLabel, SpectrumSample

BUTTERFLY_HEADER = ["p", "q", "lambda", "theta1", "theta2", "band_index", "energy"]


def format_float(x: float) -> str:
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    if s == "-0":
        s = "0"
    return s


def write_butterfly_csv(samples: Iterable[SpectrumSample], fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(BUTTERFLY_HEADER)
    for s in samples:
        lam = format_float(s.p / s.q)
        for (t1, t2), row in zip(s.phase_grid.tolist(), s.bands.tolist()):
            t1s, t2s = format_float(t1), format_float(t2)
            for j, e in enumerate(row):
                w.writerow([s.p, s.q, lam, t1s, t2s, j, format_float(e)])


def butterfly_csv(samples: Iterable[SpectrumSample]) -> str:
    buf = io.StringIO()
    write_butterfly_csv(samples, buf)
    return buf.getvalue()


def read_butterfly_csv(fh: IO[str], mu: float) -> list[SpectrumSample]:
    """Inverse of `write_butterfly_csv`; the coupling is not in the schema, so pass it."""
    reader = csv.reader(fh)
    header = next(reader)
    if header != BUTTERFLY_HEADER:
        raise ValueError(f"unexpected butterfly header {header}")
    groups: dict[tuple[int, int], list[list[str]]] = {}
    for row in reader:
        if not row:
            continue
        groups.setdefault((int(row[0]), int(row[1])), []).append(row)
    out = []
    for (p, q), rows in groups.items():
        n_phases = len(rows) // q
        grid = np.array([[float(r[3]), float(r[4])] for r in rows[::q]])
        bands = np.array([float(r[6]) for r in rows]).reshape(n_phases, q)
        out.append(SpectrumSample(p, q, float(mu), grid, bands, np.sort(bands.ravel())))
    return out


def gap_labels_to_json(labels: list[GapLabel], p: int, q: int, mu: float, grid: int, min_gap_width: float) -> str:
    doc = {
        "p": p,
        "q": q,
        "mu": mu,
        "grid": grid,
        "min_gap_width": min_gap_width,
        "labels": [
            {
                "e_lo": lab.gap[0],
                "e_hi": lab.gap[1],
                "ids": lab.ids,
                "m": lab.k0.m,
                "n": lab.k0.n,
                "residual": lab.residual,
            }
            for lab in labels
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def gap_labels_from_json(text: str) -> list[GapLabel]:
    doc = json.loads(text)
    lam = RotationParameter.rational(doc["p"], doc["q"])
    return [
        GapLabel((d["e_lo"], d["e_hi"]), d["ids"], K0Class(d["m"], d["n"], lam), d["residual"])
        for d in doc["labels"]
    ]


GAP_CSV_HEADER = ["e_lo", "e_hi", "ids", "m", "n", "residual"]


def gap_labels_csv(labels: list[GapLabel]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GAP_CSV_HEADER)
    for lab in labels:
        w.writerow([
            format_float(lab.gap[0]),
            format_float(lab.gap[1]),
            format_float(lab.ids),
            lab.k0.m,
            lab.k0.n,
            format_float(lab.residual),
        ])
    return buf.getvalue()


def dumps(doc) -> str:
    """Deterministic JSON for the small structured results."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
