"""Randomized checks of the algebra axioms, shared by the tests and the CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import NCTElement, RotationParameter, adjoint, generators, l1_norm, multiply, trace


def random_parameter(rng: np.random.Generator) -> RotationParameter:
    return RotationParameter.from_float(float(rng.uniform(0.01, 0.99)))


def random_element(
    lam: RotationParameter,
    rng: np.random.Generator,
    max_support: int = 8,
    radius: int = 4,
) -> NCTElement:
    """Up to ``max_support`` monomials with indices in ``[-radius, radius]``
    and coefficients uniform in the closed unit disc."""
    k = int(rng.integers(1, max_support + 1))
    m = rng.integers(-radius, radius + 1, size=k)
    n = rng.integers(-radius, radius + 1, size=k)
    r = np.sqrt(rng.uniform(0, 1, size=k))
    phi = rng.uniform(0, 2 * np.pi, size=k)
    c = r * np.exp(1j * phi)
    out: dict[tuple[int, int], complex] = {}
    for i, j, z in zip(m.tolist(), n.tolist(), c.tolist()):
        out[(i, j)] = z
    return NCTElement(lam, out)


@dataclass
class AxiomCheck:
    name: str
    worst: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol


def axiom_report(seed: int = 0, trials: int = 200, n_params: int = 10, tol: float = 1e-12) -> list[AxiomCheck]:
    """Worst relative errors over ``trials`` random triples spread over ``n_params`` angles."""
    rng = np.random.default_rng(seed)
    params = [random_parameter(rng) for _ in range(n_params)]
    worst = {
        "associativity": 0.0,
        "adjoint_antimultiplicative": 0.0,
        "adjoint_involution": 0.0,
        "trace_property": 0.0,
        "trace_positivity": 0.0,
        "generator_unitarity": 0.0,
    }
    for t in range(trials):
        lam = params[t % n_params]
        a, b, c = (random_element(lam, rng) for _ in range(3))
        na, nb, nc = l1_norm(a), l1_norm(b), l1_norm(c)
        ab = multiply(a, b)

        err = l1_norm(multiply(ab, c) - multiply(a, multiply(b, c))) / (na * nb * nc)
        worst["associativity"] = max(worst["associativity"], err)

        err = l1_norm(adjoint(ab) - multiply(adjoint(b), adjoint(a))) / (na * nb)
        worst["adjoint_antimultiplicative"] = max(worst["adjoint_antimultiplicative"], err)

        err = l1_norm(adjoint(adjoint(a)) - a) / na
        worst["adjoint_involution"] = max(worst["adjoint_involution"], err)

        err = abs(trace(ab) - trace(multiply(b, a))) / (na * nb)
        worst["trace_property"] = max(worst["trace_property"], err)

        sq = math.fsum(abs(z) ** 2 for z in a.coeffs.values())
        err = abs(trace(multiply(adjoint(a), a)) - sq) / sq
        worst["trace_positivity"] = max(worst["trace_positivity"], err)

    for lam in params:
        one = NCTElement.one(lam)
        for g in generators(lam):
            err = max(l1_norm(g * adjoint(g) - one), l1_norm(adjoint(g) * g - one))
            worst["generator_unitarity"] = max(worst["generator_unitarity"], err)
    return [AxiomCheck(name, value, tol) for name, value in worst.items()]
