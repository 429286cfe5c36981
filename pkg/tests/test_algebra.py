import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nctorus.algebra import (
    NCTElement,
    RotationParameter,
    adjoint,
    as_parameter,
    from_terms,
    generators,
    l1_norm,
    monomial,
    multiply,
    reorder_phase,
    trace,
)
from nctorus.errors import InvalidParameterError, ParameterMismatchError

from .helpers import GOLDEN, element_tuples, elements, irrational_proxy, rational


def close(a, b, tol=1e-13):
    return l1_norm(a - b) <= tol * max(1.0, l1_norm(a), l1_norm(b))


# --- rotation parameter ---------------------------------------------------


def test_rational_is_reduced_mod_one():
    lam = RotationParameter.rational(7, 4)
    assert lam.exact == (3, 4)
    assert lam.value == 0.75
    assert RotationParameter.rational(-1, 3).exact == (2, 3)
    assert RotationParameter.rational(2, 4).exact == (1, 2)


@pytest.mark.parametrize("x", [-0.1, 1.0, 1.5, float("nan")])
def test_out_of_range_float_rejected(x):
    with pytest.raises(InvalidParameterError):
        RotationParameter.from_float(x)


def test_zero_is_carried_exactly():
    assert RotationParameter.from_float(0.0).exact == (0, 1)


def test_parse():
    assert RotationParameter.parse("3/8").exact == (3, 8)
    lam = RotationParameter.parse("0.25")
    assert lam.is_irrational_proxy and lam.value == 0.25
    for bad in ["x", "1/0", "a/b"]:
        with pytest.raises(InvalidParameterError):
            RotationParameter.parse(bad)


def test_as_parameter_accepts_fraction_and_str():
    assert as_parameter(Fraction(5, 3)).exact == (2, 3)
    assert as_parameter("1/5").exact == (1, 5)
    assert as_parameter(0.3).value == 0.3


def test_frac_multiple_rational_exact():
    lam = RotationParameter.rational(3, 7)
    k = np.arange(-20, 20)
    expected = [float(Fraction(3 * int(i), 7) % 1) for i in k]
    assert lam.frac_multiple(k).tolist() == expected


@pytest.mark.parametrize("k", [1, 17, 10**6, 10**8, 3 * 10**9, -(10**9) - 7])
def test_frac_multiple_float_matches_exact_arithmetic(k):
    lam = RotationParameter.from_float(GOLDEN)
    exact = Fraction(GOLDEN) * k
    exact -= math.floor(exact)
    got = lam.frac_multiple(k)
    d = abs(got - float(exact))
    assert min(d, 1 - d) < 1e-15


def test_frac_multiple_beats_naive_product():
    lam = RotationParameter.from_float(GOLDEN)
    k = 10**7 + 3
    exact = Fraction(GOLDEN) * k
    exact = float(exact - math.floor(exact))
    assert abs(lam.frac_multiple(k) - exact) <= abs((k * GOLDEN) % 1.0 - exact)


# --- products and the commutation relation --------------------------------


def test_generators_commutation(golden):
    U, V = generators(golden)
    omega = cmath.exp(2j * math.pi * GOLDEN)
    assert close(U * V, omega * (V * U))
    assert (U * V).coeff(1, 1) == 1
    assert abs((V * U).coeff(1, 1) - 1 / omega) < 1e-15


@given(lam=irrational_proxy, a=st.integers(-6, 6), b=st.integers(-6, 6))
def test_reorder_phase(lam, a, b):
    U, V = generators(lam)
    lhs = (V**a) * (U**b)
    phase = reorder_phase(lam, a, b)
    assert close(lhs, monomial(b, a, phase, lam))
    assert abs(phase - cmath.exp(-2j * math.pi * lam.value * a * b)) < 1e-12


@given(lam=irrational_proxy, m=st.integers(-5, 5), n=st.integers(-5, 5), p=st.integers(-5, 5), q=st.integers(-5, 5))
def test_monomial_product_rule(lam, m, n, p, q):
    prod = monomial(m, n, lam=lam) * monomial(p, q, lam=lam)
    expected = cmath.exp(-2j * math.pi * lam.value * n * p)
    assert prod.support == [(m + p, n + q)]
    assert abs(prod.coeff(m + p, n + q) - expected) < 1e-12


def test_element_repeated_product_against_dense_weyl_pair():
    # at p/q the algebra maps onto q x q matrices, giving an independent product
    q = 7
    lam = RotationParameter.rational(2, q)
    u = np.roll(np.eye(q), -1, axis=0)
    v = np.diag(np.exp(2j * np.pi * 2 * np.arange(q) / q))

    def dense(x):
        out = np.zeros((q, q), complex)
        for (m, n), c in x.coeffs.items():
            out += c * np.linalg.matrix_power(u, m % q) @ np.linalg.matrix_power(v, n % q)
        return out

    rng = np.random.default_rng(3)
    for _ in range(20):
        a = from_terms([(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)), complex(*rng.normal(size=2))) for _ in range(5)], lam)
        b = from_terms([(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)), complex(*rng.normal(size=2))) for _ in range(5)], lam)
        assert np.allclose(dense(a * b), dense(a) @ dense(b), atol=1e-12)
        assert np.allclose(dense(adjoint(a)), dense(a).conj().T, atol=1e-12)


@settings(max_examples=60)
@given(element_tuples(3))
def test_associativity(t):
    a, b, c = t
    scale = l1_norm(a) * l1_norm(b) * l1_norm(c)
    assert l1_norm((a * b) * c - a * (b * c)) <= 1e-12 * scale


@settings(max_examples=60)
@given(element_tuples(3))
def test_distributivity(t):
    a, b, c = t
    assert close(a * (b + c), a * b + a * c)


@settings(max_examples=60)
@given(element_tuples(2))
def test_adjoint_antimultiplicative(t):
    a, b = t
    assert close(adjoint(a * b), adjoint(b) * adjoint(a))


@settings(max_examples=60)
@given(element_tuples(1))
def test_adjoint_involution(t):
    (a,) = t
    assert l1_norm(adjoint(adjoint(a)) - a) <= 1e-14 * l1_norm(a)


@settings(max_examples=60)
@given(element_tuples(2))
def test_trace_property(t):
    a, b = t
    assert abs(trace(a * b) - trace(b * a)) <= 1e-12 * l1_norm(a) * l1_norm(b)


@settings(max_examples=60)
@given(element_tuples(1))
def test_trace_positivity(t):
    (a,) = t
    sq = math.fsum(abs(c) ** 2 for c in a.coeffs.values())
    val = trace(adjoint(a) * a)
    assert abs(val.imag) <= 1e-14 * sq
    assert abs(val - sq) <= 1e-12 * sq


@settings(max_examples=30)
@given(rational.flatmap(lambda lam: st.tuples(elements(lam), elements(lam))))
def test_axioms_hold_at_rational_angles(t):
    a, b = t
    assert close(adjoint(a * b), adjoint(b) * adjoint(a))
    assert abs(trace(a * b) - trace(b * a)) <= 1e-12 * l1_norm(a) * l1_norm(b)


def test_trace_of_one_and_monomials(golden):
    assert trace(NCTElement.one(golden)) == 1
    assert trace(monomial(1, 0, lam=golden)) == 0
    assert trace(monomial(0, 0, 2.5 - 1j, golden)) == 2.5 - 1j


def test_generators_unitary(golden):
    one = NCTElement.one(golden)
    for g in generators(golden):
        assert close(g * adjoint(g), one)
        assert close(adjoint(g) * g, one)


def test_commutative_point():
    lam = RotationParameter.rational(0, 1)
    U, V = generators(lam)
    assert close(U * V, V * U, tol=0)


def test_l1_norm_submultiplicative(rng, golden):
    for _ in range(50):
        terms_a = [(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)), complex(*rng.normal(size=2))) for _ in range(6)]
        terms_b = [(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)), complex(*rng.normal(size=2))) for _ in range(6)]
        a, b = from_terms(terms_a, golden), from_terms(terms_b, golden)
        assert l1_norm(a * b) <= l1_norm(a) * l1_norm(b) * (1 + 1e-14)


def test_cancellation_prunes_support(golden):
    U, _ = generators(golden)
    z = U - U
    assert z.is_zero()
    assert z.support == []
    assert l1_norm(z) == 0


def test_from_terms_accumulates(golden):
    a = from_terms([(1, 2, 1.0), (1, 2, 2.0), (0, 0, 1j)], golden)
    assert a.coeff(1, 2) == 3.0
    assert a.coeff(0, 0) == 1j
    assert a.coeff(5, 5) == 0


def test_pow(golden):
    U, V = generators(golden)
    assert close(U**3, U * U * U)
    assert close(V**-2, adjoint(V) * adjoint(V))
    assert close((U + V) ** 0, NCTElement.one(golden))


def test_scalar_arithmetic(golden):
    U, _ = generators(golden)
    assert close(2 * U, U + U)
    assert close(U * 3j, monomial(1, 0, 3j, golden))
    assert close(1 - U, NCTElement.one(golden) - U)


def test_mixed_parameters_rejected(golden):
    a = monomial(1, 0, lam=golden)
    b = monomial(1, 0, lam=RotationParameter.from_float(0.3))
    with pytest.raises(ParameterMismatchError):
        multiply(a, b)
    with pytest.raises(ParameterMismatchError):
        a + b


def test_support_radius(golden):
    a = from_terms([(3, -1, 1.0), (0, -5, 1.0)], golden)
    assert a.support_radius() == 5
    assert NCTElement.zero(golden).support_radius() == 0
