import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Rational
from sympy.physics.wigner import clebsch_gordan as sympy_cg

from channelspin import spin_algebra as sa
from channelspin.errors import ContractError, DomainError
from conftest import random_hermitian


def test_pauli_basics():
    assert np.allclose(sa.pauli("z"), np.diag([1, -1]))
    assert np.allclose(sa.pauli("x"), [[0, 1], [1, 0]])
    for axis in "xyz":
        s = sa.pauli(axis)
        assert sa.is_hermitian(s)
        assert abs(sa.trace(s)) == 0
        assert np.allclose(s @ s, np.eye(2))
    with pytest.raises(DomainError):
        sa.pauli("w")


def test_kron():
    assert np.allclose(sa.kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.allclose(sa.kron(np.diag([1, 0]), np.diag([1, 0])), np.diag([1, 0, 0, 0]))
    assert sa.trace(sa.kron(sa.pauli("z"), sa.pauli("z"))) == 0
    with pytest.raises(DomainError):
        sa.kron(np.eye(4), np.eye(2))


def test_as_cmatrix_rejects_bad_input():
    with pytest.raises(ContractError):
        sa.as_cmatrix(np.ones((2, 3)))
    with pytest.raises(ContractError):
        sa.as_cmatrix(np.eye(5))
    with pytest.raises(ContractError):
        sa.as_cmatrix([[np.nan, 0], [0, 1]])
    with pytest.raises(ContractError):
        sa.as_cmatrix(np.eye(2), dim=3)


def _cg_cases():
    half = Rational(1, 2)
    combos = [(half, half, 0), (half, half, 1), (1, 1, 0), (1, 1, 1), (1, 1, 2),
              (half, 0, half), (half, 1, half), (1, 0, 1), (1, 2, 1), (2, 2, 2), (2, 1, 1), (Rational(3, 2), half, 2)]
    for j1, j2, J in combos:
        ms = lambda j: [j - i for i in range(int(2 * j) + 1)]  # noqa: E731
        for m1, m2, M in itertools.product(ms(j1), ms(j2), ms(J)):
            yield j1, m1, j2, m2, J, M


@pytest.mark.parametrize("args", list(_cg_cases()))
def test_clebsch_gordan_matches_sympy(args):
    j1, m1, j2, m2, J, M = args
    expected = float(sympy_cg(j1, j2, J, m1, m2, M))
    got = sa.clebsch_gordan(*(float(a) for a in args))
    assert got == pytest.approx(expected, abs=1e-14)


def test_clebsch_gordan_examples():
    assert sa.clebsch_gordan(1, 0, 1, 0, 2, 0) == pytest.approx(math.sqrt(2 / 3), abs=1e-14)
    assert sa.clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1, 0) == pytest.approx(1 / math.sqrt(2), abs=1e-14)
    assert sa.clebsch_gordan(1, 1, 1, 1, 2, 1) == 0.0


@pytest.mark.parametrize("bad", [(1, 0, 1, 0, 3, 0), (3, 0, 1, 0, 3, 0), (0.5, 0.5, 1, 0, 1, 0.5)])
def test_clebsch_gordan_domain(bad):
    with pytest.raises(DomainError):
        sa.clebsch_gordan(*bad)


@pytest.mark.parametrize("j", [0.5, 1])
def test_tensor_ops_orthogonality_and_conjugation(j):
    ops = sa.tensor_ops(j)
    n = ops.dim
    assert np.allclose(ops[(0, 0)], np.eye(n), atol=1e-12)
    for a, b in itertools.product(ops.keys(), repeat=2):
        val = np.trace(ops[a].conj().T @ ops[b])
        assert abs(val - (n if a == b else 0)) < 1e-12
    for k, q in ops.keys():
        assert np.max(np.abs(ops[(k, q)].conj().T - (-1) ** q * ops[(k, -q)])) < 1e-12


def test_tensor_ops_examples():
    t1 = sa.tensor_ops(1)
    assert np.allclose(t1[(2, 0)], np.diag([1, -2, 1]) / math.sqrt(2), atol=1e-14)
    assert np.allclose(t1[(0, 0)], np.eye(3))
    th = sa.tensor_ops(0.5)
    assert np.allclose(th[(1, 0)], sa.pauli("z"), atol=1e-14)
    assert np.trace(th[(1, 0)].conj().T @ th[(1, 0)]).real == pytest.approx(2)
    with pytest.raises(DomainError):
        sa.tensor_ops(1.5)


def test_spherical_components():
    assert sa.spherical_components((0, 0, 1)) == {1: 0, 0: 1, -1: 0}
    s = sa.spherical_components((1, 0, 0))
    assert s[1] == pytest.approx(-1 / math.sqrt(2))
    assert s[-1] == pytest.approx(1 / math.sqrt(2))
    assert s[0] == 0
    assert all(v == 0 for v in sa.spherical_components((0, 0, 0)).values())


vectors = st.tuples(*(st.floats(-1, 1) for _ in range(3)))


@given(vectors)
def test_spherical_conjugation(v):
    s = sa.spherical_components(v)
    for q in (-1, 0, 1):
        assert abs(s[q].conjugate() - (-1) ** q * s[-q]) < 1e-15


def _rank2_bruteforce(a, b, q):
    # Cartesian route: symmetric traceless tensor in spherical basis
    sa_, sb_ = sa.spherical_components(a), sa.spherical_components(b)
    if q == 2:
        return sa_[1] * sb_[1]
    if q == -2:
        return sa_[-1] * sb_[-1]
    if q == 1:
        return (sa_[1] * sb_[0] + sa_[0] * sb_[1]) / math.sqrt(2)
    if q == -1:
        return (sa_[-1] * sb_[0] + sa_[0] * sb_[-1]) / math.sqrt(2)
    return (sa_[1] * sb_[-1] + 2 * sa_[0] * sb_[0] + sa_[-1] * sb_[1]) / math.sqrt(6)


def test_rank2_product_examples():
    z = (0, 0, 1)
    assert sa.rank2_product(z, z, 0) == pytest.approx(math.sqrt(2 / 3))
    assert sa.rank2_product(z, z, 2) == 0
    x, mx = (1, 0, 0), (-1, 0, 0)
    assert sa.rank2_product(x, mx, 2) == pytest.approx(sa.rank2_product(x, mx, -2))
    with pytest.raises(DomainError):
        sa.rank2_product(x, x, 3)


def test_rank2_product_conjugation_and_oracle(rng):
    for _ in range(100):
        a, b = rng.normal(size=3), rng.normal(size=3)
        for q in range(-2, 3):
            val = sa.rank2_product(a, b, q)
            assert abs(sa.rank2_product(a, b, -q) - (-1) ** q * val.conjugate()) < 1e-12
            assert abs(val - _rank2_bruteforce(a, b, q)) < 1e-12


def test_eig_hermitian_examples():
    w, v = sa.eig_hermitian(np.diag([1.0, 2.0, 3.0]))
    assert np.allclose(w, [3, 2, 1])
    assert np.allclose(np.abs(v), np.fliplr(np.eye(3)))
    w, v = sa.eig_hermitian(sa.pauli("x"))
    assert np.allclose(w, [1, -1])
    assert np.allclose(v[:, 0], np.array([1, 1]) / math.sqrt(2))
    assert np.allclose(np.abs(v[:, 1]), np.array([1, 1]) / math.sqrt(2))
    with pytest.raises(ContractError):
        sa.eig_hermitian(np.array([[0, 1], [0, 0]]))


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_eig_hermitian_reconstruction(rng, dim):
    for _ in range(100):
        m = random_hermitian(rng, dim)
        w, v = sa.eig_hermitian(m)
        assert np.all(np.diff(w) <= 0)
        assert np.allclose(v.conj().T @ v, np.eye(dim), atol=1e-10)
        assert np.max(np.abs((v * w) @ v.conj().T - m)) < 1e-9
        for i in range(dim):
            assert np.linalg.norm(m @ v[:, i] - w[i] * v[:, i]) <= 1e-10 * max(1, np.abs(w).max())
            big = np.argmax(np.abs(v[:, i]))
            assert abs(v[big, i].imag) < 1e-14 and v[big, i].real > 0


def test_poly_roots_examples():
    assert sa.poly_roots(sa.ComplexPolynomial((0, 0, 1))) == ([0j, 0j], 0)
    assert sa.poly_roots(sa.ComplexPolynomial((1, 0, 0))) == ([], 2)
    roots, inf = sa.poly_roots(sa.ComplexPolynomial((-1, 0, 1)))
    assert inf == 0 and np.allclose(roots, [-1, 1])
    with pytest.raises(DomainError):
        sa.poly_roots(sa.ComplexPolynomial((0, 0, 0)))
    with pytest.raises(DomainError):
        sa.poly_roots(sa.ComplexPolynomial((1,)))


# exact zeros exercise the degree drop; nonzero sizes stay well conditioned
coeff = st.one_of(
    st.just(0j),
    st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
)


@given(st.lists(coeff, min_size=2, max_size=5))
def test_poly_roots_are_roots(coeffs):
    poly = sa.ComplexPolynomial(coeffs)
    scale = max(abs(c) for c in poly.coeffs)
    if scale == 0:
        return
    roots, at_inf = sa.poly_roots(poly)
    assert len(roots) + at_inf == poly.nominal_degree
    for r in roots:
        # relative to the size of the terms at |r|
        mag = sum(abs(c) * abs(r) ** k for k, c in enumerate(poly.coeffs))
        assert abs(poly(r)) <= 1e-9 * max(scale, mag)
    assert roots == sorted(roots, key=lambda z: (z.real, z.imag))


def test_poly_roots_stable_quadratic():
    # Z^2 - 1e8 Z + 1: naive formula loses the small root
    roots, _ = sa.poly_roots(sa.ComplexPolynomial((1, -1e8, 1)))
    assert roots[0] == pytest.approx(1e-8, rel=1e-12)
    assert roots[1] == pytest.approx(1e8, rel=1e-12)


def test_poly_roots_companion_fallback():
    # (Z - 1)(Z - 2)(Z + 3) = Z^3 - 7Z + 6
    roots, inf = sa.poly_roots(sa.ComplexPolynomial((6, -7, 0, 1)))
    assert inf == 0
    assert np.allclose(roots, [-3, 1, 2])
