import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nlmopt import _kernels_py, kernels
from nlmopt.testkit import leibniz_det

BACKENDS = kernels.available_backends()

square = st.integers(0, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))
rect = st.tuples(st.integers(1, 5), st.integers(1, 6)).flatmap(
    lambda s: st.lists(st.lists(st.integers(-3, 3), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]))


@pytest.mark.parametrize("name", sorted(BACKENDS))
@given(m=square)
@settings(max_examples=150, deadline=None)
def test_bareiss_det_matches_sympy(name, m):
    expected = int(sympy.Matrix(m).det()) if m else 1
    assert BACKENDS[name].bareiss_det(m) == expected


@pytest.mark.parametrize("name", sorted(BACKENDS))
@given(m=rect)
@settings(max_examples=150, deadline=None)
def test_bareiss_rank_matches_sympy(name, m):
    assert BACKENDS[name].bareiss_rank(m) == sympy.Matrix(m).rank()


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_gram_det_is_det_of_a_y_at(name):
    r = random.Random(3)
    for _ in range(40):
        m, n = r.randint(1, 3), r.randint(1, 5)
        a = [[r.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        diag = [r.randint(0, 9) for _ in range(n)]
        g = [[sum(a[i][j] * diag[j] * a[k][j] for j in range(n)) for k in range(m)] for i in range(m)]
        assert BACKENDS[name].gram_det(a, diag) == leibniz_det(g)


def test_gram_det_of_empty_matrix_is_one():
    assert kernels.gram_det([], [1, 2]) == 1


def _poly(coeffs, t):
    return sum(c * t**k for k, c in enumerate(coeffs))


@pytest.mark.parametrize("name", sorted(BACKENDS))
@given(coeffs=st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=12))
@settings(max_examples=100, deadline=None)
def test_newton_recovers_integer_polynomial(name, coeffs):
    nodes = list(range(1, len(coeffs) + 1))
    got = BACKENDS[name].newton_monomial(nodes, [_poly(coeffs, t) for t in nodes])
    assert [Fraction(c) for c in got] == [Fraction(c) for c in coeffs]


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_newton_rational_coefficients(name):
    coeffs = [Fraction(1, 2), Fraction(-3, 7), Fraction(5, 3)]
    nodes = [1, 2, 3]
    values = [_poly(coeffs, t) for t in nodes]
    assert list(BACKENDS[name].newton_monomial(nodes, values)) == coeffs


def test_newton_matches_sympy_interpolation():
    nodes = [1, 2, 3, 4, 5]
    values = [7, -2, 11, 40, 3]
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.interpolate(list(zip(nodes, values)), x), x)
    expected = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    got = [Fraction(c) for c in kernels.newton_monomial(nodes, values)]
    assert got == expected


def test_backends_agree_on_large_values():
    if "cython" not in BACKENDS:
        pytest.skip("compiled kernels not built")
    r = random.Random(9)
    a = [[r.randint(-10**30, 10**30) for _ in range(6)] for _ in range(6)]
    assert BACKENDS["cython"].bareiss_det(a) == _kernels_py.bareiss_det(a)
    diag = [r.randint(1, 10**40) for _ in range(6)]
    assert BACKENDS["cython"].gram_det(a[:3], diag) == _kernels_py.gram_det(a[:3], diag)


def test_dispatch_backend_name():
    assert kernels.BACKEND in BACKENDS
