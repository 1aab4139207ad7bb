import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import nlskdv as nk
from nlskdv.grid import sample

from conftest import complex_field, oracle_integral, real_field, sech


def test_make_grid_spacing():
    g = nk.make_grid(40.0, 8)
    assert g.dx == 10.0
    assert g.n * g.dx == 2 * g.half_length


def test_wavenumber_ordering():
    g = nk.make_grid(np.pi, 8)
    assert np.allclose(g.wavenumbers, [0, 1, 2, 3, -4, -3, -2, -1])


def test_wavenumber_invariants(grid40):
    k = grid40.wavenumbers
    assert np.count_nonzero(k == 0.0) == 1
    # antisymmetric apart from the Nyquist entry
    n = grid40.n
    for j in range(1, n // 2):
        assert k[j] == -k[n - j]


@pytest.mark.parametrize("L,n", [(40.0, 7), (40.0, 6), (0.0, 64),
                                 (-3.0, 64), (40.0, 9)])
def test_make_grid_rejects(L, n):
    with pytest.raises(nk.ValidationError):
        nk.make_grid(L, n)


def test_deriv_resolved_mode(grid40):
    L = grid40.half_length
    f = real_field(grid40, lambda x: np.sin(np.pi * x / L))
    expect = (np.pi / L) * np.cos(np.pi * grid40.x / L)
    assert np.max(np.abs(nk.deriv(f).values - expect)) < 1e-13


def test_deriv_constant(grid40):
    f = real_field(grid40, lambda x: np.full_like(x, 2.5))
    for order in (1, 2, 3):
        assert np.max(np.abs(nk.deriv(f, order).values)) < 1e-12


def test_deriv_sech_second_order(grid40):
    f = real_field(grid40, sech)
    expect = sech(grid40.x) - 2 * sech(grid40.x) ** 3
    assert np.max(np.abs(nk.deriv(f, 2).values - expect)) <= 1e-10


def test_integrate_constant(grid40):
    f = real_field(grid40, lambda x: np.ones_like(x))
    assert nk.integrate(f) == pytest.approx(2 * grid40.half_length, abs=1e-12)


def test_integrate_sech2_half(grid40):
    # oracle: antiderivative of sech^2(x/2) is 2 tanh(x/2), total 4
    expected = oracle_integral(lambda x: sech(x / 2) ** 2)
    assert expected == pytest.approx(4.0, abs=1e-10)
    f = real_field(grid40, lambda x: sech(x / 2) ** 2)
    assert nk.integrate(f) == pytest.approx(4.0, abs=1e-12)


def test_integrate_sech4_half(grid40):
    expected = oracle_integral(lambda x: sech(x / 2) ** 4)
    assert expected == pytest.approx(8.0 / 3.0, abs=1e-10)
    f = real_field(grid40, lambda x: sech(x / 2) ** 4)
    assert nk.integrate(f) == pytest.approx(8.0 / 3.0, abs=1e-12)


def test_parseval(grid30):
    rng = np.random.default_rng(5)
    f = complex_field(grid30, lambda x: np.exp(-x ** 2 / 9)
                      * (rng.standard_normal(x.size)
                         + 1j * rng.standard_normal(x.size)))
    fh = np.fft.fft(f.values)
    lhs = grid30.dx * np.sum(np.abs(f.values) ** 2)
    rhs = grid30.dx * np.sum(np.abs(fh) ** 2) / grid30.n
    assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


@given(a=st.floats(-5, 5), b=st.floats(-5, 5))
def test_deriv_linear(a, b):
    g = nk.make_grid(10.0, 64)
    f1 = real_field(g, lambda x: np.exp(-x ** 2))
    f2 = real_field(g, lambda x: x * np.exp(-x ** 2 / 2))
    combo = nk.RealField(g, a * f1.values + b * f2.values)
    lhs = nk.deriv(combo).values
    rhs = a * nk.deriv(f1).values + b * nk.deriv(f2).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * (1 + abs(a) + abs(b))


def test_integral_of_derivative_vanishes(grid30):
    f = real_field(grid30, lambda x: np.exp(-x ** 2 / 4) * (1 + 0.3 * x))
    assert abs(nk.integrate(nk.deriv(f))) <= 1e-13


def test_field_validation(grid30):
    with pytest.raises(nk.ValidationError):
        nk.RealField(grid30, np.zeros(grid30.n - 1))
    bad = np.zeros(grid30.n)
    bad[3] = np.inf
    with pytest.raises(nk.ValidationError):
        nk.RealField(grid30, bad)


def test_field_values_frozen(grid30):
    f = real_field(grid30, lambda x: np.exp(-x ** 2))
    with pytest.raises(ValueError):
        f.values[0] = 1.0


def test_grid_equality():
    assert nk.make_grid(40.0, 64) == nk.make_grid(40.0, 64)
    assert nk.make_grid(40.0, 64) != nk.make_grid(40.0, 128)


def test_same_grid_mismatch(grid30, grid40):
    f = real_field(grid30, np.cos)
    g = real_field(grid40, np.cos)
    with pytest.raises(nk.GridMismatchError):
        nk.same_grid(f, g)


def test_field_serialization_roundtrip(tmp_path, grid30):
    f = real_field(grid30, lambda x: np.exp(-x ** 2 / 3))
    base = str(tmp_path / "f")
    nk.save_field(f, base)
    f2 = nk.load_field(base)
    assert f2.grid == grid30
    assert f2.values.tobytes() == f.values.tobytes()

    c = complex_field(grid30, lambda x: np.exp(-x ** 2 / 3) * (1 + 2j))
    nk.save_field(c, str(tmp_path / "c"))
    c2 = nk.load_field(str(tmp_path / "c"))
    assert isinstance(c2, nk.ComplexField)
    assert c2.values.tobytes() == c.values.tobytes()


def test_sample_kinds(grid30):
    fr = sample(grid30, lambda x: np.exp(-x ** 2))
    assert isinstance(fr, nk.RealField)
    fc = sample(grid30, lambda x: np.exp(1j * x), kind="complex")
    assert isinstance(fc, nk.ComplexField)
