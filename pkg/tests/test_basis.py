import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flannquad.basis import MAX_DEGREE, BasisSet


def test_unscaled_expand():
    np.testing.assert_array_equal(BasisSet(3).expand(2.0), [2, 4, 8])


@pytest.mark.parametrize("n", [1, 4, 16])
def test_no_constant_link(n):
    np.testing.assert_array_equal(BasisSet(n).expand(0.0), np.zeros(n))


def test_unit_scaled_expand():
    np.testing.assert_allclose(BasisSet(2, "unit", 0, 6).expand(3.0), [0.5, 0.25])


def test_centered_scaled_expand():
    # midpoint maps to u = 0, endpoints to -1 and 1
    np.testing.assert_array_equal(BasisSet(3, "centered", 0, 6).expand(3.0), [0, 0, 0])
    np.testing.assert_array_equal(BasisSet(3, "centered", 0, 6).expand(6.0), [1, 1, 1])
    np.testing.assert_array_equal(BasisSet(3, "centered", 0, 6).expand(0.0), [-1, 1, -1])


def test_unscaled_derivative():
    np.testing.assert_array_equal(BasisSet(3).expand_derivative(2.0), [1, 4, 12])
    np.testing.assert_array_equal(BasisSet(4).expand_derivative(0.0), [1, 0, 0, 0])


def _central(basis, x, h=1e-6):
    return (basis.expand(x + h) - basis.expand(x - h)) / (2 * h)


def test_unit_scaled_derivative_chain_rule():
    basis = BasisSet(2, "unit", 0, 6)
    got = basis.expand_derivative(3.0)
    np.testing.assert_allclose(got, [1 / 6, 1 / 6], rtol=1e-15)
    np.testing.assert_allclose(got, _central(basis, 3.0), rtol=1e-8)


def test_centered_derivative_chain_rule():
    basis = BasisSet(3, "centered", 1, 5)
    x = 4.0  # u = 0.5, du/dx = 0.5
    np.testing.assert_allclose(basis.expand_derivative(x), [0.5, 0.5, 0.375], rtol=1e-15)


def test_array_input_shapes():
    basis = BasisSet(5, "centered", 0, 2)
    xs = np.linspace(0, 2, 7)
    assert basis.expand(xs).shape == (7, 5)
    assert basis.design_matrix(xs).shape == (7, 5)
    np.testing.assert_array_equal(basis.design_matrix(xs)[3], basis.expand_derivative(xs[3]))


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(degree=0),
        dict(degree=MAX_DEGREE + 1),
        dict(degree=3, scaling="unit"),
        dict(degree=3, scaling="unit", a=2.0, b=2.0),
        dict(degree=3, scaling="centered", a=2.0, b=1.0),
        dict(degree=3, scaling="log", a=0.0, b=1.0),
        dict(degree=3, a=0.0, b=1.0),
    ],
)
def test_invalid_bases_rejected(kwargs):
    with pytest.raises(ValueError):
        BasisSet(**kwargs)


bases = st.one_of(
    st.builds(BasisSet, st.integers(1, 8)),
    st.builds(
        lambda n, s, a, w: BasisSet(n, s, a, a + w),
        st.integers(1, 8),
        st.sampled_from(["unit", "centered"]),
        st.floats(-5, 5),
        st.floats(0.5, 10),
    ),
)


def _domain_point(basis, t):
    if basis.is_scaled:
        return basis.a + t * (basis.b - basis.a)
    return 4.0 * t - 2.0


@settings(max_examples=200, deadline=None)
@given(bases, st.floats(0.0, 1.0))
def test_derivative_matches_finite_difference(basis, t):
    x = _domain_point(basis, t)
    h = 1e-6
    analytic = basis.expand_derivative(x)
    numeric = (basis.expand(x + h) - basis.expand(x - h)) / (2 * h)
    assert np.all(np.abs(analytic - numeric) <= 1e-4 * np.maximum(1, np.abs(analytic)))


@settings(max_examples=100, deadline=None)
@given(bases, st.floats(-100, 100))
def test_length_contract(basis, x):
    assert basis.expand(x).shape == (basis.degree,)
    assert basis.expand_derivative(x).shape == (basis.degree,)


@settings(max_examples=200, deadline=None)
@given(bases.filter(lambda b: b.is_scaled), st.floats(0.0, 1.0))
def test_scaled_links_are_bounded_on_domain(basis, t):
    x = min(basis.b, max(basis.a, basis.a + t * (basis.b - basis.a)))
    assert np.all(np.abs(basis.expand(x)) <= 1.0)


def test_scaling_dict_round_trip():
    for basis in [BasisSet(4), BasisSet(4, "unit", 0, 6), BasisSet(4, "centered", -1, 3)]:
        assert BasisSet.from_scaling_dict(4, basis.scaling_dict()) == basis
    # a bare {a, b} object means the unit map
    assert BasisSet.from_scaling_dict(2, {"a": 0, "b": 6}).scaling == "unit"
