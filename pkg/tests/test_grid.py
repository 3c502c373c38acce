import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wdzoom.grid import FineGrid, ScalarField, WenoParams, extend, mirror_index, sample_extended


def test_mirror_examples():
    field = ScalarField(np.array([[10.0, 20.0, 30.0]] * 2))
    assert sample_extended(field, -1, 0) == 20
    assert sample_extended(field, 1, 0) == 20
    assert sample_extended(field, 3, 0) == 20
    assert sample_extended(field, 4, 1) == 10
    assert sample_extended(field, 2, -1) == 30


@given(st.integers(2, 50), st.data())
def test_mirror_is_an_involution_on_the_extension(size, data):
    i = data.draw(st.integers(-(size - 1), 2 * (size - 1)))
    j = mirror_index(i, size)
    assert 0 <= j < size
    assert mirror_index(j, size) == j
    # the reflected partner of j at the same distance from the edge maps back
    if i < 0:
        assert mirror_index(-j, size) == j
    if i > size - 1:
        assert mirror_index(2 * (size - 1) - j, size) == j


def test_mirror_out_of_range():
    with pytest.raises(IndexError):
        mirror_index(-3, 3)
    with pytest.raises(IndexError):
        mirror_index(5, 3)


@pytest.mark.parametrize("mode", ["mirror", "extrapolate"])
def test_extend_constant(mode):
    out = extend(np.full((4, 5), 2.5), 2, mode)
    assert out.shape == (8, 9)
    assert np.allclose(out, 2.5, rtol=0, atol=1e-14)


def test_extend_mirror_matches_sample_extended():
    rng = np.random.default_rng(0)
    data = rng.normal(size=(5, 6))
    field = ScalarField(data)
    out = extend(data, 2, "mirror")
    for r in range(-2, 7):
        for c in range(-2, 8):
            assert out[r + 2, c + 2] == sample_extended(field, c, r)


def test_extend_symmetric_repeats_edge():
    out = extend(np.array([[1.0, 2.0, 3.0]]), (0, 1), "mirror", symmetric=True)
    assert out.tolist() == [[1.0, 1.0, 2.0, 3.0, 3.0]]


def test_extrapolation_is_exact_for_bicubic_polynomials():
    y, x = np.mgrid[0:6, 0:7].astype(float)
    f = lambda x, y: 0.3 * x**3 - x * y + 2 * y**3 - y**2 * x + 1  # noqa: E731
    out = extend(f(x, y), 2, "extrapolate")
    yy, xx = np.mgrid[-2:8, -2:9].astype(float)
    assert np.allclose(out, f(xx, yy), rtol=0, atol=1e-9)


def test_extrapolation_on_short_axes_is_exact_for_lines():
    out = extend(np.array([[1.0, 3.0]]), (0, 2), "extrapolate")
    assert np.allclose(out, [[-3.0, -1.0, 1.0, 3.0, 5.0, 7.0]])


def test_extend_rejects_unknown_mode():
    with pytest.raises(ValueError):
        extend(np.zeros((3, 3)), 1, "wrap")


def test_params_validation():
    assert WenoParams().eps() == 1e-8
    assert WenoParams(h=0.5).eps() == pytest.approx(0.25e-8)
    assert WenoParams().with_h(0.25).h == 0.25
    for bad in [dict(beta=-1), dict(k_eps=0), dict(h=0), dict(beta=np.nan)]:
        with pytest.raises(ValueError):
            WenoParams(**bad)


def test_scalar_field_validation():
    with pytest.raises(ValueError):
        ScalarField(np.zeros(3))
    with pytest.raises(ValueError):
        ScalarField(np.zeros((1, 4)))
    with pytest.raises(ValueError):
        ScalarField(np.array([[0, np.nan], [0, 0]]))
    with pytest.raises(ValueError):
        ScalarField(np.zeros((2, 2)), spacing=0)
    field = ScalarField(np.zeros((2, 3)))
    assert (field.width, field.height) == (3, 2)
    with pytest.raises(ValueError):
        field.data[0, 0] = 1


def test_fine_grid_layout():
    source = ScalarField(np.arange(6.0).reshape(2, 3), spacing=1.0)
    grid = FineGrid.from_field(source)
    assert grid.data.shape == (3, 5)
    assert grid.spacing == 0.5
    assert np.array_equal(grid.coarse, source.data)
    assert grid.cross.shape == (1, 2) and np.isnan(grid.cross).all()
    assert grid.plus_h.shape == (2, 2)
    assert grid.plus_v.shape == (1, 3)
    with pytest.raises(RuntimeError):
        grid.to_field()
