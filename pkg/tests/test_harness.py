import numpy as np
import pytest

from wdzoom.harness import DISCONTINUOUS, FUNCTIONS, SMOOTH, run_convergence, sample


def test_sample_grid():
    field = sample(SMOOTH, 0.5)
    assert field.data.shape == (5, 5)
    assert field.origin == (-1.0, -1.0)
    x, y = field.coordinates()
    assert np.allclose(x, [-1, -0.5, 0, 0.5, 1])
    assert field.data[2, 2] == 1.0
    assert field.data[0, 0] == pytest.approx(1 / 3)
    assert sample(SMOOTH, 2.0).data.shape == (2, 2)
    with pytest.raises(ValueError):
        sample(SMOOTH, 0.3)


def test_discontinuous_branches():
    h = 0.25
    assert DISCONTINUOUS(-h, 0.0) == pytest.approx(SMOOTH(-h, 0.0) + 1)
    assert DISCONTINUOUS(0.0, 0.0) == SMOOTH(0.0, 0.0) == 1.0
    assert FUNCTIONS["disc"] is FUNCTIONS["discontinuous"]


def test_smooth_errors_fall_by_about_sixteen():
    report = run_convergence(SMOOTH, beta=1, max_level=7)
    o_inf, o_2 = report.orders[-1]
    assert 3.5 < o_inf < 4.5 and 3.5 < o_2 < 4.5
    hs = [h for h, _ in report.levels]
    assert hs == [2.0**-i for i in range(7)]


def test_run_convergence_needs_two_levels():
    with pytest.raises(ValueError):
        run_convergence(SMOOTH, 1, 1)
