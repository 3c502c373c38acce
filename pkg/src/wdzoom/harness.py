"""Analytic convergence experiments on ``[-1, 1] x [-1, 1]``.

Level ``i`` is labelled by the spacing ``h = 2**-i`` of the *interpolated*
grid: the test function is sampled with spacing ``2h``, doubled once, and
the result is compared with the exact function at every fine sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import ScalarField, WenoParams
from .metrics import ConvergenceReport, ErrorPair, convergence_orders, error_norms
from .wdweno import double

__all__ = [
    "DISCONTINUOUS",
    "FUNCTIONS",
    "SMOOTH",
    "TestFunction",
    "run_convergence",
    "sample",
]


@dataclass(frozen=True)
class TestFunction:
    id: str
    func: Callable[[np.ndarray, np.ndarray], np.ndarray]

    __test__ = False  # keep pytest from collecting this as a test class

    def __call__(self, x, y):
        return self.func(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))


def _smooth(x, y):
    return 1.0 / (x * x + y * y + 1.0)


def _discontinuous(x, y):
    # x == 0 belongs to the right-hand branch
    return _smooth(x, y) + (x < 0.0)


SMOOTH = TestFunction("smooth", _smooth)
DISCONTINUOUS = TestFunction("discontinuous", _discontinuous)
FUNCTIONS = {"smooth": SMOOTH, "discontinuous": DISCONTINUOUS, "disc": DISCONTINUOUS}


def sample(fn: TestFunction, h: float) -> ScalarField:
    """Sample ``fn`` on the square with spacing ``h``; ``2 / h`` must be an integer."""
    if not h > 0:
        raise ValueError("h must be positive")
    cells = 2.0 / h
    n_cells = int(round(cells))
    if n_cells < 1 or abs(cells - n_cells) > 1e-9 * max(cells, 1.0):
        raise ValueError(f"h={h} does not divide the interval [-1, 1]")
    coords = -1.0 + h * np.arange(n_cells + 1)
    xx, yy = np.meshgrid(coords, coords)
    return ScalarField(fn(xx, yy), spacing=h, origin=(-1.0, -1.0))


def run_convergence(
    fn: TestFunction,
    beta: float,
    max_level: int,
    region: tuple[float, float, float, float] | None = None,
    k_eps: float = 1e-8,
    boundary: str = "extrapolate",
) -> ConvergenceReport:
    """Errors of one doubling for levels ``h = 1, 1/2, ..., 2**-(max_level-1)``."""
    if max_level < 2:
        raise ValueError("max_level must be at least 2")
    levels: list[tuple[float, ErrorPair]] = []
    for i in range(max_level):
        h = 2.0**-i
        coarse = sample(fn, 2.0 * h)
        fine = double(coarse, WenoParams(beta=beta, k_eps=k_eps), boundary)
        levels.append((h, error_norms(fine, fn, region)))
        del fine, coarse
    return convergence_orders(levels)
