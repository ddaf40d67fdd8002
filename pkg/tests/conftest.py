import math

import numpy as np
import pytest

from ricci_pinch import ShapeOperatorSet, catalog_entry


@pytest.fixture(scope="session")
def cartan12():
    return catalog_entry("cartan-12").data


@pytest.fixture(scope="session")
def cartan24():
    return catalog_entry("cartan-24").data


@pytest.fixture(scope="session")
def torus4():
    """Minimal product of 2-spheres at equal radii, shape operator diag(1,1,-1,-1)."""
    return catalog_entry("clifford-4-2").data


def random_operator_set(rng, n=None, m=None, scale=1.0) -> ShapeOperatorSet:
    n = n or int(rng.integers(4, 10))
    m = m or int(rng.integers(1, 4))
    raw = rng.standard_normal((m, n, n)) * scale
    ops = 0.5 * (raw + np.swapaxes(raw, 1, 2))
    return ShapeOperatorSet(ops)


def ricci_by_sum(ops: ShapeOperatorSet, x: np.ndarray) -> float:
    """Independent evaluation of the Ricci curvature in direction x:
    n - 1 + sum_a tr(A_a) <A_a x, x> - sum_a |A_a x|^2, scalar by scalar."""
    n = ops.n
    total = n - 1.0
    for a in range(ops.m):
        mat = np.asarray(ops.operators[a])
        ax = mat @ x
        total += float(np.trace(mat)) * float(np.dot(x, ax))
        total -= float(np.dot(ax, ax))
    return total
