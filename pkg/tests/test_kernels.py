"""Backend equivalence: the compiled kernels must match pure Python bit for bit."""

import random
from fractions import Fraction

import pytest

from perimetric import _kernels_py as pure
from perimetric import kernels

compiled = pytest.importorskip(
    "perimetric._kernels", reason="compiled extension not built"
)


def _random_symmetric_matrix(rng, n, max_value=2**22):
    flat = [0] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            value = rng.randint(0, max_value)
            flat[i * n + j] = value
            flat[j * n + i] = value
    return flat


def test_backend_is_reported():
    assert kernels.BACKEND == "compiled"


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 17, 40])
def test_nn_tour_backends_agree(n):
    rng = random.Random(n)
    for _ in range(15):
        flat = _random_symmetric_matrix(rng, n)
        for start in range(min(n, 4)):
            assert compiled.nn_tour_ints(flat, n, start) == pure.nn_tour_ints(flat, n, start)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7, 8])
def test_brute_force_backends_agree(n):
    rng = random.Random(100 + n)
    for _ in range(10):
        flat = _random_symmetric_matrix(rng, n)
        assert compiled.brute_force_ints(flat, n) == pure.brute_force_ints(flat, n)


@pytest.mark.parametrize("n", [3, 4, 6, 12, 25])
def test_triple_scan_backends_agree(n):
    rng = random.Random(200 + n)
    for _ in range(10):
        # small value range provokes plenty of violations
        flat = _random_symmetric_matrix(rng, n, max_value=4)
        for cap in (1, 7, 10_000):
            assert compiled.triple_violations_ints(flat, n, cap) == pure.triple_violations_ints(
                flat, n, cap
            )


def test_nn_tour_tie_break_prefers_lowest_index():
    # all distances equal: tour must walk indices in order
    n = 6
    flat = [0 if i == j else 5 for i in range(n) for j in range(n)]
    order, total = compiled.nn_tour_ints(flat, n, 0)
    assert order == [0, 1, 2, 3, 4, 5, 0]
    assert total == 30


def test_dispatch_scales_dyadic_values():
    scaled = kernels.try_scale([Fraction(1, 2), 1, 0, Fraction(1, 2**21)])
    assert scaled == [2**20, 2**21, 0, 1]
    assert kernels.try_scale([Fraction(1, 3)]) is None
    assert kernels.try_scale([float("nan")]) is None
    assert kernels.try_scale([1 << 45]) is None


def test_dispatch_falls_back_on_non_dyadic_values():
    # 1/3 is not dyadic: the pure backend must handle it and stay exact
    third = Fraction(1, 3)
    flat = [0 if i == j else third for i in range(3) for j in range(3)]
    order, length = kernels.nn_tour_flat(flat, 3, 0)
    assert order == (0, 1, 2, 0)
    assert length == 1
    assert kernels.brute_force_flat(flat, 3) == 1
    assert kernels.violations_flat(flat, 3, 100) == []


def test_flat_wrappers_return_exact_fractions():
    tiny = Fraction(1, 2**21)
    flat = [0 if i == j else tiny for i in range(4) for j in range(4)]
    _, length = kernels.nn_tour_flat(flat, 4, 0)
    assert length == 4 * tiny
    assert isinstance(length, Fraction)
