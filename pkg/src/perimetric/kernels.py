"""Distance-matrix kernels with a compiled fast path.

All tenant distances are exact dyadic rationals with denominator at most
2**21, so a matrix can be rescaled to plain integers and handed to the
compiled extension. When the extension is missing, or when a caller
supplies values that do not scale exactly (arbitrary rationals, say),
the pure-Python backend runs on the original objects instead. Both
backends share loop order and tie-breaks, so results are identical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, TypeVar

from perimetric import _kernels_py as _pure

try:
    from perimetric import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure-python"

SCALE_BITS = 21
SCALE = 1 << SCALE_BITS

# Keep scaled entries comfortably inside int64: a 2000-point tour of values
# below 2**40 sums below 2**51.
_SCALED_LIMIT = 1 << 40

T = TypeVar("T")


def build_matrix(items: Sequence[T], dist: Callable[[T, T], object]) -> list:
    """Flat row-major matrix of pairwise distances with a zero diagonal.

    dist is called once per unordered pair and mirrored.
    """
    n = len(items)
    flat = [0] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            value = dist(items[i], items[j])
            flat[i * n + j] = value
            flat[j * n + i] = value
    return flat


def try_scale(values: Sequence[object]) -> list[int] | None:
    """Rescale values to integers in units of 2**-21, or None if inexact."""
    out = []
    for value in values:
        if isinstance(value, int):
            scaled = value << SCALE_BITS
        else:
            try:
                frac = Fraction(value)
            except (TypeError, ValueError):
                return None
            num = frac.numerator << SCALE_BITS
            scaled, rem = divmod(num, frac.denominator)
            if rem:
                return None
        if not -_SCALED_LIMIT < scaled < _SCALED_LIMIT:
            return None
        out.append(scaled)
    return out


def _exact(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def nn_tour_flat(flat: Sequence, n: int, start: int) -> tuple[tuple[int, ...], Fraction]:
    scaled = try_scale(flat)
    if scaled is not None:
        impl = _compiled if _compiled is not None else _pure
        order, total = impl.nn_tour_ints(scaled, n, start)
        return tuple(order), Fraction(total, SCALE)
    order, total = _pure.nn_tour_ints(flat, n, start)
    return tuple(order), _exact(total)


def brute_force_flat(flat: Sequence, n: int) -> Fraction:
    scaled = try_scale(flat)
    if scaled is not None:
        impl = _compiled if _compiled is not None else _pure
        return Fraction(impl.brute_force_ints(scaled, n), SCALE)
    return _exact(_pure.brute_force_ints(flat, n))


def violations_flat(flat: Sequence, n: int, cap: int) -> list[tuple[int, int, int]]:
    scaled = try_scale(flat)
    if scaled is not None:
        impl = _compiled if _compiled is not None else _pure
        return [tuple(t) for t in impl.triple_violations_ints(scaled, n, cap)]
    return [tuple(t) for t in _pure.triple_violations_ints(flat, n, cap)]
