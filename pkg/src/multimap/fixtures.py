"""Reference multi-maps used by the tests, demos and docs.

``not_uniformly_expanding``
    Four affine branches on thirds. Branch 3 has slope 2 and range [0, 2/3];
    branch 2 has slope 1 and range [2/3, 1]. Points 5-10 are the segment
    endpoints, with 9 = (2/3, 2/3).
``type_three``
    Two branches on halves, two verticals over 1/2, and five endpoint symbols
    with 8 = (0, 0) and 9 = (1/2, 0).
``squares_and_cubes``
    ``x**2`` and ``x**3`` on [0, 1] with the fixed points (0,0) and (1,1).
``doubling``
    Slope-2 full shift on halves with its four endpoints.
``identity``
    One affine branch, D = R = [0, 1].
"""

from __future__ import annotations

from fractions import Fraction as Q

from .model import (
    A0,
    BranchMap,
    MarkovMultiMap,
    Symbol,
    make_partition,
    point_symbol,
    segment_symbol,
    vertical_symbol,
)
from .numbers import IntervalQ


def not_uniformly_expanding() -> MarkovMultiMap:
    t = Q(1, 3)
    return MarkovMultiMap(
        make_partition([0, t, 2 * t, 1]),
        (
            segment_symbol("1", (0, t), (t, 2 * t)),
            segment_symbol("2", (t, 2 * t), (2 * t, 1)),
            segment_symbol("3", (t, 0), (2 * t, 2 * t)),
            segment_symbol("4", (2 * t, 2 * t), (1, t)),
            point_symbol("5", 0, t),
            point_symbol("6", t, 2 * t),
            point_symbol("7", 2 * t, 1),
            point_symbol("8", t, 0),
            point_symbol("9", 2 * t, 2 * t),
            point_symbol("10", 1, t),
        ),
    )


def type_three() -> MarkovMultiMap:
    h = Q(1, 2)
    return MarkovMultiMap(
        make_partition([0, h, 1]),
        (
            segment_symbol("1", (0, 0), (h, 1)),
            segment_symbol("2", (h, 0), (1, h)),
            vertical_symbol("3", h, 0, h),
            vertical_symbol("4", h, h, 1),
            point_symbol("5", h, 1),
            point_symbol("6", 1, h),
            point_symbol("7", h, h),
            point_symbol("8", 0, 0),
            point_symbol("9", h, 0),
        ),
    )


def squares_and_cubes() -> MarkovMultiMap:
    unit = IntervalQ(0, 1)
    return MarkovMultiMap(
        make_partition([0, 1]),
        (
            Symbol("1", A0, unit, unit, BranchMap.monomial(2, True, unit, unit)),
            Symbol("2", A0, unit, unit, BranchMap.monomial(3, True, unit, unit)),
            point_symbol("3", 0, 0),
            point_symbol("4", 1, 1),
        ),
    )


def doubling() -> MarkovMultiMap:
    h = Q(1, 2)
    return MarkovMultiMap(
        make_partition([0, h, 1]),
        (
            segment_symbol("L", (0, 0), (h, 1)),
            segment_symbol("R", (h, 0), (1, 1)),
            point_symbol("p00", 0, 0),
            point_symbol("ph1", h, 1),
            point_symbol("ph0", h, 0),
            point_symbol("p11", 1, 1),
        ),
    )


def identity() -> MarkovMultiMap:
    return MarkovMultiMap(make_partition([0, 1]), (segment_symbol("a", (0, 0), (1, 1)),))


ALL = {
    "not_uniformly_expanding": not_uniformly_expanding,
    "type_three": type_three,
    "squares_and_cubes": squares_and_cubes,
    "doubling": doubling,
    "identity": identity,
}
