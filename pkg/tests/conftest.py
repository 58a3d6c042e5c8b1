from __future__ import annotations

from functools import lru_cache

import pytest

from catbase import CategoryBase, PointSet
from catbase.axioms import validate_base
from catbase.search import SweepConfig, enumerate_bases

# The four named instances used throughout the suite. SIER is the two-point
# base whose basic topology is the Sierpinski topology; BAD3 fails axiom 2.
SIER_MASKS = (2, 3)
INDISC2_MASKS = (3,)
DISC3_MASKS = (1, 2, 4, 7)
BAD3_MASKS = (3, 6, 7)


def make_base(n: int, masks) -> CategoryBase:
    result = validate_base(n, [PointSet(n, m) for m in masks])
    assert result.ok, [v.describe() for v in result.violations]
    return result.base


@lru_cache(maxsize=None)
def candidate_families(n: int) -> tuple[tuple[int, ...], ...]:
    """All duplicate-free families of non-empty subsets, by family code."""
    subsets = (1 << n) - 1
    return tuple(
        tuple(j + 1 for j in range(subsets) if code >> j & 1)
        for code in range(1, 1 << subsets)
    )


@lru_cache(maxsize=None)
def valid_bases(n: int) -> tuple[CategoryBase, ...]:
    return tuple(enumerate_bases(SweepConfig(n=n)))


@pytest.fixture
def sier() -> CategoryBase:
    return make_base(2, SIER_MASKS)


@pytest.fixture
def indisc2() -> CategoryBase:
    return make_base(2, INDISC2_MASKS)


@pytest.fixture
def disc3() -> CategoryBase:
    return make_base(3, DISC3_MASKS)


def ps(n: int, *elements: int) -> PointSet:
    return PointSet.of(n, *elements)


@pytest.fixture(params=["pure", "c"])
def backend(request):
    from catbase import _kernels

    try:
        return _kernels.load_backend(request.param)
    except ImportError:
        pytest.skip("compiled backend not available")
