import math

import numpy as np
import pytest

from jsr2.errors import BudgetExceededError
from jsr2.family import MatrixFamily
from jsr2.jsr import JsrMethod, lower_bound, lower_bound_naive, upper_bound
from jsr2.symmetrizer import spd_feasibility
from mat2.core import Mat2, spectral_radius

from tests.utils import EXAMPLE10_RHO, example, random_family


@pytest.mark.parametrize("m", [Mat2(1, 2, 3, 4), Mat2(0, 1, -1, 0), Mat2.diag(-3, 2)])
def test_single_member(m: Mat2) -> None:
    report = lower_bound(MatrixFamily.of(m), 6)

    assert report.lower == pytest.approx(spectral_radius(m), rel=1e-12)
    assert report.witness == (0,)
    assert report.method is JsrMethod.ENUMERATION


def test_zero_family() -> None:
    report = lower_bound(MatrixFamily.of(Mat2(0, 0, 0, 0), Mat2(0, 1, 0, 0)), 4)
    assert report.lower == report.upper == 0
    assert report.exact


@pytest.mark.parametrize("depth", [1, 4, 7, 10])
def test_example10_never_exceeds_member_radius(depth: int) -> None:
    report = lower_bound(example("example10"), depth)

    assert report.lower == pytest.approx(EXAMPLE10_RHO, rel=1e-9)
    assert report.witness == (1,)
    assert report.upper >= report.lower


def test_theorem5_pair() -> None:
    report = lower_bound(example("theorem5"), 10)
    assert report.lower == pytest.approx(0.9, rel=1e-9)
    assert report.witness == (0,)


@pytest.mark.parametrize("seed", range(20))
def test_matches_naive_enumeration(seed: int) -> None:
    rng = np.random.default_rng(seed)
    for _ in range(10):
        fam = random_family(rng)
        pruned = lower_bound(fam, 8, workers=1)
        value, _ = lower_bound_naive(fam, 8)

        assert pruned.lower == pytest.approx(value, rel=1e-12)


def test_remark2_matches_naive_enumeration() -> None:
    fam = example("remark2")
    report = lower_bound(fam, 8)
    value, _ = lower_bound_naive(fam, 8)

    assert report.lower == pytest.approx(value, rel=1e-12)
    assert report.lower >= 1 - 1e-12


@pytest.mark.parametrize("seed", range(50))
def test_bounds_sandwich(seed: int) -> None:
    rng = np.random.default_rng(100 + seed)
    for i in range(10):
        fam = random_family(rng, 1 + i % 3)
        for depth in range(1, 7):
            lower = lower_bound(fam, depth, workers=1).lower
            upper = upper_bound(fam, depth, workers=1)
            assert lower <= upper * (1 + 1e-9)


SCALES = (1e-3, 0.5, 7.0, 1e5)


@pytest.mark.parametrize("seed", range(50))
def test_homogeneity(seed: int) -> None:
    rng = np.random.default_rng(700 + seed)
    for i in range(10):
        fam = random_family(rng, 1 + i % 3)
        depth = 1 + i % 6
        base = lower_bound(fam, depth, workers=1)
        for scale in SCALES:
            scaled = lower_bound(fam.scaled(scale), depth, workers=1)

            assert scaled.lower == pytest.approx(scale * base.lower, rel=1e-9)
            assert scaled.upper == pytest.approx(scale * base.upper, rel=1e-9)


def test_lower_bound_monotone_in_depth() -> None:
    fam = example("remark2")
    values = [lower_bound(fam, depth).lower for depth in range(1, 9)]
    assert values == sorted(values)


def test_deep_products_do_not_overflow() -> None:
    fam = MatrixFamily.of(Mat2(1e30, 5e29, 0, 1), Mat2(1e-30, 0, 2e-30, 1e-31))
    report = lower_bound(fam, 14)

    assert math.isfinite(report.lower)
    assert math.isfinite(report.upper)
    assert report.lower == pytest.approx(1e30, rel=1e-9)
    assert report.upper >= report.lower


def test_worker_count_does_not_change_the_report() -> None:
    fam = example("remark2")
    assert lower_bound(fam, 7, workers=1) == lower_bound(fam, 7, workers=4)


def test_upper_bound_of_identity() -> None:
    assert upper_bound(MatrixFamily.of(Mat2.identity(), Mat2.identity()), 6) == 1


def test_upper_bound_of_symmetrized_family() -> None:
    result = spd_feasibility(example("example10"))
    fam = MatrixFamily.of(*result.conjugated)
    assert upper_bound(fam, 1) == pytest.approx(EXAMPLE10_RHO, rel=1e-9)


def test_budget_exhaustion_keeps_partial_bounds() -> None:
    with pytest.raises(BudgetExceededError) as excinfo:
        lower_bound(example("example10"), 10, budget=100)

    partial = excinfo.value.partial
    assert partial is not None
    assert partial.depth == 4
    assert partial.upper_depth <= 3
    assert partial.lower <= partial.upper
    assert excinfo.value.evaluated == 32
    assert "stopped before length 5" in excinfo.value.__notes__[0]


def test_budget_smaller_than_family() -> None:
    with pytest.raises(BudgetExceededError) as excinfo:
        lower_bound(example("example10"), 3, budget=2)
    assert excinfo.value.partial is None


def test_upper_bound_budget() -> None:
    with pytest.raises(BudgetExceededError):
        upper_bound(example("remark2"), 20, budget=1000)


def test_depth_must_be_positive() -> None:
    with pytest.raises(ValueError, match="positive"):
        lower_bound(example("remark2"), 0)
