import math

import pytest

from jsr2.family import MatrixFamily
from jsr2.jsr import JsrMethod, compute_jsr, exact_fast_path, lower_bound, member_radii
from jsr2.symmetrizer import canonicalize_via_eigenbasis
from mat2.core import Mat2

from tests.utils import EXAMPLE7_RHO, EXAMPLE10_RHO, example


def test_example10_pattern_route() -> None:
    report = exact_fast_path(example("example10"))

    assert report is not None
    assert report.method is JsrMethod.EXACT_PATTERN
    assert report.exact
    assert report.lower == report.upper
    assert report.lower == pytest.approx(EXAMPLE10_RHO, rel=1e-12)
    assert report.witness == (1,)
    assert report.transform is None


def test_theorem5_pair() -> None:
    report = exact_fast_path(example("theorem5"))

    assert report is not None
    assert report.method is JsrMethod.EXACT_PATTERN
    assert report.value == pytest.approx(0.9)
    assert report.witness == (0,)


def test_symmetric_route() -> None:
    # Symmetric within rtol, but the off-diagonals are not proportional.
    fam = MatrixFamily.of(Mat2(0, 1, 1, 0), Mat2(100, 1e-4, 1e-4 + 5e-8, 0))
    report = exact_fast_path(fam)

    assert report is not None
    assert report.method is JsrMethod.EXACT_SYMMETRIC
    assert report.witness == (1,)
    assert report.lower == pytest.approx(100, rel=1e-6)


def test_example7_spd_route() -> None:
    report = exact_fast_path(example("example7"))

    assert report is not None
    assert report.method is JsrMethod.EXACT_SPD
    assert report.lower == pytest.approx(EXAMPLE7_RHO, rel=1e-12)
    assert report.witness == (1,)
    assert report.transform is not None


@pytest.mark.parametrize(
    ("members", "rho", "witness"),
    [
        ((Mat2.diag(0.9, 0.5), Mat2(0, 2, -0.3, 0)), 0.9, (0,)),
        ((Mat2(0, 2, -0.5, 0), Mat2.diag(0.2, 0.1)), 1.0, (0,)),
        ((Mat2.diag(0.2, 0.1), Mat2(0, 2, -0.5, 0)), 1.0, (1,)),
    ],
)
def test_diag_antidiag_route(
    members: tuple[Mat2, Mat2], rho: float, witness: tuple[int, ...]
) -> None:
    report = exact_fast_path(MatrixFamily.of(*members))

    assert report is not None
    assert report.method is JsrMethod.EXACT_DIAG_ANTIDIAG
    assert report.lower == pytest.approx(rho, rel=1e-12)
    assert report.witness == witness


def test_eigenbasis_route() -> None:
    fam = MatrixFamily.of(Mat2(2, 1, 0, 1), Mat2(0, -3, 1, 4))
    report = exact_fast_path(fam)

    assert report is not None
    assert report.method is JsrMethod.EXACT_PATTERN
    assert report.lower == pytest.approx(3, rel=1e-12)
    assert report.witness == (1,)
    p = report.transform
    assert p is not None
    # columns are the unit eigenvectors of the first member
    assert (p.a, p.c) == (1, 0)
    assert abs(p.b) == pytest.approx(1 / math.sqrt(2))
    assert p.d == pytest.approx(-p.b)


@pytest.mark.parametrize(
    "fam",
    [
        example("remark2"),
        MatrixFamily.of(Mat2(0, 1, -1, 0), Mat2(1, 1, 0, 1)),
        MatrixFamily.of(Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1), Mat2.diag(0.5, 2)),
    ],
)
def test_no_route(fam: MatrixFamily) -> None:
    assert exact_fast_path(fam) is None


@pytest.mark.parametrize(
    "name", ["example10", "theorem5", "example7", "identity"]
)
def test_enumeration_agrees_with_exact_value(name: str) -> None:
    fam = example(name)
    exact = exact_fast_path(fam)
    assert exact is not None

    enumerated = lower_bound(fam, 6)
    assert enumerated.lower == pytest.approx(exact.lower, rel=1e-9)
    assert enumerated.lower <= exact.lower * (1 + 1e-9)


def test_member_radii() -> None:
    radii = member_radii(example("theorem5"))
    assert radii == pytest.approx((0.9, math.sqrt(0.6)))


def test_compute_jsr_prefers_the_fast_path() -> None:
    assert compute_jsr(example("example10"), 3).method is JsrMethod.EXACT_PATTERN
    report = compute_jsr(example("remark2"), 4)
    assert report.method is JsrMethod.ENUMERATION
    assert report.depth == 4


@pytest.mark.parametrize(
    ("a", "b", "c", "d"),
    [
        (0.5, 1, 1, 0.5),
        (0.5, 1, -1, 0.5),
        (2, 1, -3, 0.5),
        (3, 1, 1, 4),
        (0.2, -0.5, -1, 0.1),
        (-1, 2, -1, 3),
        # (1 - a)(1 - d) = bc: the canonical pair is triangular
        (3, 1, 2, 2),
    ],
)
def test_triangular_pair_criterion(a: float, b: float, c: float, d: float) -> None:
    fam = MatrixFamily.of(Mat2(a, b, 0, 1), Mat2(1, 0, c, d))
    criterion = ((1 - a) * (1 - d) - b * c) * b * c

    canonical, _ = canonicalize_via_eigenbasis(fam, 0)
    product = canonical[1].b * canonical[1].c
    # invariant under rescaling and reordering the eigenbasis
    assert product == pytest.approx(criterion / (a - 1) ** 2, rel=1e-9, abs=1e-12)

    report = exact_fast_path(fam)
    if criterion < 0:
        assert report is None
    else:
        assert report is not None
        assert report.method in {JsrMethod.EXACT_SPD, JsrMethod.EXACT_PATTERN}
        assert report.lower == pytest.approx(max(member_radii(fam)), rel=1e-12)


def test_example8_inside_region() -> None:
    # b = 1, c = 2: 25b² - 34bc + 9c² = -7
    fam = MatrixFamily.of(Mat2(0.95, 0.03, 0.05, 0.97), Mat2(0, 1, 2, 0))
    report = exact_fast_path(fam)

    assert report is not None
    assert report.method is JsrMethod.EXACT_SPD
    assert report.lower == pytest.approx(max(1, math.sqrt(2)), rel=1e-12)
    assert report.witness == (1,)
