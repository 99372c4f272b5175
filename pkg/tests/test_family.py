import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jsr2.errors import ParseError
from jsr2.family import (
    MatrixFamily,
    SignClass,
    detect_pattern,
    load_family,
    parse_family,
    serialize_family,
)
from mat2.core import Mat2, Tolerance

from tests.utils import FAMILIES, example
from tests.utils.strategies import families, scales


def test_example10_pattern() -> None:
    report = detect_pattern(example("example10"))

    assert report.holds
    assert report.nonnegative
    assert report.sign_class is SignClass.POSITIVE
    assert report.base_index == 1
    assert (report.base_b, report.base_c) == (10, 20)
    assert report.ratios == pytest.approx((0.1, 1, 0.01))


def test_remark2_pattern_is_negative() -> None:
    report = detect_pattern(example("remark2"))

    assert report.holds
    assert report.sign_class is SignClass.NEGATIVE
    assert not report.nonnegative
    assert (report.base_b, report.base_c) == (3.5, -4)


def test_all_diagonal() -> None:
    report = detect_pattern(MatrixFamily.of(Mat2.identity(), Mat2.diag(2, -3)))

    assert report.holds
    assert report.all_diagonal
    assert report.sign_class is SignClass.ZERO
    assert report.base_index is None
    assert report.ratios == (0, 0)


def test_pattern_fails_for_independent_offdiagonals() -> None:
    fam = MatrixFamily.of(Mat2(0, 1, 1, 0), Mat2(0, 1, -1, 0))
    assert not detect_pattern(fam).holds


def test_triangular_members_have_zero_sign_class() -> None:
    fam = MatrixFamily.of(Mat2(1, 2, 0, 1), Mat2(3, -4, 0, 1))
    report = detect_pattern(fam)
    assert report.holds
    assert report.sign_class is SignClass.ZERO
    assert report.ratios == pytest.approx((-0.5, 1))


@given(families, st.lists(scales, min_size=3, max_size=3))
def test_pattern_invariant_under_member_scaling(
    fam: MatrixFamily, factors: list[float]
) -> None:
    scaled = MatrixFamily.of(
        *(m.scaled(s) for m, s in zip(fam.members, factors, strict=False))
    )
    before, after = detect_pattern(fam), detect_pattern(scaled)
    assert before.holds == after.holds
    if before.holds:
        assert before.sign_class == after.sign_class


@given(families, st.data())
def test_pattern_invariant_under_permutation(
    fam: MatrixFamily, data: st.DataObject
) -> None:
    members = data.draw(st.permutations(fam.members))
    before, after = detect_pattern(fam), detect_pattern(MatrixFamily.of(*members))
    assert before.holds == after.holds
    if before.holds:
        assert before.sign_class == after.sign_class


@given(families)
def test_nonnegative_pattern_has_nonnegative_products(fam: MatrixFamily) -> None:
    report = detect_pattern(fam)
    if report.nonnegative:
        assert all(m.b * m.c >= 0 for m in fam.members)


def test_parse_family() -> None:
    fam = parse_family(b'{"matrices": [[[1, 2], [3, 4]], [[0, 1], [1, 0]]]}')

    assert fam.members == (Mat2(1, 2, 3, 4), Mat2(0, 1, 1, 0))
    assert fam.tol == Tolerance()


def test_parse_family_tolerance_overrides() -> None:
    fam = parse_family(
        '{"matrices": [[[1, 0], [0, 1]]], "tol": {"rtol": 1e-6}}',
        defaults=Tolerance(atol=1e-10),
    )
    assert fam.tol == Tolerance(rtol=1e-6, atol=1e-10)


@pytest.mark.parametrize(
    ("text", "field"),
    [
        ('{"matrices": []}', "matrices"),
        ('{"matrices": [[[1, 2, 3], [3, 4]]]}', "matrices[0][0]"),
        ('{"matrices": [[[1, 2], [3, "x"]]]}', "matrices[0][1][1]"),
        ('{"matrices": [[[1, 0], [0, 1]]], "extra": 1}', "extra"),
        ('{"matrices": [[[1, 0], [0, 1]]], "tol": {"rtol": -1}}', "tol.rtol"),
    ],
)
def test_parse_family_rejects(text: str, field: str) -> None:
    with pytest.raises(ParseError) as excinfo:
        parse_family(text)
    assert excinfo.value.field == field
    assert field in str(excinfo.value)


def test_parse_family_invalid_json_position() -> None:
    with pytest.raises(ParseError) as excinfo:
        parse_family('{\n  "matrices": [\n')
    assert excinfo.value.line is not None
    assert excinfo.value.line >= 2


def test_load_family_missing_file() -> None:
    with pytest.raises(ParseError, match="cannot read"):
        load_family(FAMILIES / "does-not-exist.json")


def test_load_family_fixture() -> None:
    fam = load_family(FAMILIES / "identity.json")
    assert fam.members == (Mat2.identity(),)


def test_serialize_family() -> None:
    fam = MatrixFamily.of(Mat2(0.1, -2, math.pi, 1e-300), tol=Tolerance(rtol=1e-7))
    assert parse_family(serialize_family(fam)) == fam


def test_family_rejects_non_finite_members() -> None:
    with pytest.raises(ValueError, match="non-finite"):
        MatrixFamily.of(Mat2(1, math.inf, 0, 1))


def test_family_needs_a_member() -> None:
    with pytest.raises(ValueError, match="at least 1"):
        MatrixFamily.of()
