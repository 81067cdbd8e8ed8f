import pytest
from hypothesis import given, settings, strategies as st

from crgstir.colored import enumerate_ordered, inv, parse_ordered
from crgstir.involution import NotMergeable, NotSplittable, cancellation, iota, merge, split, verify_cancellation
from crgstir.stirling import alternating_target

EXAMPLES = [
    ("super", "(0 1^2 1^0 1^1 3^1 3^2 3^0 | 2^0/2^1/2^2)", "(0 1^2 1^0 1^1 | 3^2/3^0/3^1 | 2^0/2^1/2^2)"),
    ("super", "(0 1^2 1^0 1^1 | 2^0 3^1/2^1 3^2/2^2 3^0)", "(0 1^2 1^0 1^1 | 2^0/2^1/2^2 | 3^2/3^0/3^1)"),
    ("super", "(0 1^2 1^0 1^1 | 2^0 3^0/2^1 3^1/2^2 3^2)", "(0 1^2 1^0 1^1 | 3^1/3^2/3^0 | 2^0/2^1/2^2)"),
    ("cr", "(0 1^1 1^2 1^0 3^1 3^2 3^0 | 2^0/2^1/2^2)", "(0 1^2 1^0 1^1 | 3^0/3^1/3^2 | 2^0/2^1/2^2)"),
    ("cr", "(0 1^1 1^2 1^0 | 2^0 3^1/2^1 3^2/2^2 3^0)", "(0 1^1 1^2 1^0 | 2^0/2^1/2^2 | 3^0/3^1/3^2)"),
    ("cr", "(0 1^1 1^2 1^0 | 2^0 3^0/2^1 3^1/2^2 3^2)", "(0 1^1 1^2 1^0 | 3^2/3^0/3^1 | 2^0/2^1/2^2)"),
]


@pytest.mark.parametrize("flavor, before, after", EXAMPLES)
def test_split_and_merge_examples(flavor, before, after):
    a = parse_ordered(before, 3, flavor)
    b = parse_ordered(after, 3, flavor)
    assert split(a, 3) == b
    assert merge(b, 3) == a


def test_cr_merge_blocked_when_no_right_neighbor_is_smaller():
    stuck = parse_ordered("(0 | 1^2/1^0/1^1 | 2^1/2^2/2^0 | 3^1/3^2/3^0)", 3, "cr")
    with pytest.raises(NotMergeable):
        merge(stuck, 3)


def test_singleton_cannot_split():
    omega = parse_ordered("(0 | 1^0/1^1 | 2^0/2^1)", 2, "super")
    with pytest.raises(NotSplittable):
        split(omega, 2)


@pytest.mark.parametrize("flavor", ["super", "cr"])
@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_cancellation(flavor, m, n):
    result = cancellation(m, n, flavor)
    assert result.report.ok, result.report.witness
    assert result.total == alternating_target(flavor, m, n)


@pytest.mark.parametrize("flavor", ["super", "cr"])
def test_fixed_points_are_all_singletons(flavor):
    # every survivor has n tuples, each of one base
    for omega in cancellation(3, 3, flavor).fixed:
        assert omega.k == omega.n


def ordered_partitions(flavor):
    return st.sampled_from([(m, n) for m in (2, 3) for n in (2, 3)]).flatmap(
        lambda mn: st.sampled_from(
            [w for k in range(mn[1] + 1) for w in enumerate_ordered(mn[0], mn[1], k, flavor)]
        )
    )


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["super", "cr"]).flatmap(ordered_partitions))
def test_iota_is_an_involution(omega):
    step = iota(omega)
    back = iota(step.output)
    assert back.output == omega
    if step.action == "split":
        assert back.action == "merge" and step.output.k == omega.k + 1
        weight = 1 if omega.flavor == "super" else omega.m - 1
        assert inv(step.output) - inv(omega) == weight


def test_verify_reports_detail():
    report = verify_cancellation(2, 3, "super")
    assert report.ok
    assert "two-cycles=" in report.detail
