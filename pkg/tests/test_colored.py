from collections import Counter

import pytest

from crgstir.colored import (
    ZERO,
    ColoredPermutation,
    PartitionValidationError,
    all_elements,
    cycle_decomposition,
    enumerate_full,
    enumerate_ordered,
    enumerate_partitions,
    enumerate_super,
    full_permutation_counts,
    inv,
    inversions_by_base,
    iter_group,
    parse_ordered,
    parse_partition,
    parse_super,
    refines,
    standardize,
    underlying_partition,
)
from crgstir.qpoly import mstep_factorial


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def brute_force_partitions(m, n, barred=False):
    """Every set partition of [n^m] plus 0 that passes validation."""
    out = Counter()
    for blocks in set_partitions(sorted(all_elements(m, n))):
        try:
            sigma = standardize(blocks, m, n, barred)
        except PartitionValidationError:
            continue
        out[sigma.k] += 1
    return out


def naive_inv(sigma):
    """Inversions straight from the definition on the standard-form block list."""
    blocks = sigma.blocks
    count = 0
    for j, blk in enumerate(blocks):
        for i, c in blk:
            if i == 0 or c != 0:
                continue
            for l in range(j + 1, len(blocks)):
                low = min(b for b, _ in blocks[l])
                if i >= low:
                    count += 1
    return count


def test_standard_form_of_worked_example():
    sigma = parse_partition("0 4^0 4^1 4^2 | 1^0 3^2/1^1 3^0/1^2 3^1 | 2^0/2^1/2^2", 3)
    assert str(sigma) == "0 4^0 4^1 4^2 | 1^1 3^0/1^2 3^1/1^0 3^2 | 2^1/2^2/2^0"
    assert inv(sigma) == 11
    assert inversions_by_base(sigma) == (0, 0, 5, 6)


def test_super_example_inversions():
    sup = parse_super("0 1^2 1^0 1^1 3^2 3^0 3^1 | 2^1/2^2/2^0", 3)
    assert inv(sup) == 5


@pytest.mark.parametrize(
    "text, n, condition",
    [
        ("0 1^0 | 1^1/1^2", 1, "(i)"),
        ("0 | 1^0 2^0/1^1 2^2/1^2 2^1", 2, "(ii)"),
        ("0 | 1^0/1^1", 1, "cover"),
    ],
)
def test_validation_names_condition(text, n, condition):
    with pytest.raises(PartitionValidationError) as err:
        parse_partition(text, 3, n=n)
    assert err.value.condition == condition


def test_barred_rejects_single_base_zero_block():
    with pytest.raises(PartitionValidationError) as err:
        parse_partition("0 1^0 1^1 | 2^0/2^1", 2, barred=True)
    assert err.value.condition == "(iii)"


def test_ordered_rejects_non_rotating_tuple():
    with pytest.raises(PartitionValidationError) as err:
        parse_ordered("(0 3^2 3^0 3^1 | 1^1/1^0/1^2 | 2^1/2^2/2^0)", 3, "super")
    assert err.value.condition == "(S_{i+1})"


@pytest.mark.parametrize("m, n", [(1, 3), (1, 4), (2, 2), (2, 3), (3, 2), (4, 2)])
@pytest.mark.parametrize("barred", [False, True])
def test_enumeration_matches_brute_force(m, n, barred):
    if barred and m == 1:
        pytest.skip("barred partitions need m >= 2")
    expected = brute_force_partitions(m, n, barred)
    got = Counter()
    keys = set()
    for k in range(n + 1):
        for sigma in enumerate_partitions(m, n, k, barred):
            got[k] += 1
            keys.add(sigma.key())
            assert naive_inv(sigma) == inv(sigma)
    assert got == expected
    assert len(keys) == sum(got.values())


def test_super_enumeration_counts_start_colors():
    for k in range(3):
        plain = list(enumerate_partitions(3, 2, k))
        sup = list(enumerate_super(3, 2, k))
        assert len(sup) == sum(2 ** len(p.zero_bases) for p in plain)


def test_ordered_enumeration_is_distinct_and_valid():
    seen = set()
    for omega in enumerate_ordered(2, 3, 2, "super"):
        assert omega not in seen
        seen.add(omega)
        parse_ordered(str(omega), 2, "super", n=3)


def test_refinement():
    fine = parse_partition("0 | 1^0/1^1 | 2^0/2^1", 2)
    coarse = parse_partition("0 | 1^0 2^0/1^1 2^1", 2)
    top = parse_partition("0 1^0 1^1 2^0 2^1", 2)
    assert refines(fine, coarse) and refines(coarse, top) and refines(fine, top)
    assert not refines(coarse, fine)


def test_cycle_decomposition_example():
    g = ColoredPermutation(4, 1, 3, (2, 1, 3), (1, 0, 0))
    dec = cycle_decomposition(g)
    assert str(dec) == "(0)(1^0,2^1,1^1,2^2,1^2,2^3,1^3,2^0)(3^0)(3^1)(3^2)(3^3)"
    assert dec.is_full


def test_half_turn_cycle_is_not_full():
    g = ColoredPermutation(4, 1, 1, (1,), (2,))
    dec = cycle_decomposition(g)
    assert (1, 0) in dec.cycles[1] and len(dec.cycles[1]) == 2
    assert dec.xi_exponent[1] == 2
    assert not dec.is_full


def test_group_sizes():
    assert sum(1 for _ in iter_group(3, 1, 2)) == 18
    assert sum(1 for _ in iter_group(3, 3, 2)) == 6
    assert all(g.is_member() for g in iter_group(4, 2, 2))


def test_full_permutations_on_zero_block():
    assert sum(1 for _ in enumerate_full(2, 1, 2, k=0)) == 3


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 2)])
def test_full_counts_follow_product_formula(m, n):
    counts = full_permutation_counts(m, 1, n)
    for k in range(n + 1):
        for sigma in enumerate_partitions(m, n, k):
            b = len(sigma.zero_block)
            expected = mstep_factorial(b - m, m)
            for tup in sigma.tuples:
                size = len(tup[-1])
                for f in range(2, size):
                    expected *= f
            assert counts.get(sigma.key(), 0) == expected


def test_underlying_partition_has_color_zero_inversion_heads():
    for g in iter_group(2, 1, 2):
        sigma = underlying_partition(g)
        assert ZERO in sigma.zero_block
        assert sigma.n == 2
