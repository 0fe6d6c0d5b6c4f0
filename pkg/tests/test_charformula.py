"""Character closed forms for the leading genus coefficients.

The brute-force scans recompute the same rationals straight from the
permutation-pair definition, so the two routes share no code.
"""

import itertools
from collections import Counter
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from vtangle.charformula import (
    brute_force_leading,
    brute_force_next,
    class_size,
    double_factorial,
    f_min,
    f_next,
    hook_character,
    hook_dimension,
)
from vtangle.series import F_genus

F = Fraction


def cycle_type(perm):
    seen = set()
    lengths = []
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def test_double_factorial():
    assert [double_factorial(k) for k in (0, 1, 2, 3, 5, 7, 8)] == [
        1, 1, 2, 3, 15, 105, 384]


def test_threshold_values():
    assert [f_min(h) for h in range(1, 6)] == [
        F(1, 4), F(21, 8), F(495, 4), F(225225, 16), F(11904165, 4)]


def test_subleading_values():
    assert [f_next(h) for h in range(1, 5)] == [
        F(10, 3), F(483, 5), F(56628, 7), F(1368653)]


def test_formulas_reject_genus_zero():
    with pytest.raises(ValueError):
        f_min(0)
    with pytest.raises(ValueError):
        f_next(0)


def test_closed_forms_head_the_free_energies():
    # The two leading coefficients of each genus row come out of the same
    # character sums, so the series module must reproduce them verbatim.
    for h in (1, 2, 3):
        f = F_genus(h, 2 * h + 1)
        assert f[2 * h] == f_min(h)
        assert f[2 * h + 1] == f_next(h)


# -- hooks -------------------------------------------------------------------


@given(st.integers(min_value=2, max_value=40), st.data())
def test_hook_dimension_is_binomial(n2, data):
    s = data.draw(st.integers(min_value=0, max_value=n2 - 1))
    assert hook_dimension(n2, s) == comb(n2 - 1, s)
    assert hook_dimension(n2, s) == hook_dimension(n2, n2 - 1 - s)


def test_hook_dimension_range_check():
    with pytest.raises(ValueError):
        hook_dimension(4, 4)
    with pytest.raises(ValueError):
        hook_character(4, -1, (4,))


def test_hook_characters_on_four_letters():
    # Matches the character table of the symmetric group on 4 letters,
    # hooks being all irreducibles except the two-row square.
    assert [hook_character(4, s, (4,)) for s in range(4)] == [1, -1, 1, -1]
    assert [hook_character(4, s, (2, 2)) for s in range(4)] == [1, -1, -1, 1]
    assert [hook_character(4, s, (3, 1)) for s in range(4)] == [1, 0, 0, 1]


def test_hook_character_rejects_what_it_cannot_do():
    with pytest.raises(ValueError):
        hook_character(4, 1, (2, 1, 1))
    with pytest.raises(ValueError):
        hook_character(4, 1, (3, 2))
    with pytest.raises(ValueError):
        class_size(4, (3, 2))


@pytest.mark.parametrize("n2", [4, 5, 6, 8, 10])
def test_full_cycle_column_orthogonality(n2):
    """Characters vanishing off hooks on a full cycle makes this sum complete.

    Column orthogonality of the character table then says the hook-only
    sum is the centralizer order n2 on the full-cycle class and 0 on
    every other class, with no contribution missing.
    """
    full = lambda cls: sum(
        hook_character(n2, s, (n2,)) * hook_character(n2, s, cls)
        for s in range(n2)
    )
    assert full((n2,)) == n2
    if n2 % 2 == 0:
        assert full((2,) * (n2 // 2)) == 0
    for p in range(1, n2 // 2 + 1):
        if (n2 - p, p) != (n2,):
            assert full((n2 - p, p)) == 0


def test_class_size_against_a_direct_scan():
    counts = Counter(cycle_type(p) for p in itertools.permutations(range(6)))
    assert sum(counts.values()) == factorial(6)
    for cls, size in counts.items():
        assert class_size(6, cls) == size


# -- raw scans ---------------------------------------------------------------


def test_torus_threshold_by_brute_force():
    assert brute_force_leading(1) == f_min(1)


def test_torus_subleading_by_brute_force():
    assert brute_force_next(1) == f_next(1)


def test_scan_feasibility_limits():
    with pytest.raises(ValueError):
        brute_force_leading(3)
    with pytest.raises(ValueError):
        brute_force_next(2)
