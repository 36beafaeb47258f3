import math
from functools import reduce

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dlcovers.errors import DomainError, UsageError
from dlcovers.semigroup import NumericalSemigroup, membership, naive_membership, semigroup_invariants


@pytest.mark.parametrize("gens,expected", [
    ([2, 3], (1, 1, 2)),
    ([3, 4, 5], (2, 2, 3)),
    ([40, 50, 60, 64, 65], (196, 391, 392)),
    ([1], (0, -1, 0)),
])
def test_invariants_examples(gens, expected):
    assert semigroup_invariants(gens) == expected


def test_two_generator_formulas():
    # Sylvester: for coprime a, b the Frobenius number is ab - a - b and the genus half of ab - a - b + 1
    for a in range(2, 30):
        for b in range(a + 1, 40):
            if math.gcd(a, b) != 1:
                continue
            g, fr, c = semigroup_invariants([a, b])
            assert fr == a * b - a - b
            assert g == (a - 1) * (b - 1) // 2


def test_interval_semigroup_genus():
    for a in range(2, 40):
        g, fr, c = semigroup_invariants(range(a, 2 * a))
        assert (g, fr, c) == (a - 1, a - 1, a)


def _naive_invariants(gens):
    limit = max(gens) ** 2 + 1
    M = naive_membership(gens, limit)
    gaps = [n for n in range(limit) if not M[n]]
    fr = max(gaps, default=-1)
    return len(gaps), fr, fr + 1


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(2, 50), min_size=1, max_size=5))
def test_matches_naive_oracle(gens):
    assume(reduce(math.gcd, gens) == 1)
    assert semigroup_invariants(gens) == _naive_invariants(gens)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 60), min_size=1, max_size=6), st.integers(1, 400))
def test_membership_matches_naive(gens, limit):
    assert membership(gens, limit).tolist() == naive_membership(gens, limit)


def test_contains_and_errors():
    S = NumericalSemigroup.generated_by([3, 5])
    assert 8 in S and 7 not in S and -1 not in S and 100 in S
    with pytest.raises(DomainError):
        NumericalSemigroup.generated_by([4, 6])
    with pytest.raises(UsageError):
        NumericalSemigroup.generated_by([])
    with pytest.raises(UsageError):
        NumericalSemigroup.generated_by([0, 3])


def test_memory_stays_linear():
    S = NumericalSemigroup.generated_by([13851, 18468, 18981, 19494, 19665, 19683, 19684])
    assert S.memory_bytes() <= S.conductor + 13851
