import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dlcovers.errors import DomainError, UsageError
from dlcovers.ff import (
    FieldDescriptor,
    enumerate_partition,
    find_irreducible,
    frobenius,
    get_field,
    get_tower,
    is_rth_power,
    partition_range,
    relative_trace,
)
from dlcovers.ff.poly import is_irreducible
from dlcovers.ff.tower import nb_frob_codes, nb_mul_codes, nb_pow_codes


def _brute_least_irreducible(p, n):
    # lex order on (c_{n-1}, ..., c_0); irreducible iff no factor of degree <= n/2
    for coeffs in itertools.product(range(p), repeat=n):
        if is_irreducible(coeffs, p):
            return coeffs


@pytest.mark.parametrize("p,n,expected", [(2, 1, (0,)), (2, 2, (1, 1)), (3, 2, (0, 1))])
def test_find_irreducible_examples(p, n, expected):
    assert find_irreducible(p, n) == expected


@pytest.mark.parametrize("p,n", [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (5, 2)])
def test_find_irreducible_is_lex_least(p, n):
    assert find_irreducible(p, n) == _brute_least_irreducible(p, n)


def test_degree_two_roots_oracle():
    # irreducible quadratics over F_3 have no root; T^2+1 is the first in lex order
    for c1, c0 in itertools.product(range(3), repeat=2):
        rootless = all((x * x + c1 * x + c0) % 3 for x in range(3))
        if rootless:
            assert (c1, c0) == (0, 1)
            break


def test_f4_products():
    F = get_field(2, 2)
    T = F.gen()
    assert T * (T + 1) == F.one()
    assert T.inv() == T + 1


def test_inverse_of_zero_and_mixed_fields():
    F = get_field(2, 2)
    with pytest.raises(DomainError):
        F.zero().inv()
    with pytest.raises(UsageError):
        F.gen() + get_field(2, 3).gen()


def test_full_power_is_identity_on_sample():
    F = get_field(2, 12)
    rng = np.random.default_rng(1)
    for a in rng.integers(0, F.order, 50):
        assert F.pow(int(a), F.order) == int(a)


@pytest.mark.parametrize("p,n", [(2, 4), (2, 8), (3, 4), (3, 5), (5, 3)])
def test_field_axioms_exhaustive(p, n):
    F = get_field(p, n)
    xs = np.arange(F.order, dtype=np.int64)
    a, b = np.meshgrid(xs, xs[: min(F.order, 64)])
    a, b = a.ravel(), b.ravel()
    c = (a * 7 + 3) % F.order
    assert np.array_equal(F.vmul(a, b), F.vmul(b, a))
    assert np.array_equal(F.vmul(a, F.vadd(b, c)), F.vadd(F.vmul(a, b), F.vmul(a, c)))
    assert np.array_equal(F.vmul(F.vmul(a, b), c), F.vmul(a, F.vmul(b, c)))
    nz = xs[1:]
    inv = np.array([F.inv(int(v)) for v in nz])
    assert np.all(F.vmul(nz, inv) == F.from_digits([1]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3**7 - 1), st.integers(0, 3**7 - 1), st.integers(0, 3**7 - 1))
def test_field_axioms_sampled(a, b, c):
    F = get_field(3, 7)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1


def test_frobenius_matches_power_f9():
    F = get_field(3, 2)
    for a in F:
        assert frobenius(a, 3, 1) == a ** 3


def test_frobenius_additive_f2_20():
    F = get_field(2, 20)
    rng = np.random.default_rng(2)
    for a, b in rng.integers(0, F.order, (100, 2)):
        a, b = F.element(int(a)), F.element(int(b))
        assert frobenius(a + b, 2) - frobenius(a, 2) - frobenius(b, 2) == F.zero()


def test_tower_matches_square_and_multiply_f3_18():
    T = get_tower(3, 18)
    rng = np.random.default_rng(3)
    for a in rng.integers(0, T.order, 100):
        a = int(a)
        assert T.frob(a, 1) == T.pow(a, 3)
        assert T.frob(a, 18) == a


@pytest.mark.parametrize("p,n", [(2, 12), (3, 6), (2, 20), (3, 18)])
def test_numba_tower_kernels_match_python(p, n):
    T = get_tower(p, n)
    Fpack = T.kernel_args()
    rng = np.random.default_rng(n)
    for a, b in rng.integers(0, T.order, (40, 2)):
        a, b = int(a), int(b)
        assert nb_mul_codes(a, b, Fpack) == T.mul(a, b)
        assert nb_frob_codes(a, 1, Fpack) == T.frob(a, 1)
        assert nb_pow_codes(a, 1000003, Fpack) == T.pow(a, 1000003)


@pytest.mark.parametrize("p,n", [(2, 6), (2, 12), (3, 6)])
def test_tower_mul_matches_flat_field(p, n):
    # the tower and the flat field are different presentations; compare through
    # multiplicative structure: a^(order-1) = 1 and exponent laws
    T = get_tower(p, n)
    rng = np.random.default_rng(5)
    for a in rng.integers(1, T.order, 30):
        a = int(a)
        assert T.pow(a, T.order - 1) == T.pow(1, 1)
        assert T.mul(T.pow(a, 5), T.pow(a, 7)) == T.pow(a, 12)


def test_frobenius_identity_exhaustive():
    F = get_field(2, 12)
    xs = np.arange(F.order, dtype=np.int64)
    assert np.array_equal(F.vfrobenius(xs, 8, 4), xs)
    assert np.array_equal(F.vfrobenius(xs, 2, 12), xs)
    with pytest.raises(UsageError):
        F.frobenius(3, 8 * 8 * 8 * 2, 1)


def test_trace_examples():
    F4 = get_field(2, 2)
    F4.register_subfield(1)
    assert relative_trace(F4.zero(), 2).code == 0
    assert relative_trace(F4.gen(), 2).code == 1
    F64 = get_field(2, 6)
    F64.register_subfield(2)
    assert sum(1 for a in F64 if relative_trace(a, 4).code == 0) == 16


def test_trace_needs_registered_subfield():
    F = FieldDescriptor(2, 6)
    with pytest.raises(UsageError):
        relative_trace(F.gen(), 4)
    with pytest.raises(UsageError):
        F.register_subfield(4)


def test_trace_transitivity():
    F = get_field(2, 12)
    F.register_subfield(4)
    F.register_subfield(1)
    get_field(2, 4).register_subfield(1)
    for a in F:
        inner = relative_trace(a, 16)
        assert relative_trace(inner, 2) == relative_trace(a, 2)


def test_embedding_is_homomorphism_commuting_with_frobenius():
    F = get_field(2, 12)
    emb = F.register_subfield(4)
    sub = emb.sub
    for a in range(sub.order):
        for b in range(0, sub.order, 3):
            assert emb(sub.mul(a, b)) == F.mul(emb(a), emb(b))
        assert emb(sub.frobenius(a, 2)) == F.frobenius(emb(a), 2)


def test_rth_power_examples():
    F = get_field(2, 6)
    g = F.element(F.primitive_element)
    assert is_rth_power(F.one(), 7)[0]
    assert is_rth_power(g ** 3, 3) == (True, 3)
    assert is_rth_power(g, 3) == (False, 0)
    assert sum(is_rth_power(a, 3)[1] for a in F) == 64


@pytest.mark.parametrize("p,n,r", [(2, 12, 5), (2, 12, 13), (3, 6, 7), (2, 6, 9)])
def test_rth_powers_partition(p, n, r):
    F = get_field(p, n)
    residues = sum(1 for a in range(1, F.order) if is_rth_power(F.element(a), r)[0])
    assert residues == (F.order - 1) // r


def test_partitions_cover_field():
    F = get_field(2, 3)
    assert [a.code for a in enumerate_partition(F, 0, 1)] == list(range(8))
    chunks = [set(partition_range(4096, i, 4)) for i in range(4)]
    assert sum(map(len, chunks)) == 4096
    assert set().union(*chunks) == set(range(4096))
    with pytest.raises(UsageError):
        partition_range(8, 4, 4)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5000), st.integers(1, 17))
def test_partition_is_disjoint_cover(order, count):
    seen = []
    for i in range(count):
        seen.extend(partition_range(order, i, count))
    assert seen == list(range(order))
