import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import divisors

from dlcovers import count as C
from dlcovers import curves
from dlcovers.curves import make_spec
from dlcovers.errors import GuardRailError, PreconditionError
from dlcovers.ff import get_field


def spec(*a, **kw):
    return make_spec(*a, **kw)


# -- local solution counts ------------------------------------------------------

def test_additive_count_suzuki_kernel_and_fibres():
    F = get_field(2, 12)
    s = C.AdditiveSolver.build(F, 8, 1)
    assert C.additive_count(s, 0) == 8
    assert sum(C.additive_count(s, c) for c in range(F.order)) == F.order


def test_additive_count_hermitian_image_index():
    F = get_field(2, 6)
    s = C.AdditiveSolver.build(F, 2, 1)
    counts = [C.additive_count(s, c) for c in range(F.order)]
    assert counts.count(2) == 32
    # oracle: count y by brute force
    for c in range(0, F.order, 5):
        brute = sum(1 for y in range(F.order) if F.add(F.pow(y, 2), y) == c)
        assert brute == counts[c]


@pytest.mark.parametrize("p,n,qp,eps", [(2, 12, 8, 1), (2, 12, 4, 1), (3, 6, 27, -1), (3, 6, 3, 1),
                                         (3, 6, 9, -1), (2, 8, 4, 1)])
def test_fast_path_matches_matrix_and_histogram(p, n, qp, eps):
    F = get_field(p, n)
    xs = np.arange(F.order, dtype=np.int64)
    hist = np.bincount(F.vadd(F.vpow(xs, qp), F.vscale(xs, eps)), minlength=F.order)
    auto = C.AdditiveSolver.build(F, qp, eps)
    mat = C.AdditiveSolver.build(F, qp, eps, method="matrix")
    for c in range(F.order):
        assert auto.count(c) == mat.count(c) == hist[c]


def test_kummer_count_examples():
    F = get_field(2, 12)
    assert C.kummer_count(F.zero(), 5) == 1
    assert C.kummer_count(F.one(), 5) == 5
    assert sum(C.kummer_count(a, 5) for a in F) == F.order


# -- totals ---------------------------------------------------------------------

@pytest.mark.parametrize("family,q,e,N", [("hermitian", 4, 1, 9), ("ree", 27, 1, 19684),
                                         ("suzuki-tilde", 8, 4, 29185), ("suzuki", 8, 1, 65)])
def test_count_examples(family, q, e, N):
    assert C.total_count(spec(family, q), e) == N


REFERENCE_CASES = [
    ("hermitian", 4, None, e) for e in (1, 2, 3, 4, 6)
] + [
    ("hermitian", 9, None, e) for e in (1, 2, 3)
] + [
    ("gk", 4, None, e) for e in (1, 2, 3, 6)
] + [
    ("gk", 9, None, 3), ("suzuki", 8, None, 4), ("suzuki", 8, None, 7), ("suzuki-tilde", 8, None, 4),
    ("cyclic-cover(suzuki,65)", 8, None, 4), ("cyclic-cover(suzuki,13)", 8, None, 4),
    ("ree", 27, None, 2), ("ree", 27, None, 4), ("ree-tilde", 27, None, 3),
    ("kummer-line(9)", 4, None, 3), ("kummer-line(3)", 4, None, 3), ("kummer-line(7)", 9, None, 3),
    ("suzuki", 32, None, 4), ("suzuki-tilde", 32, None, 4),
]


@pytest.mark.parametrize("family,q,exp,e", REFERENCE_CASES)
def test_kernel_matches_reference_counter(family, q, exp, e):
    s = spec(family, q, exp)
    assert C.total_count(s, e) == C.count_points_reference(s, e)


@pytest.mark.parametrize("family,q,e", [("suzuki", 8, 4), ("suzuki-tilde", 8, 4), ("gk", 4, 3),
                                        ("cyclic-cover(suzuki,65)", 8, 4)])
def test_worker_and_chunk_invariance(family, q, e):
    s = spec(family, q)
    exps = [s.exponent] if s.exponent else []
    outs = set()
    for workers, chunks in ((1, 1), (2, 3), (8, 8), (1, 17)):
        r = C.enumerate_counts(s.base_family, q, e, exps, workers=workers, chunks=chunks, use_cache=False)
        outs.add((r.base_affine, tuple(r.cover_affine.items()), tuple(r.violating_points.items())))
    assert len(outs) == 1


def test_superset_cache_gives_same_totals():
    C.clear_cache()
    C.enumerate_counts("suzuki", 8, 4, [5, 13, 65])
    via_superset = C.total_count(spec("suzuki-tilde", 8), 4)
    C.clear_cache()
    assert via_superset == C.total_count(spec("suzuki-tilde", 8), 4) == 29185


def test_guard_rail():
    with pytest.raises(GuardRailError):
        C.count_points(spec("suzuki", 32), 7)
    with pytest.raises(GuardRailError):
        C.count_points(spec("ree", 27), 7)


# -- degrees and verdicts -----------------------------------------------------

def test_points_of_degree_examples():
    assert C.points_of_degree(spec("hermitian", 4), 3) == 24
    assert C.points_of_degree(spec("suzuki", 8), 2) == 0
    assert C.points_of_degree(spec("suzuki", 8), 4) == 1456
    assert C.points_of_degree(spec("ree", 27), 2) == 0
    assert C.points_of_degree(spec("ree", 27), 3) == 0


@pytest.mark.parametrize("family,q,r", [("suzuki", 8, 4), ("gk", 4, 6), ("hermitian", 9, 3),
                                        ("suzuki-tilde", 8, 4), ("ree", 27, 4)])
def test_moebius_reconstructs_totals(family, q, r):
    s = spec(family, q)
    assert sum(e * C.points_of_degree(s, e) for e in divisors(r)) == C.total_count(s, r)


@pytest.mark.parametrize("family,q,e", [("suzuki", 8, 4), ("gk", 4, 6), ("ree", 27, 4), ("hermitian", 9, 3)])
def test_subfield_points_inject(family, q, e):
    s = spec(family, q)
    for d in divisors(e):
        assert C.total_count(s, d) <= C.total_count(s, e)


def test_maximality_verdicts():
    assert C.maximality_verdict(spec("suzuki", 8), 4) == (True, 0)
    rep = C.count_points(spec("gk", 4), 3)
    assert (rep.maximal, rep.deficiency, rep.total) == (True, 0, 225)
    rep = C.count_points(spec("kummer-line(9)", 4), 3)
    assert (rep.maximal, rep.deficiency, rep.total, rep.hasse_weil_bound) == (False, 144, 113, 257)
    with pytest.raises(PreconditionError):
        C.maximality_verdict(spec("suzuki", 8), 3)


@given(st.sampled_from([("suzuki", 8), ("gk", 4), ("hermitian", 4), ("suzuki-tilde", 8), ("ree", 27)]),
       st.integers(1, 4))
@settings(max_examples=25, deadline=None)
def test_hasse_weil_inequality(fq, e):
    s = spec(*fq)
    n = C.total_count(s, e)
    g = curves.genus(s)
    assert (n - s.q**e - 1) ** 2 <= 4 * g * g * s.q**e


def test_split_audit():
    a = C.fiber_split_audit(spec("suzuki-tilde", 8))
    assert a.violations == 0 and a.consistent
    a = C.fiber_split_audit(spec("gk", 4))
    assert a.violations == 0 and a.consistent
    a = C.fiber_split_audit(spec("cyclic-cover(suzuki,65)", 8))
    assert a.violations > 0
    assert a.consistent and a.deficiency == 65 * a.violations
    with pytest.raises(PreconditionError):
        C.fiber_split_audit(spec("suzuki", 8))


def test_degree_counts_in_report():
    rep = C.count_points(spec("suzuki", 8), 4, degrees=True)
    assert rep.degree_counts == {1: 65, 2: 0, 4: 1456}
    # sum_{r | e} r a_r = N_e
    assert sum(r * a for r, a in rep.degree_counts.items()) == rep.total
