from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dlcovers import curves
from dlcovers.curves import make_spec
from dlcovers.errors import PreconditionError, UnsupportedError


def _valid_qs(limit_2=2**13, limit_3=3**7):
    suz = [2 ** (2 * s + 1) for s in range(1, 7) if 2 ** (2 * s + 1) <= limit_2]
    ree = [3 ** (2 * s + 1) for s in range(1, 4) if 3 ** (2 * s + 1) <= limit_3]
    herm = [p ** (2 * a) for p in (2, 3, 5, 7) for a in range(1, 7) if p ** (2 * a) <= limit_2]
    return suz, ree, herm


def test_make_spec_examples():
    s = make_spec("suzuki", 8)
    assert (s.q0, s.m, s.d) == (2, 5, 4)
    with pytest.raises(PreconditionError, match="square"):
        make_spec("hermitian", 8)
    c = make_spec("cyclic-cover(suzuki,65)", 8)
    assert c.exponent == 65 and c.base == "suzuki"


def test_make_spec_errors_are_distinct():
    msgs = set()
    for args in [("suzuki", 4), ("suzuki", 8, 7), ("ree", 9), ("hermitian", 8), ("bogus", 8),
                 ("kummer-line", 4, 2)]:
        with pytest.raises(PreconditionError) as exc:
            make_spec(*args)
        msgs.add(str(exc.value))
    assert len(msgs) == 6


def test_aliases_build_exponent_m_covers():
    assert make_spec("suzuki-tilde", 8).exponent == 5
    assert make_spec("ree-tilde", 27).exponent == 19
    assert make_spec("gk", 4).exponent == 3
    with pytest.raises(PreconditionError):
        make_spec("suzuki-tilde", 8, 13)


@pytest.mark.parametrize("family,q,g", [("hermitian", 4, 1), ("suzuki", 8, 14), ("ree", 27, 3627)])
def test_base_genus(family, q, g):
    assert curves.genus(make_spec(family, q)) == g


def test_cover_genus_and_displayed_forms():
    st8 = make_spec("suzuki-tilde", 8)
    assert curves.genus(st8) == 196 == curves.displayed_cover_genus(st8)
    assert curves.genus_audit_flags(st8) == []
    gk = make_spec("gk", 4)
    assert curves.genus(gk) == 10
    assert curves.displayed_cover_genus(gk) == 6
    rt = make_spec("ree-tilde", 27)
    assert curves.genus(rt) == 246051
    assert curves.displayed_cover_genus(rt) == 461539
    flags = curves.genus_audit_flags(rt)
    assert len(flags) == 1 and "246051" in flags[0] and "461539" in flags[0]


def test_gk_genus_matches_known_formula():
    for q0 in (2, 3, 4, 5, 7, 8):
        q = q0 * q0
        g = curves.genus(make_spec("gk", q))
        assert 2 * g == (q0**3 + 1) * (q0**2 - 2) + 2


def test_degenerate_exponent_gives_base_genus():
    for fam, q in [("suzuki", 8), ("suzuki", 32), ("ree", 27), ("hermitian", 9)]:
        assert curves.genus(make_spec(f"cyclic-cover({fam},1)", q)) == curves.genus(make_spec(fam, q))


@pytest.mark.parametrize("spec,e,bound", [
    (("suzuki", 8), 4, 5889), (("suzuki-tilde", 8), 4, 29185), (("gk", 4), 3, 225),
])
def test_hasse_weil_expected(spec, e, bound):
    assert curves.hasse_weil_expected(make_spec(*spec), e) == bound


def test_hasse_weil_needs_integral_root():
    with pytest.raises(PreconditionError):
        curves.hasse_weil_expected(make_spec("suzuki", 8), 3)


@pytest.mark.parametrize("family,q,expected", [
    ("hermitian", 4, (9, 24, 3)), ("suzuki", 8, (65, 1456, 4)), ("ree", 27, (19684, 88363548, 6)),
])
def test_short_orbits(family, q, expected):
    o = curves.short_orbit_sizes(make_spec(family, q))
    assert (o.rational, o.tame, o.tame_degree) == expected


def test_short_orbits_reject_covers():
    with pytest.raises(UnsupportedError):
        curves.short_orbit_sizes(make_spec("suzuki-tilde", 8))


def test_ramification_examples():
    s = curves.ramification_audit(make_spec("suzuki", 8))
    assert (s.d_inf, s.residue, s.lhs, s.balanced) == (538, Fraction(4, 5), 26, True)
    r = curves.ramification_audit(make_spec("ree", 27))
    assert (r.d_inf, r.residue, r.lhs, r.balanced) == (538693, Fraction(18, 19), 7252, True)
    assert curves.ramification_audit(make_spec("suzuki", 32)).balanced
    with pytest.raises(UnsupportedError, match="unsupported"):
        curves.ramification_audit(make_spec("hermitian", 4))


def test_ramification_invariants_all_q():
    suz, ree, _ = _valid_qs()
    for fam, qs in (("suzuki", suz), ("ree", ree)):
        for q in qs:
            prof = curves.ramification_audit(make_spec(fam, q))
            assert prof.balanced
            assert prof.d_inf == prof.d_inf_closed_form
            assert list(prof.filtration) == sorted(prof.filtration, reverse=True)
            assert prof.tame_index == make_spec(fam, q).m


def test_m_divides_half_power_plus_one():
    suz, ree, herm = _valid_qs()
    for q in herm:
        s = make_spec("hermitian", q)
        assert s.m * (s.q0 + 1) == s.q0**3 + 1
    for q in suz:
        s = make_spec("suzuki", q)
        assert s.m * (q + 2 * s.q0 + 1) == q**2 + 1
    for q in ree:
        s = make_spec("ree", q)
        assert s.m * (q**2 + 3 * q * s.q0 + 2 * q + 3 * s.q0 + 1) == q**3 + 1


def test_pole_orders():
    assert curves.pole_orders(make_spec("suzuki-tilde", 8)).orders == {"x": 40, "y": 50, "z": 60, "t": 64, "w": 65}
    assert curves.pole_orders(make_spec("ree-tilde", 27)).orders == {
        "x": 13851, "w1": 18468, "w2": 18981, "w3": 19494, "w6": 19665, "t": 19683, "w8": 19684}
    with pytest.raises(UnsupportedError):
        curves.pole_orders(make_spec("suzuki", 8))


@given(st.integers(1, 6))
def test_suzuki_pole_maximum(s):
    q = 2 ** (2 * s + 1)
    table = curves.pole_orders(make_spec("suzuki-tilde", q))
    assert table.maximum == q * q + 1
    assert all(v > 0 for v in table.values())


def test_kummer_line_genus():
    assert curves.genus(make_spec("kummer-line(9)", 4)) == 12
    assert make_spec("kummer-line", 4, 9).d == 3
