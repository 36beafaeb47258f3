"""Curve catalogue: parameters, genus, orbit sizes, ramification, pole orders.

Families
--------
``hermitian``  y^{q0} + y = x^{q0+1},                      q = q0^2,       d = 3
``suzuki``     y^q + y = x^{q0}(x^q + x),                   q = 2 q0^2,     d = 4
``ree``        y^q - y = x^{q0}(x^q - x),
               z^q - z = x^{2q0}(x^q - x),                 q = 3 q0^2,     d = 6
``cyclic-cover(base, e)``  the base system plus t^e = x^q - x
``kummer-line(r)``         u^r = x^q - x over F_q (ambient degree d given)

The cover with e = m (m = q - q0 + 1, q - 2q0 + 1, q - 3q0 + 1) is the GK
curve, S-tilde and R-tilde respectively.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint

from .errors import PreconditionError, UnsupportedError

BASE_FAMILIES = ("hermitian", "suzuki", "ree")
MAX_DEGREE = {"hermitian": 3, "suzuki": 4, "ree": 6}
ALIASES = {"gk": "hermitian", "hermitian-tilde": "hermitian", "suzuki-tilde": "suzuki", "ree-tilde": "ree"}


def prime_power(q: int) -> tuple[int, int]:
    """(p, a) with q = p^a, or PreconditionError."""
    f = factorint(q) if q > 1 else {}
    if len(f) != 1:
        raise PreconditionError(f"q={q} is not a prime power")
    (p, a), = f.items()
    return p, a


@dataclass(frozen=True)
class CurveSpec:
    family: str            # hermitian | suzuki | ree | cyclic-cover | kummer-line
    q: int
    p: int
    q0: int | None
    m: int | None          # degree of the maximal cyclic cover of the base
    d: int                 # maximality degree
    base: str | None = None
    exponent: int | None = None   # cover exponent e, or r for kummer-line

    @property
    def base_family(self) -> str | None:
        if self.family in BASE_FAMILIES:
            return self.family
        return self.base

    @property
    def is_cover(self) -> bool:
        return self.family == "cyclic-cover"

    @property
    def label(self) -> str:
        if self.family == "cyclic-cover":
            return f"cyclic-cover({self.base},{self.exponent})"
        if self.family == "kummer-line":
            return f"kummer-line({self.exponent})"
        return self.family

    def echo(self) -> dict:
        return {
            "family": self.label,
            "q": self.q,
            "p": self.p,
            "q0": self.q0,
            "m": self.m,
            "d": self.d,
            "exponent": self.exponent,
        }


def _base_constants(family: str, q: int) -> tuple[int, int, int, int]:
    p, a = prime_power(q)
    if family == "hermitian":
        if a % 2:
            raise PreconditionError(f"hermitian needs a square q, got {q}")
        q0 = p ** (a // 2)
        return p, q0, q - q0 + 1, 3
    if family == "suzuki":
        if p != 2 or a % 2 == 0 or a < 3:
            raise PreconditionError(f"suzuki needs q = 2^(2s+1) with s >= 1, got {q}")
        q0 = 2 ** ((a - 1) // 2)
        return p, q0, q - 2 * q0 + 1, 4
    if family == "ree":
        if p != 3 or a % 2 == 0 or a < 3:
            raise PreconditionError(f"ree needs q = 3^(2s+1) with s >= 1, got {q}")
        q0 = 3 ** ((a - 1) // 2)
        return p, q0, q - 3 * q0 + 1, 6
    raise PreconditionError(f"unknown family {family!r}")


def default_degree(q: int) -> int:
    p, a = prime_power(q)
    if a % 2 == 0:
        return 3
    if p == 2 and a >= 3:
        return 4
    if p == 3 and a >= 3:
        return 6
    raise PreconditionError(f"no default ambient degree for q={q}; pass one explicitly")


_COVER_RE = re.compile(r"^cyclic-cover\((\w+),\s*(\d+)\)$")
_KUMMER_RE = re.compile(r"^kummer-line\((\d+)\)$")


def make_spec(family: str, q: int, exponent: int | None = None, *, base: str | None = None,
              degree: int | None = None) -> CurveSpec:
    """Validated curve specification.

    ``family`` is a base family, an alias (``gk``, ``suzuki-tilde``,
    ``ree-tilde``), ``cyclic-cover`` (with ``base``), ``kummer-line``, or the
    literal forms ``cyclic-cover(suzuki,65)`` / ``kummer-line(9)``.  Passing
    ``exponent`` together with a base family builds the cyclic cover.
    """
    fam = family.strip().lower()
    if (mt := _COVER_RE.match(fam)):
        fam, base, exponent = "cyclic-cover", mt.group(1), int(mt.group(2))
    elif (mk := _KUMMER_RE.match(fam)):
        fam, exponent = "kummer-line", int(mk.group(1))

    if fam in ALIASES:
        b = ALIASES[fam]
        _, _, m, _ = _base_constants(b, q)
        if exponent is not None and exponent != m:
            raise PreconditionError(f"{fam} fixes the exponent to m={m}")
        fam, base, exponent = "cyclic-cover", b, m
    elif fam in BASE_FAMILIES and exponent is not None:
        fam, base = "cyclic-cover", fam

    if fam in BASE_FAMILIES:
        p, q0, m, d = _base_constants(fam, q)
        return CurveSpec(fam, q, p, q0, m, d)

    if fam == "cyclic-cover":
        if base not in BASE_FAMILIES:
            raise PreconditionError(f"cyclic-cover needs a base family, got {base!r}")
        p, q0, m, d = _base_constants(base, q)
        if exponent is None or exponent < 1:
            raise PreconditionError("cyclic-cover needs a positive exponent")
        target = q ** (d // 2) + 1 if d % 2 == 0 else q0 ** 3 + 1
        if target % exponent:
            raise PreconditionError(
                f"cover exponent {exponent} does not divide q^(d/2)+1 = {target}")
        return CurveSpec("cyclic-cover", q, p, q0, m, d, base=base, exponent=exponent)

    if fam == "kummer-line":
        p, _ = prime_power(q)
        if exponent is None or exponent < 1:
            raise PreconditionError("kummer-line needs a positive exponent r")
        if exponent % p == 0:
            raise PreconditionError(f"kummer-line exponent {exponent} must be prime to p={p}")
        d = degree if degree is not None else default_degree(q)
        return CurveSpec("kummer-line", q, p, None, None, d, exponent=exponent)

    raise PreconditionError(f"unknown family {family!r}")


def sqrt_q_power(q: int, e: int) -> int:
    """q^(e/2) as an integer, or PreconditionError if it is irrational."""
    r = math.isqrt(q**e)
    if r * r != q**e:
        raise PreconditionError(f"q^(e/2) is not an integer for q={q}, e={e}")
    return r


def rational_points(spec: CurveSpec) -> int:
    """#X(F_q) of the base curve, q^(d/2) + 1."""
    return sqrt_q_power(spec.q, spec.d) + 1


def base_genus(family: str, q: int) -> int:
    _, q0, _, _ = _base_constants(family, q)
    if family == "hermitian":
        return q0 * (q0 - 1) // 2
    if family == "suzuki":
        return q0 * (q - 1)
    return 3 * q0 * (q - 1) * (q + q0 + 1) // 2


def genus(spec: CurveSpec) -> int:
    """Genus; covers use Riemann-Hurwitz with tame total ramification at X(F_q)."""
    if spec.family in BASE_FAMILIES:
        return base_genus(spec.family, spec.q)
    if spec.family == "kummer-line":
        r = spec.exponent
        return (r - 1) * (spec.q - 1) // 2
    e = spec.exponent
    gx = base_genus(spec.base, spec.q)
    n1 = rational_points(spec)
    twice = 2 + 2 * e * (gx - 1) + n1 * (e - 1)
    assert twice % 2 == 0
    return twice // 2


def displayed_cover_genus(spec: CurveSpec) -> int | None:
    """The commonly displayed closed-form genus of each exponent-m cover."""
    if not spec.is_cover or spec.exponent != spec.m:
        return None
    q, q0 = spec.q, spec.q0
    if spec.base == "hermitian":
        return q * (q - q0 - 1) * (q0 + 1) // 2
    if spec.base == "suzuki":
        return (q**3 - 2 * q**2 + q) // 2
    return (q**4 + 6 * q**3 * q0 + 2 * q**3 - 2 * q**2 - 6 * q * q0 - 3 * q + 2) // 2


def genus_audit_flags(spec: CurveSpec) -> list[str]:
    shown = displayed_cover_genus(spec)
    if shown is None:
        return []
    g = genus(spec)
    if shown == g:
        return []
    return [
        f"genus-discrepancy: displayed closed form for the {spec.base} cover gives {shown}, "
        f"Riemann-Hurwitz gives {g}; using {g}"
    ]


def hasse_weil_expected(spec: CurveSpec, e: int) -> int:
    """Hasse-Weil upper bound q^e + 1 + 2 g q^(e/2)."""
    return spec.q**e + 1 + 2 * genus(spec) * sqrt_q_power(spec.q, e)


@dataclass(frozen=True)
class OrbitSizes:
    rational: int
    tame: int
    tame_degree: int


def short_orbit_sizes(spec: CurveSpec) -> OrbitSizes:
    if spec.family not in BASE_FAMILIES:
        raise UnsupportedError("short orbits are stated for the base curves only")
    q, q0 = spec.q, spec.q0
    if spec.family == "hermitian":
        q32 = q0**3
        return OrbitSizes(q32 + 1, q32 * (q - 1) * (q0 + 1) // 3, 3)
    if spec.family == "suzuki":
        return OrbitSizes(q**2 + 1, q**2 * (q - 1) * (q + 2 * q0 + 1) // 4, 4)
    return OrbitSizes(q**3 + 1, q**3 * (q - 1) * (q + 1) * (q + 3 * q0 + 1) // 6, 6)


@dataclass(frozen=True)
class RamificationProfile:
    family: str
    q: int
    group_order: int
    filtration: tuple[int, ...]     # #G_0, #G_1, ..., ending with 1
    e_inf: int
    d_inf: int
    d_inf_closed_form: int
    tame_index: int
    residue: Fraction
    lhs: int                        # 2g - 2
    rhs: Fraction                   # #G (-2 + d/e + residue)

    @property
    def balanced(self) -> bool:
        return self.rhs == self.lhs

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "q": self.q,
            "group_order": self.group_order,
            "filtration_runs": _runs(self.filtration),
            "e_inf": self.e_inf,
            "d_inf": self.d_inf,
            "d_inf_closed_form": self.d_inf_closed_form,
            "tame_index": self.tame_index,
            "residue": f"{self.residue.numerator}/{self.residue.denominator}",
            "two_g_minus_two": self.lhs,
            "hurwitz_rhs": str(self.rhs),
            "balanced": self.balanced,
        }


def _runs(seq) -> list[list[int]]:
    """Run-length form [[value, count], ...] of a filtration."""
    out: list[list[int]] = []
    for v in seq:
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return out


def ramification_audit(spec: CurveSpec) -> RamificationProfile:
    """Hurwitz balance for X -> X/Aut(X) from the higher ramification groups."""
    q, q0 = spec.q, spec.q0
    if spec.family == "suzuki":
        group = (q**2 + 1) * q**2 * (q - 1)
        filt = [q**2 * (q - 1), q**2] + [q] * (2 * q0) + [1]
        closed = q**3 + 2 * q * q0 - 2 * q0 - 2
        tame = q - 2 * q0 + 1
    elif spec.family == "ree":
        group = (q**3 + 1) * q**3 * (q - 1)
        filt = [q**3 * (q - 1), q**3] + [q**2] * (3 * q0) + [q] * q + [1]
        closed = q**4 + 3 * q**2 * q0 + q**2 - q - 3 * q0 - 2
        tame = q - 3 * q0 + 1
    elif spec.family == "hermitian":
        raise UnsupportedError("unsupported: no ramification filtration is tabulated for the Hermitian curve")
    else:
        raise UnsupportedError("ramification audit applies to the suzuki and ree curves")
    d_inf = sum(g - 1 for g in filt)
    e_inf = filt[0]
    residue = Fraction(tame - 1, tame)
    rhs = group * (Fraction(-2) + Fraction(d_inf, e_inf) + residue)
    return RamificationProfile(
        family=spec.family, q=q, group_order=group, filtration=tuple(filt), e_inf=e_inf,
        d_inf=d_inf, d_inf_closed_form=closed, tame_index=tame, residue=residue,
        lhs=2 * genus(spec) - 2, rhs=rhs,
    )


@dataclass(frozen=True)
class PoleOrderTable:
    orders: dict[str, int] = field(default_factory=dict)

    def __getitem__(self, key: str) -> int:
        return self.orders[key]

    def values(self) -> list[int]:
        return list(self.orders.values())

    @property
    def maximum(self) -> int:
        return max(self.orders.values())


def pole_orders(spec: CurveSpec) -> PoleOrderTable:
    """Pole orders at the unique point over x = infinity of the exponent-m cover."""
    if not spec.is_cover or spec.exponent != spec.m:
        raise UnsupportedError("pole orders are tabulated for the exponent-m covers only")
    q, q0, m = spec.q, spec.q0, spec.m
    if spec.base == "suzuki":
        return PoleOrderTable({
            "x": q * m,
            "y": q**2 - q * q0 + q0,
            "z": q**2 - q + 2 * q0,
            "t": q**2,
            "w": q**2 + 1,
        })
    if spec.base == "ree":
        return PoleOrderTable({
            "x": q**2 * m,
            "w1": q**3 - 2 * q**2 + 3 * q * q0,
            "w2": q**3 - q**2 + q,
            "w3": q**3 - 3 * q * q0 + 2 * q,
            "w6": q**3 - q + 3 * q0,
            "t": q**3,
            "w8": q**3 + 1,
        })
    # GK curve: x, y have poles q0, q0+1 on H, each multiplied by m; t^m = x^q - x
    return PoleOrderTable({"x": q0 * m, "t": q0**3, "y": (q0 + 1) * m})
