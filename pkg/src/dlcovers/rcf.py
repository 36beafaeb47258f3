"""Cyclic-cover enlargement checks.

A maximal cyclic cover t^m = x^q - x of X over F_{q^d} could only be enlarged
by a cover of degree m*k with k dividing (q^{d/2}+1)/m.  Genus growth bounds
k by (q^{d/2}-3)/(q-2), which removes most primes outright; the rest are
refuted by counting points on t^{m l} = x^q - x and finding it non-maximal.

The Kummer-line helpers count u^r = x^q - x over F_{q^d} two ways: by the
generic enumeration engine and through the identity

    N = q + 1 + r q #(F_{q^d}^{x r} cap ker Tr_{F_{q^d}/F_q})

(x -> x^q - x maps onto the trace kernel with fibres of size q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint

from . import curves
from .count import CountReport, count_points, enumerate_counts
from .curves import CurveSpec
from .errors import ConsistencyError, GuardRailError, PreconditionError, UnsupportedError
from .ff.field import TABLE_LIMIT, FieldDescriptor, get_field

REMARK_BOUNDS = {
    "suzuki": lambda q: q + 2,
    "ree": lambda q: q**2 + 2 * q + 4,
}


def _half_power(spec: CurveSpec) -> int:
    return curves.sqrt_q_power(spec.q, spec.d)


@dataclass
class RcfCandidates:
    family: str
    q: int
    m: int
    quotient: int
    primes: list[int]
    bound: int
    remark_bound: int | None
    pruned: list[int]
    surviving: list[int]

    def payload(self) -> dict:
        return {
            "m": self.m, "quotient": self.quotient, "primes": self.primes, "bound": self.bound,
            "remark_bound": self.remark_bound, "pruned": self.pruned, "surviving": self.surviving,
        }


def rcf_candidates(spec: CurveSpec) -> RcfCandidates:
    """Prime enlargement degrees l | (q^{d/2}+1)/m, pruned by the genus bound."""
    if spec.family not in curves.BASE_FAMILIES:
        raise PreconditionError("candidate exponents are defined for the base families")
    q, m = spec.q, spec.m
    half = _half_power(spec)
    if (half + 1) % m:
        raise ConsistencyError(f"m={m} does not divide q^(d/2)+1={half + 1}")
    quotient = (half + 1) // m
    primes = sorted(factorint(quotient))
    bound = (half - 3) // (q - 2)
    remark = REMARK_BOUNDS[spec.family](q) if spec.family in REMARK_BOUNDS else None
    if remark is not None and remark != bound:
        raise ConsistencyError(f"specialized bound {remark} differs from floor((q^(d/2)-3)/(q-2))={bound}")
    pruned = [l for l in primes if l > bound]
    surviving = [l for l in primes if l <= bound]
    return RcfCandidates(spec.family, q, m, quotient, primes, bound, remark, pruned, surviving)


@dataclass
class RcfVerdict:
    candidates: RcfCandidates
    reports: dict[int, CountReport] = field(default_factory=dict)
    verdict: str = "equal"
    witness: int | None = None

    def payload(self) -> dict:
        out = self.candidates.payload()
        out["covers"] = {str(l): {"exponent": r.spec.exponent, **r.payload()}
                         for l, r in sorted(self.reports.items())}
        out["verdict"] = self.verdict
        out["witness"] = self.witness
        return out


def rcf_check(spec: CurveSpec, workers: int | None = None, force: bool = False,
              progress: bool = False) -> RcfVerdict:
    """Refute every admissible enlargement of the exponent-m cover.

    Verdict "equal" when each surviving prime gives a non-maximal cover (or
    none survive), "unequal" when some t^{m l} = x^q - x is itself maximal.
    """
    cand = rcf_candidates(spec)
    out = RcfVerdict(cand)
    if not cand.surviving:
        return out
    exps = [cand.m] + [cand.m * l for l in cand.surviving]
    # one pass serves every exponent; count_points below reads the cache
    enumerate_counts(spec.family, spec.q, spec.d, exps, workers=workers, force=force, progress=progress)
    for l in cand.surviving:
        cover = curves.make_spec(spec.family, spec.q, cand.m * l)
        rep = count_points(cover, spec.d, workers=workers, force=force)
        out.reports[l] = rep
        if rep.maximal and out.witness is None:
            out.verdict, out.witness = "unequal", l
    return out


# -- Kummer lines ---------------------------------------------------------------

def _table_field(q: int, d: int) -> FieldDescriptor:
    p, a = curves.prime_power(q)
    if q**d > TABLE_LIMIT:
        raise GuardRailError(f"q^d = {q**d} exceeds the table-field limit {TABLE_LIMIT}")
    return get_field(p, a * d)


def _trace_values(fld: FieldDescriptor, q: int, d: int) -> np.ndarray:
    xs = np.arange(fld.order, dtype=np.int64)
    acc = np.zeros_like(xs)
    cur = xs
    for _ in range(d):
        acc = fld.vadd(acc, cur)
        cur = fld.vpow(cur, q)
    return acc


def _power_kernel_mask(fld: FieldDescriptor, q: int, d: int, r: int) -> np.ndarray:
    """Mask over codes: nonzero r-th powers with zero trace to F_q."""
    g = math.gcd(r, fld.order - 1)
    logs = fld.log
    codes = np.arange(fld.order)
    nonzero = codes != 0
    is_power = np.zeros(fld.order, dtype=bool)
    is_power[nonzero] = logs[codes[nonzero]] % g == 0
    return is_power & (_trace_values(fld, q, d) == 0)


def trace_kernel_power_count(q: int, d: int, r: int) -> int:
    """#(F_{q^d}^{x r} cap ker Tr_{F_{q^d}/F_q}), zero excluded."""
    if (q**d - 1) % r:
        raise PreconditionError(f"r={r} must divide q^d - 1 = {q**d - 1}")
    fld = _table_field(q, d)
    return int(_power_kernel_mask(fld, q, d, r).sum())


@dataclass
class KummerRow:
    r: int
    genus: int
    direct: int
    closed_form: int
    bound: int
    maximal: bool

    def payload(self) -> dict:
        return {"r": self.r, "genus": self.genus, "N": self.direct, "closed_form": self.closed_form,
                "hasse_weil_bound": self.bound, "maximal": self.maximal}


def kummer_scan(q: int, d: int, m: int, workers: int | None = None) -> list[KummerRow]:
    """Maximality of u^r = x^q - x over F_{q^d} for multiples r of m dividing q^{d/2}+1."""
    half = curves.sqrt_q_power(q, d)
    rs = [r for r in range(m, half + 2, m) if (half + 1) % r == 0]
    if not rs:
        raise PreconditionError(f"no multiple of m={m} divides q^(d/2)+1={half + 1}")
    enumerate_counts(None, q, d, rs, workers=workers)
    rows = []
    for r in rs:
        spec = curves.make_spec("kummer-line", q, r, degree=d)
        rep = count_points(spec, d, workers=workers)
        closed = q + 1 + r * q * trace_kernel_power_count(q, d, r)
        if closed != rep.total:
            raise ConsistencyError(f"r={r}: direct count {rep.total} != closed form {closed}")
        rows.append(KummerRow(r, rep.genus, rep.total, closed, rep.hasse_weil_bound, bool(rep.maximal)))
    return rows


# -- trace-zero roots in F_{q^3} for the Hermitian case -----------------------

def _poly_mul(fld: FieldDescriptor, f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = fld.add(out[i + j], fld.mul(a, b))
    return out


@dataclass
class TraceZeroReport:
    q: int
    q0: int
    m: int
    roots: int
    roots_match_power_kernel: bool
    factorization_holds: bool
    factor_count: int
    coset_counts: list[int]
    cosets_match_factors: bool

    def payload(self) -> dict:
        return dict(self.__dict__)

    @property
    def ok(self) -> bool:
        return (self.roots_match_power_kernel and self.factorization_holds
                and self.cosets_match_factors and len(set(self.coset_counts)) == 1)


def hermitian_tracezero_analysis(q: int) -> TraceZeroReport:
    """Roots of T^{(q-1)(q0+1)} + T^{(q-1)q0} + 1 in F_{q^3} against the m-th powers of trace 0.

    Also checks the splitting into q0+1 factors T^{q-1} + zeta T^{q0-1} + 1
    (zeta^{q0+1} = 1) and that the cosets of F_{q0^3}^x inside the m-th
    powers each hold the q-1 roots of one factor.
    """
    q0 = math.isqrt(q)
    if q0 * q0 != q:
        raise PreconditionError(f"q={q} is not a square")
    if q > 49:
        raise UnsupportedError("trace-zero analysis is limited to q <= 49")
    m = q - q0 + 1
    fld = _table_field(q, 3)
    N = fld.order - 1
    codes = np.arange(1, fld.order, dtype=np.int64)
    one = fld.from_digits([1])

    # (a) root set versus m-th powers in the trace kernel
    deg_hi, deg_lo = (q - 1) * (q0 + 1), (q - 1) * q0
    vals = fld.vadd(fld.vadd(fld.vpow(codes, deg_hi), fld.vpow(codes, deg_lo)),
                    np.full(codes.shape, one, dtype=np.int64))
    roots = codes[vals == 0]
    kernel = np.nonzero(_power_kernel_mask(fld, q, 3, m))[0]
    match = set(roots.tolist()) == set(kernel.tolist())

    # (b) the product over (q0+1)-th roots of unity
    g = fld.primitive_element
    zetas = [fld.pow(g, j * N // (q0 + 1)) for j in range(q0 + 1)]
    factors = []
    for z in zetas:
        f = [0] * q
        f[0] = one
        f[q0 - 1] = fld.add(f[q0 - 1], z)
        f[q - 1] = fld.add(f[q - 1], one)
        factors.append(f)
    prod = [one]
    for f in factors:
        prod = _poly_mul(fld, prod, f)
    target = [0] * (deg_hi + 1)
    target[0] = one
    target[deg_lo] = fld.add(target[deg_lo], one)
    target[deg_hi] = fld.add(target[deg_hi], one)
    fact_ok = prod == target

    # (c) cosets beta^{-i} W, W = F_{q0^3}^x, beta = g^m generating the m-th powers
    logs = fld.log
    coset_of = {}
    for a in roots.tolist():
        L = int(logs[a])
        if L % m:
            coset_of[a] = -1
            continue
        coset_of[a] = (-(L // m)) % (q0 + 1)
    counts = [sum(1 for v in coset_of.values() if v == i) for i in range(q0 + 1)]
    factor_roots = []
    ones = np.full(codes.shape, one, dtype=np.int64)
    for z in zetas:
        zt = fld.vmul(np.full(codes.shape, z, dtype=np.int64), fld.vpow(codes, q0 - 1))
        ev = fld.vadd(fld.vadd(fld.vpow(codes, q - 1), zt), ones)
        factor_roots.append(frozenset(codes[ev == 0].tolist()))
    coset_sets = [frozenset(a for a, i in coset_of.items() if i == k) for k in range(q0 + 1)]
    cosets_match = sorted(map(sorted, coset_sets)) == sorted(map(sorted, factor_roots)) and -1 not in coset_of.values()
    return TraceZeroReport(q, q0, m, int(roots.size), match, fact_ok, len(factors), counts, cosets_match)
