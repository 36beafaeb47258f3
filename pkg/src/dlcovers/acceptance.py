"""Acceptance criteria as plain functions, shared by the test suite and ``repro``.

Each item returns an ItemResult with a pass flag and the measured values.
Items 7 and 8 enumerate F_{27^6} (a few minutes on one core) and are only
run when asked for.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from sympy import divisors

from . import count as C
from . import curves, identity, rcf, semigroup
from .ff.field import get_field

HEAVY_ITEMS = (7, 8)


@dataclass
class ItemResult:
    item: int
    title: str
    passed: bool
    checks: dict[str, bool] = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    note: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        failed = [k for k, v in self.checks.items() if not v]
        tail = f" (failed: {', '.join(failed)})" if failed else ""
        return f"[{status}] item {self.item}: {self.title}{tail}"

    def payload(self, timing: bool = False) -> dict:
        out = {"item": self.item, "title": self.title, "passed": self.passed,
               "checks": self.checks, "values": self.values, "note": self.note}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _finish(item: int, title: str, checks: dict, values: dict, t0: float, note: str = "") -> ItemResult:
    return ItemResult(item, title, all(checks.values()), checks, values, note, time.perf_counter() - t0)


def item1(workers=None) -> ItemResult:
    t0 = time.perf_counter()
    H = curves.make_spec("hermitian", 4)
    r1 = C.count_points(H, 1, workers=workers)
    r3 = C.count_points(H, 3, workers=workers)
    a3 = C.points_of_degree(H, 3, workers=workers)
    checks = {
        "N1=9": r1.total == 9, "N3=81": r3.total == 81,
        "maximal over F_4": bool(r1.maximal), "maximal over F_64": bool(r3.maximal),
        "degree-3 points=24": a3 == 24,
    }
    return _finish(1, "Hermitian q=4 counts", checks, {"N1": r1.total, "N3": r3.total, "a3": a3}, t0)


def item2(workers=None) -> ItemResult:
    t0 = time.perf_counter()
    GK = curves.make_spec("gk", 4)
    g = curves.genus(GK)
    rep = C.count_points(GK, 3, workers=workers)
    audit = C.fiber_split_audit(GK, workers=workers)
    # a genus-6 curve cannot have 225 points over F_64 if it were maximal: bound 161
    six = 64 + 1 + 2 * 6 * 8
    checks = {
        "genus=10": g == 10, "N=225": rep.total == 225, "N=bound": rep.total == rep.hasse_weil_bound,
        "maximal": bool(rep.maximal), "split audit 0": audit.violations == 0,
        "genus-6 bound refuted": six == 161 and rep.total != six,
    }
    return _finish(2, "GK curve q=4", checks,
                   {"genus": g, "N": rep.total, "bound": rep.hasse_weil_bound,
                    "violations": audit.violations, "genus6_bound": six}, t0)


def item3(workers=None) -> ItemResult:
    t0 = time.perf_counter()
    S = curves.make_spec("suzuki", 8)
    St = curves.make_spec("suzuki-tilde", 8)
    n = {e: C.count_points(S, e, workers=workers).total for e in (1, 2, 4)}
    a4 = C.points_of_degree(S, 4, workers=workers)
    rep = C.count_points(St, 4, workers=workers)
    audit = C.fiber_split_audit(St, workers=workers)
    ram = curves.ramification_audit(S)
    sg = semigroup.semigroup_invariants({40, 50, 60, 64, 65})
    table = sorted(curves.pole_orders(St).values())
    chain = identity.verify_suzuki_chain(8)
    checks = {
        "N1=65": n[1] == 65, "N2=65": n[2] == 65, "N4=5889": n[4] == 5889,
        "degree-4 points=1456": a4 == 1456,
        "genus(S~)=196": curves.genus(St) == 196, "N(S~)=29185": rep.total == 29185,
        "S~ maximal": bool(rep.maximal), "split audit 0": audit.violations == 0,
        "d(p_inf)=538": ram.d_inf == 538, "residue 4/5": str(ram.residue) == "4/5",
        "ramification balances": ram.balanced,
        "pole table {40,50,60,64,65}": table == [40, 50, 60, 64, 65],
        "semigroup genus 196": sg[0] == 196,
        "identity chain": all(r.passed for r in chain),
    }
    return _finish(3, "Suzuki q=8 and its cover", checks,
                   {"N": n, "a4": a4, "N_cover": rep.total, "d_inf": ram.d_inf,
                    "semigroup": sg, "chain": [r.payload() for r in chain]}, t0)


def item4(workers=None) -> ItemResult:
    t0 = time.perf_counter()
    S = curves.make_spec("suzuki", 8)
    cand = rcf.rcf_candidates(S)
    verdict = rcf.rcf_check(S, workers=workers)
    rows = {r.r: r for r in rcf.kummer_scan(8, 4, 5, workers=workers)}
    checks = {
        "bound 10": cand.bound == 10, "13 pruned": cand.pruned == [13],
        "verdict equal": verdict.verdict == "equal", "no counting": not verdict.reports,
        "C_65 maximal over F_{8^4}": 65 in rows and rows[65].maximal,
    }
    return _finish(4, "Suzuki q=8 enlargement check", checks,
                   {"candidates": cand.payload(), "scan": [r.payload() for r in rows.values()]}, t0)


def item5(workers=None) -> ItemResult:
    t0 = time.perf_counter()
    s4 = {r.r: r for r in rcf.kummer_scan(4, 3, 3, workers=workers)}
    s9 = {r.r: r for r in rcf.kummer_scan(9, 3, 7, workers=workers)}
    tz4 = rcf.hermitian_tracezero_analysis(4)
    tz9 = rcf.hermitian_tracezero_analysis(9)
    checks = {
        "q=4 C_3 maximal N=113": s4[3].maximal and s4[3].direct == 113,
        "q=4 C_9 not maximal N=113<257": (not s4[9].maximal) and s4[9].direct == 113 and s4[9].bound == 257,
        "q=4 kernel counts 9, 3": (rcf.trace_kernel_power_count(4, 3, 3), rcf.trace_kernel_power_count(4, 3, 9)) == (9, 3),
        "q=4 cosets 3x3": tz4.coset_counts == [3, 3, 3] and tz4.cosets_match_factors,
        "q=4 factorization": tz4.factorization_holds and tz4.roots_match_power_kernel,
        "q=9 kernel count 32": rcf.trace_kernel_power_count(9, 3, 7) == 32,
        "q=9 C_7 maximal": s9[7].maximal,
        "q=9 C_14, C_28 not maximal": not s9[14].maximal and not s9[28].maximal,
        "q=9 cosets 4x8": tz9.coset_counts == [8, 8, 8, 8] and tz9.cosets_match_factors,
    }
    return _finish(5, "Hermitian Kummer-line analysis", checks,
                   {"q4": [r.payload() for r in s4.values()], "q9": [r.payload() for r in s9.values()],
                    "tracezero4": tz4.payload(), "tracezero9": tz9.payload()}, t0)


def item6(workers=None) -> ItemResult:
    t0 = time.perf_counter()
    R = curves.make_spec("ree", 27)
    n = {e: C.count_points(R, e, workers=workers).total for e in (1, 2, 3)}
    ram = curves.ramification_audit(R)
    chain = identity.verify_ree_chain(27)
    checks = {
        "N1=19684": n[1] == 19684, "N2=19684": n[2] == 19684, "N3=19684": n[3] == 19684,
        "d(p_inf)=538693": ram.d_inf == 538693, "residue 18/19": str(ram.residue) == "18/19",
        "2g-2=7252": ram.lhs == 7252, "ramification balances": ram.balanced,
    }
    for r in chain:
        checks[f"identity {r.name}"] = r.passed
    note = ""
    if not all(r.passed for r in chain):
        alt = identity.verify_ree_chain(27, w8_form="quadric")
        note = ("printed w8 = w6^{3q0} + x w7^{3q0} does not satisfy its stated relations; "
                f"with w8 = w2^2 - w1 w3 - x w6 all identities pass: {all(r.passed for r in alt)}")
    return _finish(6, "Ree q=27 counts, ramification and identity chain", checks,
                   {"N": n, "d_inf": ram.d_inf, "chain": [r.payload() for r in chain]}, t0, note)


REE_EXPONENTS = [19, 38, 133, 703]


def _ree_pass(workers=None, progress=False):
    return C.enumerate_counts("ree", 27, 6, REE_EXPONENTS, workers=workers, progress=progress)


def item7(workers=None, progress=False) -> ItemResult:
    t0 = time.perf_counter()
    _ree_pass(workers, progress)
    Rt = curves.make_spec("ree-tilde", 27)
    rep = C.count_points(Rt, 6, workers=workers)
    a6 = C.points_of_degree(curves.make_spec("ree", 27), 6, workers=workers)
    expected = 27**6 + 1 + 2 * 246051 * 27**3
    checks = {
        "genus 246051": curves.genus(Rt) == 246051,
        "N=10073464156": rep.total == expected == 10_073_464_156,
        "maximal": bool(rep.maximal), "degree-6 points 88363548": a6 == 88_363_548,
    }
    return _finish(7, "Ree cover over F_{27^6}", checks, {"N": rep.total, "a6": a6}, t0)


def item8(workers=None, progress=False) -> ItemResult:
    t0 = time.perf_counter()
    _ree_pass(workers, progress)
    v = rcf.rcf_check(curves.make_spec("ree", 27), workers=workers)
    checks = {"surviving primes 2,7,37": v.candidates.surviving == [2, 7, 37],
              "all non-maximal": all(not r.maximal for r in v.reports.values()),
              "verdict equal": v.verdict == "equal"}
    return _finish(8, "Ree q=27 enlargement check", checks, v.payload(), t0)


# -- item 9: compact always-on property checks --------------------------------

def _field_axioms(p: int, n: int) -> bool:
    F = get_field(p, n)
    xs = np.arange(F.order, dtype=np.int64)
    rng = np.random.default_rng(0)
    a, b, c = (rng.integers(0, F.order, 4096) for _ in range(3))
    one = F.from_digits([1])
    ok = np.array_equal(F.vmul(a, F.vadd(b, c)), F.vadd(F.vmul(a, b), F.vmul(a, c)))
    ok &= np.array_equal(F.vmul(F.vmul(a, b), c), F.vmul(a, F.vmul(b, c)))
    ok &= np.array_equal(F.vmul(xs, np.full_like(xs, one)), xs)
    ok &= np.array_equal(F.vadd(xs, F.vneg(xs)), np.zeros_like(xs))
    ok &= np.array_equal(F.vpow(xs, F.order), xs)
    # Frobenius is additive and the absolute trace lands in F_p
    fa = F.vpow(F.vadd(a, b), p)
    ok &= np.array_equal(fa, F.vadd(F.vpow(a, p), F.vpow(b, p)))
    tr = np.zeros_like(xs)
    cur = xs
    for _ in range(n):
        tr = F.vadd(tr, cur)
        cur = F.vpow(cur, p)
    ok &= bool(np.all(tr < p))
    return bool(ok)


def _additive_paths_agree(p: int, n: int, qprime: int) -> bool:
    F = get_field(p, n)
    xs = np.arange(F.order, dtype=np.int64)
    ok = True
    for eps in (-1, 1):
        lhs = F.vadd(F.vpow(xs, qprime), F.vscale(xs, eps))
        hist = np.bincount(lhs, minlength=F.order)
        s = C.AdditiveSolver.build(F, qprime, eps)
        digits = F.digit_matrix(xs)
        if s.functionals.shape[0]:
            inside = ~np.any((digits @ s.functionals.T) % p, axis=1)
        else:
            inside = np.ones(F.order, dtype=bool)
        ok &= np.array_equal(np.where(inside, s.kernel_size, 0), hist)
        if (eps + 1) % p == 0:
            m = C.AdditiveSolver.build(F, qprime, eps, method="matrix")
            ok &= m.kernel_size == s.kernel_size
    return bool(ok)


def item9(workers=None) -> ItemResult:
    t0 = time.perf_counter()
    checks = {}
    checks["field axioms"] = all(_field_axioms(p, n) for p, n in ((2, 12), (3, 7), (2, 9), (3, 6)))
    checks["additive fast path = matrix oracle"] = all(
        _additive_paths_agree(p, n, qp) for p, n, qp in ((2, 12, 8), (2, 12, 4), (3, 6, 27), (3, 6, 3)))
    mob = True
    for spec, r in ((curves.make_spec("suzuki", 8), 4), (curves.make_spec("hermitian", 4), 3),
                    (curves.make_spec("ree", 27), 3)):
        total = sum(e * C.points_of_degree(spec, e, workers=workers) for e in divisors(r))
        mob &= total == C.total_count(spec, r, workers=workers)
    checks["Moebius consistency"] = bool(mob)
    try:
        rcf.kummer_scan(4, 3, 3, workers=workers)
        rcf.kummer_scan(9, 3, 7, workers=workers)
        checks["Kummer counting identity q=4,9"] = True
    except Exception:
        checks["Kummer counting identity q=4,9"] = False
    outs = []
    for w in (1, 2, 8):
        res = C.enumerate_counts("suzuki", 8, 4, [5], workers=w, use_cache=False)
        outs.append((res.base_affine, res.cover_affine, res.violating_points))
    checks["worker invariance"] = all(o == outs[0] for o in outs)
    return _finish(9, "property checks", checks, {}, t0)


ITEMS: dict[int, Callable[..., ItemResult]] = {
    1: item1, 2: item2, 3: item3, 4: item4, 5: item5, 6: item6, 7: item7, 8: item8, 9: item9,
}


def run_items(items=None, extended: bool = False, workers=None, progress: bool = False) -> list[ItemResult]:
    chosen = items or [i for i in ITEMS if extended or i not in HEAVY_ITEMS]
    out = []
    for i in chosen:
        fn = ITEMS[i]
        out.append(fn(workers=workers, progress=progress) if i in HEAVY_ITEMS else fn(workers=workers))
    return out
