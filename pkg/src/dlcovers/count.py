"""Point counting over F_{q^e} by enumerating x.

Every family is a tower of equations whose right-hand sides depend on x
alone, so the affine count is

    sum over x of  prod_j #{y_j : y_j^{q'} + eps y_j = rhs_j(x)}  *  #{t : t^r = x^q - x}.

Artin-Schreier factors are |ker L| or 0 depending on an F_p-linear membership
test; the Kummer factor is gcd(r, |F|-1), 0, or 1 (when x^q - x = 0).

One place lies over x = infinity for every family here: the Artin-Schreier
steps are totally ramified there with p-power index and the Kummer step has
index prime to p but is also totally ramified (x^q - x has a pole of order q,
prime to the cover exponent), so the place is unique and rational.
"""

from __future__ import annotations

import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from sympy import divisors, mobius

from . import curves
from ._kernel import MODE_NORM_LOG, MODE_POWER, MODE_SUBFIELD, count_range
from .curves import CurveSpec
from .errors import ConsistencyError, GuardRailError, PreconditionError, UsageError
from .ff.field import FieldDescriptor, FieldElement, get_field, is_rth_power, partition_range
from .ff.linalg import nullspace, rank, row_basis
from .ff.tower import TowerField, get_tower

GUARD_RAIL = 2**33
CHUNK_TARGET = 1 << 22


def default_workers() -> int:
    env = os.environ.get("DLCOVERS_WORKERS")
    if env:
        return max(1, int(env))
    return 1


# -- linear structure shared by flat and tower fields ------------------------

def _frob(fld, a: int, s: int) -> int:
    if isinstance(fld, TowerField):
        return fld.frob(a, s)
    return fld.frobenius(a, fld.p, s) if s % fld.n else a


def _coords(fld, a: int) -> list[int]:
    return fld.coords(a) if isinstance(fld, TowerField) else fld.digits(a)


def _from_coords(fld, v) -> int:
    return fld.from_coords(v) if isinstance(fld, TowerField) else fld.from_digits(v)


def _scale(fld, a: int, c: int) -> int:
    return _from_coords(fld, [(c * d) % fld.p for d in _coords(fld, a)])


def _map_matrix(fld, fn) -> np.ndarray:
    cols = []
    for i in range(fld.n):
        e = [0] * fld.n
        e[i] = 1
        cols.append(_coords(fld, fn(_from_coords(fld, e))))
    return np.array(cols, dtype=np.int64).T


@dataclass
class AdditiveSolver:
    """Counts solutions of y^{q'} + eps*y = c over a field.

    ``functionals`` are rows h with h . coords(c) = 0 exactly on im L.  On the
    trace path they span the rows of Tr_{F/F_q'}; otherwise they span the
    left kernel of the matrix of L.
    """

    field: object
    qprime: int
    eps: int
    method: str
    functionals: np.ndarray
    kernel_size: int

    @classmethod
    def build(cls, fld, qprime: int, eps: int, method: str = "auto") -> "AdditiveSolver":
        p, n = fld.p, fld.n
        s = round(math.log(qprime, p))
        if p**s != qprime or s < 1:
            raise PreconditionError(f"{qprime} is not a power of {p}")
        eps %= p
        trace_ok = (eps + 1) % p == 0 and n % s == 0
        if method == "auto":
            method = "trace" if trace_ok else "matrix"
        if method == "trace":
            if not trace_ok:
                raise UsageError("trace criterion needs L = Frob - id and a subfield of order q'")

            def tr(a):
                acc = 0
                for j in range(n // s):
                    acc = _add(fld, acc, _frob(fld, a, s * j))
                return acc

            rows = row_basis(_map_matrix(fld, tr), p)
            return cls(fld, qprime, eps, "trace", rows, qprime)
        if method != "matrix":
            raise UsageError(f"unknown solver method {method!r}")
        mat = _map_matrix(fld, lambda a: _add(fld, _frob(fld, a, s), _scale(fld, a, eps)))
        rk = rank(mat, p)
        rows = nullspace(mat.T, p)
        return cls(fld, qprime, eps, "matrix", rows, p ** (n - rk))

    def contains(self, c: int) -> bool:
        if self.functionals.shape[0] == 0:
            return True
        v = np.array(_coords(self.field, c), dtype=np.int64)
        return not np.any((self.functionals @ v) % self.field.p)

    def count(self, c: int) -> int:
        return self.kernel_size if self.contains(c) else 0


def _add(fld, a: int, b: int) -> int:
    return fld.add(a, b)


def additive_count(solver: AdditiveSolver, c) -> int:
    code = c.code if isinstance(c, FieldElement) else int(c)
    return solver.count(code)


def kummer_count(f_val: FieldElement, r: int) -> int:
    """Number of t in the field with t^r = f_val."""
    return is_rth_power(f_val, r)[1]


# -- family description ------------------------------------------------------

@dataclass(frozen=True)
class Component:
    name: str
    qprime: int
    eps: int
    x_power: int
    use_f: bool


def components(base_family: str | None, q: int) -> list[Component]:
    """Artin-Schreier equations y^{q'} + eps y = x^a (x^q - x)^b of a base family."""
    if base_family is None:
        return []
    _, q0, _, _ = curves._base_constants(base_family, q)
    if base_family == "hermitian":
        return [Component("y", q0, 1, q0 + 1, False)]
    if base_family == "suzuki":
        return [Component("y", q, 1, q0, True)]
    return [Component("y", q, -1, q0, True), Component("z", q, -1, 2 * q0, True)]


def _digits(a: int, p: int, n: int) -> list[int]:
    out = []
    while a:
        a, r = divmod(a, p)
        out.append(r)
    if len(out) > n:
        raise UsageError("exponent digits exceed field degree")
    return out + [0] * (n - len(out))


def _kummer_plan(p: int, n: int, B: int, r: int) -> tuple[int, int, int, int]:
    """(g, mode, c, e) for the residue test of exponent r."""
    order = p**n
    g = math.gcd(r, order - 1)
    if (B - 1) % g == 0:
        return g, MODE_NORM_LOG, 0, 0
    for c in sorted((d for d in range(1, n) if n % d == 0), reverse=True):
        sub = (order - 1) // (p**c - 1)
        if sub % g == 0:
            return g, MODE_SUBFIELD, c, sub // g
    return g, MODE_POWER, 0, (order - 1) // g


@dataclass
class EnumerationResult:
    base_affine: int
    cover_affine: dict[int, int]
    violating_points: dict[int, int]
    violating_x: dict[int, int]
    moduli: dict
    order: int
    chunks: int
    workers: int
    wall_time: float


_CACHE: dict[tuple, EnumerationResult] = {}


def clear_cache() -> None:
    _CACHE.clear()


def _cached_superset(key: tuple) -> EnumerationResult | None:
    """A cached pass over the same field whose exponent set contains ours."""
    if key in _CACHE:
        return _CACHE[key]
    fam, q, e, exps = key
    for (f2, q2, e2, ex2), res in _CACHE.items():
        if (f2, q2, e2) == (fam, q, e) and set(exps) <= set(ex2):
            return res
    return None


def enumerate_counts(base_family: str | None, q: int, e: int, exponents: Sequence[int] = (),
                     workers: int | None = None, chunks: int | None = None, force: bool = False,
                     progress: bool = False, use_cache: bool = True) -> EnumerationResult:
    """Single pass over F_{q^e}: base count plus Kummer-cover counts for each exponent."""
    p, a = curves.prime_power(q)
    n = a * e
    order = p**n
    if order > GUARD_RAIL and not force:
        raise GuardRailError(f"refusing to enumerate {order} > 2^33 elements without --force")
    exps = tuple(sorted(set(int(r) for r in exponents)))
    for r in exps:
        if r < 1 or r % p == 0:
            raise PreconditionError(f"Kummer exponent {r} must be positive and prime to p")
    key = (base_family, q, e, exps)
    if use_cache:
        hit = _cached_superset(key)
        if hit is not None:
            return hit

    workers = workers or default_workers()
    T = get_tower(p, n)
    F = T.kernel_args()
    comps = components(base_family, q)
    nc = len(comps)
    solvers = [AdditiveSolver.build(T, c.qprime, c.eps) for c in comps]
    maxrows = max([s.functionals.shape[0] for s in solvers] + [1])
    comp_digits = np.zeros((nc, n), dtype=np.int64)
    comp_use_f = np.zeros(nc, dtype=np.int64)
    comp_ftab = np.zeros((nc, maxrows, T.k, T.packed_size), dtype=np.int8)
    comp_nrows = np.zeros(nc, dtype=np.int64)
    comp_ker = np.zeros(nc, dtype=np.int64)
    for i, (c, s) in enumerate(zip(comps, solvers)):
        comp_digits[i] = _digits(c.x_power, p, n)
        comp_use_f[i] = int(c.use_f)
        nr = s.functionals.shape[0]
        if nr:
            comp_ftab[i, :nr] = T.functional_tables_packed(s.functionals)
        comp_nrows[i] = nr
        comp_ker[i] = s.kernel_size
    plans = [_kummer_plan(p, n, T.B, r) for r in exps]
    kum_r = np.array(exps, dtype=np.int64)
    kum_g = np.array([pl[0] for pl in plans], dtype=np.int64)
    kum_mode = np.array([pl[1] for pl in plans], dtype=np.int64)
    kum_c = np.array([pl[2] for pl in plans], dtype=np.int64)
    kum_e = np.array([pl[3] for pl in plans], dtype=np.int64)
    qexp = a % n

    nchunks = chunks or max(workers, -(-order // CHUNK_TARGET))
    nk = len(exps)
    results = np.zeros((nchunks, 1 + 3 * nk), dtype=np.int64)

    def run(i: int) -> None:
        rg = partition_range(order, i, nchunks)
        count_range(rg.start, rg.stop, F, qexp, comp_digits, comp_use_f, comp_ftab, comp_nrows,
                    comp_ker, kum_r, kum_g, kum_mode, kum_c, kum_e, results[i])

    t0 = time.perf_counter()
    done = 0
    if workers == 1:
        for i in range(nchunks):
            run(i)
            done += 1
            if progress:
                print(f"[count] chunk {done}/{nchunks}", file=sys.stderr, flush=True)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for _ in pool.map(run, range(nchunks)):
                done += 1
                if progress:
                    print(f"[count] chunk {done}/{nchunks}", file=sys.stderr, flush=True)
    wall = time.perf_counter() - t0

    tot = [int(v) for v in results.sum(axis=0)]
    res = EnumerationResult(
        base_affine=tot[0],
        cover_affine={r: tot[1 + i] for i, r in enumerate(exps)},
        violating_points={r: tot[1 + nk + i] for i, r in enumerate(exps)},
        violating_x={r: tot[1 + 2 * nk + i] for i, r in enumerate(exps)},
        moduli=T.moduli(),
        order=order,
        chunks=nchunks,
        workers=workers,
        wall_time=wall,
    )
    if use_cache:
        _CACHE[key] = res
    return res


def _affine_from(spec: CurveSpec, res: EnumerationResult) -> int:
    if spec.family == "cyclic-cover" or spec.family == "kummer-line":
        return res.cover_affine[spec.exponent]
    return res.base_affine


def _enumerate_for(spec: CurveSpec, e: int, workers=None, force=False, progress=False,
                   use_cache=True, extra_exponents=()) -> EnumerationResult:
    exps = set(extra_exponents)
    if spec.family in ("cyclic-cover", "kummer-line"):
        exps.add(spec.exponent)
    return enumerate_counts(spec.base_family, spec.q, e, sorted(exps), workers=workers,
                            force=force, progress=progress, use_cache=use_cache)


def affine_count(spec: CurveSpec, e: int, **kw) -> int:
    return _affine_from(spec, _enumerate_for(spec, e, **kw))


def total_count(spec: CurveSpec, e: int, **kw) -> int:
    return affine_count(spec, e, **kw) + 1


# -- reports ------------------------------------------------------------------

@dataclass
class CountReport:
    spec: CurveSpec
    extension: int
    affine: int
    infinite: int
    total: int
    genus: int
    hasse_weil_bound: int | None
    maximal: bool | None
    deficiency: int | None
    degree_counts: dict[int, int] = field(default_factory=dict)
    split_violations: int | None = None
    moduli: dict = field(default_factory=dict)
    wall_time: float = 0.0
    workers: int = 1

    def payload(self) -> dict:
        return {
            "extension": self.extension,
            "affine": self.affine,
            "infinite": self.infinite,
            "N": self.total,
            "genus": self.genus,
            "hasse_weil_bound": self.hasse_weil_bound,
            "maximal": self.maximal,
            "deficiency": self.deficiency,
            "degree_counts": {str(k): v for k, v in sorted(self.degree_counts.items())},
            "split_violations": self.split_violations,
        }


def _check_hasse_weil(q: int, e: int, g: int, n: int) -> None:
    # |N - q^e - 1| <= 2 g q^{e/2}, squared to stay in integers
    dev = n - q**e - 1
    if dev * dev > 4 * g * g * q**e:
        raise ConsistencyError(f"Hasse-Weil violated: N={n}, q^e={q**e}, g={g}")


def count_points(spec: CurveSpec, e: int, workers: int | None = None, force: bool = False,
                 degrees: bool = False, progress: bool = False, use_cache: bool = True) -> CountReport:
    """Count N_e = #X(F_{q^e}) and derive the Hasse-Weil verdict."""
    if e < 1:
        raise PreconditionError("extension degree must be >= 1")
    t0 = time.perf_counter()
    res = _enumerate_for(spec, e, workers=workers, force=force, progress=progress, use_cache=use_cache)
    affine = _affine_from(spec, res)
    total = affine + 1
    g = curves.genus(spec)
    _check_hasse_weil(spec.q, e, g, total)
    try:
        bound = curves.hasse_weil_expected(spec, e)
    except PreconditionError:
        bound = None
    rep = CountReport(
        spec=spec, extension=e, affine=affine, infinite=1, total=total, genus=g,
        hasse_weil_bound=bound,
        maximal=None if bound is None else total == bound,
        deficiency=None if bound is None else bound - total,
        moduli=res.moduli, workers=res.workers,
    )
    if degrees:
        for r in divisors(e):
            rep.degree_counts[r] = points_of_degree(spec, r, workers=workers, force=force,
                                                    use_cache=use_cache)
    rep.wall_time = time.perf_counter() - t0
    return rep


def points_of_degree(spec: CurveSpec, r: int, workers: int | None = None, force: bool = False,
                     use_cache: bool = True) -> int:
    """Number a_r of closed points of degree r, by Moebius inversion of N_e for e | r."""
    acc = 0
    for e in divisors(r):
        mu = int(mobius(r // e))
        if mu:
            acc += mu * total_count(spec, e, workers=workers, force=force, use_cache=use_cache)
    if acc % r or acc < 0:
        raise ConsistencyError(f"Moebius sum {acc} for degree {r} is not a nonnegative multiple of {r}")
    return acc // r


def maximality_verdict(spec: CurveSpec, e: int, **kw) -> tuple[bool, int]:
    rep = count_points(spec, e, **kw)
    if rep.hasse_weil_bound is None:
        raise PreconditionError(f"q^(e/2) is not an integer for q={spec.q}, e={e}")
    return rep.maximal, rep.deficiency


@dataclass
class SplitAudit:
    """Non-split fibres of Y -> X over points of X(F_{q^d}) outside X(F_q).

    ``violations`` counts such points of X whose fibre has fewer than e
    rational points; ``violating_x`` counts their x-coordinates.
    """

    spec: CurveSpec
    extension: int
    violations: int
    violating_x: int
    deficiency: int
    predicted_deficiency: int
    consistent: bool

    def payload(self) -> dict:
        return {
            "extension": self.extension,
            "violations": self.violations,
            "violating_x": self.violating_x,
            "deficiency": self.deficiency,
            "predicted_deficiency": self.predicted_deficiency,
            "consistent": self.consistent,
        }


def fiber_split_audit(spec: CurveSpec, workers: int | None = None, force: bool = False,
                      progress: bool = False, use_cache: bool = True) -> SplitAudit:
    """Run the splitting audit over F_{q^d}.

    When the base is maximal over F_{q^d} and its F_q-points are exactly the
    ramified ones, each non-split fibre loses all e points, so the Hasse-Weil
    deficiency of the cover must equal e times the number of violations.
    """
    if spec.family != "cyclic-cover":
        raise PreconditionError("the splitting audit applies to cyclic covers")
    e = spec.d
    res = _enumerate_for(spec, e, workers=workers, force=force, progress=progress, use_cache=use_cache)
    r = spec.exponent
    total = res.cover_affine[r] + 1
    bound = curves.hasse_weil_expected(spec, e)
    pred = r * res.violating_points[r]
    return SplitAudit(
        spec=spec, extension=e, violations=res.violating_points[r], violating_x=res.violating_x[r],
        deficiency=bound - total, predicted_deficiency=pred, consistent=(bound - total == pred),
    )


# -- reference counter (independent of the kernel) ------------------------------

def count_points_reference(spec: CurveSpec, e: int) -> int:
    """N_e by whole-field histograms on a log-table field (small fields only).

    Uses no trace criterion, no linear functionals and no tower: for each
    equation it tabulates the value distribution of the left-hand side and
    looks the right-hand sides up in it.
    """
    p, a = curves.prime_power(spec.q)
    fld: FieldDescriptor = get_field(p, a * e)
    if not fld.has_tables or fld.order > 1 << 21:
        raise UsageError("reference counter needs a table field")
    xs = np.arange(fld.order, dtype=np.int64)
    f = fld.vsub(fld.vpow(xs, spec.q), xs)
    weight = np.ones(fld.order, dtype=np.int64)
    for c in components(spec.base_family, spec.q):
        lhs = fld.vadd(fld.vpow(xs, c.qprime), fld.vscale(xs, c.eps))
        hist = np.bincount(lhs, minlength=fld.order)
        rhs = fld.vpow(xs, c.x_power)
        if c.use_f:
            rhs = fld.vmul(rhs, f)
        weight *= hist[rhs]
    if spec.family in ("cyclic-cover", "kummer-line"):
        hist_t = np.bincount(fld.vpow(xs, spec.exponent), minlength=fld.order)
        weight *= hist_t[f]
    return int(weight.sum()) + 1
