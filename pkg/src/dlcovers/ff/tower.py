"""Two-level tower representation for bulk enumeration.

F_{p^n} is built as F_B[T]/(mu) where F_B = F_{p^b} is a log-table field
and mu is the lexicographically least monic irreducible of degree k = n/b
over F_B.  A tower code is ``sum(c_i * B**i)`` with base codes ``c_i``.
For k = 1 the tower is the table field itself.

The ``nb_*`` functions are numba kernels over the packed table bundle returned
by :meth:`TowerField.kernel_args`; the Python methods mirror them for setup
work (building linear maps, tests).
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numba
import numpy as np

from ..errors import UnsupportedError
from .field import FieldDescriptor, get_field

BASE_LIMIT = {2: 1 << 20, 3: 3**7}
DEFAULT_BASE_LIMIT = 1 << 12
MAX_REL_DEGREE = 3


def choose_base_degree(p: int, n: int) -> int:
    limit = BASE_LIMIT.get(p, DEFAULT_BASE_LIMIT)
    for b in sorted((d for d in range(1, n + 1) if n % d == 0), reverse=True):
        if p**b <= limit and n // b <= MAX_REL_DEGREE:
            return b
    raise UnsupportedError(f"no supported tower for F_{p}^{n}")


class TowerField:
    """F_{p^n} as a degree-k extension of a table field F_{p^b}."""

    def __init__(self, p: int, n: int, base_degree: int | None = None):
        b = base_degree or choose_base_degree(p, n)
        if n % b or n // b > MAX_REL_DEGREE:
            raise UnsupportedError(f"unsupported tower F_{p}^{n} over F_{p}^{b}")
        self.p, self.n, self.b, self.k = p, n, b, n // b
        self.base: FieldDescriptor = get_field(p, b)
        self.B = self.base.order
        self.order = p**n
        self.rel_modulus = self._find_relative_modulus()
        # T^k = sum(_rel[i] T^i)
        self._rel = [self.base.neg(c) for c in reversed(self.rel_modulus)]

    def __repr__(self):
        return f"Tower(F_{self.p}^{self.n} = F_{self.B}[T]/deg {self.k})"

    def _find_relative_modulus(self) -> tuple[int, ...]:
        if self.k == 1:
            return ()
        base = self.base
        xs = np.arange(self.B, dtype=np.int64)
        for coeffs in itertools.product(range(self.B), repeat=self.k):
            # degree <= 3: irreducible iff no root in the base field
            acc = np.ones_like(xs)
            for c in coeffs:
                acc = base.vadd(base.vmul(acc, xs), np.full_like(xs, c))
            if not np.any(acc == 0):
                return coeffs
        raise AssertionError("unreachable")

    def moduli(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "base_degree": self.b,
            "base_modulus": list(self.base.modulus),
            "relative_degree": self.k,
            "relative_modulus": list(self.rel_modulus),
        }

    # -- scalar arithmetic (setup path) -----------------------------------
    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.B)
            out.append(r)
        return out

    def from_coeffs(self, cs) -> int:
        code = 0
        for c in reversed(list(cs)):
            code = code * self.B + int(c)
        return code

    def coords(self, a: int) -> list[int]:
        """F_p-coordinates: base digits of c_0, then c_1, ..."""
        out = []
        for c in self.coeffs(a):
            out.extend(self.base.digits(c))
        return out

    def from_coords(self, v) -> int:
        v = [int(x) % self.p for x in v]
        b = self.b
        return self.from_coeffs(self.base.from_digits(v[i * b:(i + 1) * b]) for i in range(self.k))

    def add(self, a: int, b: int) -> int:
        return self.from_coeffs(self.base.add(x, y) for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        return self.from_coeffs(self.base.neg(x) for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        base, k = self.base, self.k
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        for l in range(2 * k - 2, k - 1, -1):
            c = prod[l]
            if c:
                for i, r in enumerate(self._rel):
                    prod[l - k + i] = base.add(prod[l - k + i], base.mul(c, r))
        return self.from_coeffs(prod[:k])

    def pow(self, a: int, e: int) -> int:
        result, sq = 1, a
        while e:
            if e & 1:
                result = self.mul(result, sq)
            sq = self.mul(sq, sq)
            e >>= 1
        return result

    def frob(self, a: int, s: int) -> int:
        """a^(p^s) using base Frobenius tables and the images of T^i."""
        s %= self.n
        out = 0
        for i, c in enumerate(self.coeffs(a)):
            if c:
                ci = int(self._bfrob[s % self.b][c])
                term = self.from_coeffs(self.base.mul(ci, t) for t in self._tau[s][i])
                out = self.add(out, term)
        return out

    @cached_property
    def _bfrob(self) -> np.ndarray:
        base = self.base
        xs = np.arange(self.B, dtype=np.int64)
        return np.stack([base.vpow(xs, self.p**j) for j in range(self.b)])

    @cached_property
    def _tau(self) -> np.ndarray:
        # _tau[s, i] = coefficients of (T^i)^(p^s)
        k = self.k
        tau = np.zeros((self.n, k, k), dtype=np.int64)
        gen = self.B if k > 1 else None
        for s in range(self.n):
            if k == 1:
                tau[s, 0, 0] = 1
                continue
            ts = self.pow(gen, self.p**s)
            cur = 1
            for i in range(k):
                tau[s, i] = self.coeffs(cur)
                cur = self.mul(cur, ts)
        return tau

    def linear_map_matrix(self, fn) -> np.ndarray:
        """F_p-matrix (n x n) of an additive map given on codes."""
        cols = []
        for i in range(self.k):
            for j in range(self.b):
                cols.append(self.coords(fn((self.p**j) * self.B**i)))
        return np.array(cols, dtype=np.int64).T

    def functional_tables(self, rows: np.ndarray) -> np.ndarray:
        """Per-slot lookup tables: tab[r, i, c] = contribution of base coeff c in slot i."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.n)
        digits = self.base.digit_matrix(np.arange(self.B))  # B x b
        out = np.zeros((rows.shape[0], self.k, self.B), dtype=np.int8)
        for r in range(rows.shape[0]):
            for i in range(self.k):
                out[r, i] = (digits @ rows[r, i * self.b:(i + 1) * self.b]) % self.p
        return out

    # -- packed representation for the numba kernels ----------------------
    # Char 2: a base element is its usual code (bit j = digit j).  Char 3:
    # digits are bit-sliced into two planes, bit j of the low plane set for
    # digit 1 and bit j of the high plane (shifted by b) set for digit 2, so
    # addition is a handful of branch-free bit operations.
    @cached_property
    def _pack(self) -> np.ndarray:
        if self.p == 2:
            return np.arange(self.B, dtype=np.int64)
        if self.p != 3:
            raise UnsupportedError("packed kernels support characteristic 2 and 3")
        digits = self.base.digit_matrix(np.arange(self.B))
        w = 1 << np.arange(self.b, dtype=np.int64)
        return ((digits == 1) @ w) | (((digits == 2) @ w) << self.b)

    @property
    def packed_size(self) -> int:
        return self.B if self.p == 2 else 1 << (2 * self.b)

    def pack(self, c: int) -> int:
        return int(self._pack[c])

    def functional_tables_packed(self, rows: np.ndarray) -> np.ndarray:
        """functional_tables re-indexed by packed base value."""
        tab = self.functional_tables(rows)
        out = np.zeros(tab.shape[:2] + (self.packed_size,), dtype=np.int8)
        out[:, :, self._pack] = tab
        return out

    def kernel_args(self) -> tuple:
        """Bundle (p, k, B, b, exp, log, pack, unpack, bfrob, rel, tau) for the nb_* kernels."""
        base, m = self.base, self.B - 1
        pk = self._pack
        P = self.packed_size
        unpack = np.zeros(P, dtype=np.int64)
        unpack[pk] = np.arange(self.B)
        sentinel = 2 * m
        log = np.full(P, sentinel, dtype=np.int64)
        nz = np.arange(1, self.B)
        log[pk[nz]] = base.log[nz] % m
        exp = np.zeros(2 * sentinel + 1, dtype=np.int64)
        exp[:sentinel] = pk[base.exp[np.arange(sentinel) % m]]
        bfrob = np.zeros((self.b, P), dtype=np.int64)
        bfrob[:, pk] = pk[self._bfrob]
        rel = pk[np.array(self._rel if self.k > 1 else [0], dtype=np.int64)]
        tau = pk[self._tau]
        return (self.p, self.k, self.B, self.b, exp, log, pk.copy(), unpack, bfrob, rel, tau)


# -- numba primitives ------------------------------------------------------
# Slots hold packed base elements (see TowerField._pack); zero packs to 0 and
# one packs to 1.  The tables are passed as separate arguments rather than in
# a tuple: pulling arrays out of a tuple in the inner loop costs a reference
# count round trip per access.  Argument names follow kernel_args():
#   p, k, B, b, exp, log, pack, unpack, bfrob, rel, tau


@numba.njit(cache=True, nogil=True, inline="always")
def nb_badd(a, c, p, b):
    if p == 2:
        return a ^ c
    msk = (1 << b) - 1
    al = a & msk
    ah = a >> b
    cl = c & msk
    ch = c >> b
    t = (al | ch) ^ (ah | cl)
    return ((ah | ch) ^ t) | (((al | cl) ^ t) << b)


@numba.njit(cache=True, nogil=True, inline="always")
def nb_bneg(a, p, b):
    if p == 2:
        return a
    return (a >> b) | ((a & ((1 << b) - 1)) << b)


@numba.njit(cache=True, nogil=True, inline="always")
def nb_decode(code, out, k, B, pack):
    for i in range(k):
        out[i] = pack[code % B]
        code //= B


@numba.njit(cache=True, nogil=True, inline="always")
def nb_encode(A, k, B, unpack):
    code = 0
    for i in range(k - 1, -1, -1):
        code = code * B + unpack[A[i]]
    return code


@numba.njit(cache=True, nogil=True, inline="always")
def nb_is_zero(A, k):
    for i in range(k):
        if A[i] != 0:
            return False
    return True


@numba.njit(cache=True, nogil=True, inline="always")
def nb_is_one(A, k):
    if A[0] != 1:
        return False
    for i in range(1, k):
        if A[i] != 0:
            return False
    return True


@numba.njit(cache=True, nogil=True, inline="always")
def nb_equal(A, C, k):
    for i in range(k):
        if A[i] != C[i]:
            return False
    return True


@numba.njit(cache=True, nogil=True, inline="always")
def nb_set_one(A, k):
    A[0] = 1
    for i in range(1, k):
        A[i] = 0


@numba.njit(cache=True, nogil=True, inline="always")
def nb_sub(A, C, out, p, b, k):
    for i in range(k):
        out[i] = nb_badd(A[i], nb_bneg(C[i], p, b), p, b)


@numba.njit(cache=True, nogil=True, inline="always")
def nb_mul(A, C, out, tmp, p, b, k, exp, log, rel):
    """out = A * C; out may alias A or C."""
    if k == 1:
        out[0] = exp[log[A[0]] + log[C[0]]]
        return
    for i in range(2 * k - 1):
        tmp[i] = 0
    for i in range(k):
        la = log[A[i]]
        for j in range(k):
            tmp[i + j] = nb_badd(tmp[i + j], exp[la + log[C[j]]], p, b)
    for l in range(2 * k - 2, k - 1, -1):
        lc = log[tmp[l]]
        for i in range(k):
            tmp[l - k + i] = nb_badd(tmp[l - k + i], exp[lc + log[rel[i]]], p, b)
    for i in range(k):
        out[i] = tmp[i]


@numba.njit(cache=True, nogil=True, inline="always")
def nb_frob(A, s, out, p, b, k, exp, log, bfrob, tau):
    """out = A^(p^s); out must not alias A."""
    row = s % b
    if k == 1:
        out[0] = bfrob[row, A[0]]
        return
    for j in range(k):
        out[j] = 0
    for i in range(k):
        lc = log[bfrob[row, A[i]]]
        for j in range(k):
            out[j] = nb_badd(out[j], exp[lc + log[tau[s, i, j]]], p, b)


@numba.njit(cache=True, nogil=True)
def nb_pow(A, e, out, sq, tmp, p, b, k, exp, log, rel):
    """out = A^e (square and multiply); out, sq scratch distinct from A."""
    for i in range(k):
        sq[i] = A[i]
    nb_set_one(out, k)
    while e > 0:
        if e & 1:
            nb_mul(out, sq, out, tmp, p, b, k, exp, log, rel)
        e >>= 1
        if e > 0:
            nb_mul(sq, sq, sq, tmp, p, b, k, exp, log, rel)


@numba.njit(cache=True)
def nb_mul_codes(a, c, F):
    """Code-level product (testing aid for the kernel primitives)."""
    p, k, B, b, exp, log, pack, unpack, bfrob, rel, tau = F
    A = np.zeros(k, dtype=np.int64)
    C = np.zeros(k, dtype=np.int64)
    tmp = np.zeros(2 * k, dtype=np.int64)
    nb_decode(a, A, k, B, pack)
    nb_decode(c, C, k, B, pack)
    nb_mul(A, C, A, tmp, p, b, k, exp, log, rel)
    return nb_encode(A, k, B, unpack)


@numba.njit(cache=True)
def nb_frob_codes(a, s, F):
    p, k, B, b, exp, log, pack, unpack, bfrob, rel, tau = F
    A = np.zeros(k, dtype=np.int64)
    out = np.zeros(k, dtype=np.int64)
    nb_decode(a, A, k, B, pack)
    nb_frob(A, s, out, p, b, k, exp, log, bfrob, tau)
    return nb_encode(out, k, B, unpack)


@numba.njit(cache=True)
def nb_pow_codes(a, e, F):
    p, k, B, b, exp, log, pack, unpack, bfrob, rel, tau = F
    A = np.zeros(k, dtype=np.int64)
    out = np.zeros(k, dtype=np.int64)
    sq = np.zeros(k, dtype=np.int64)
    tmp = np.zeros(2 * k, dtype=np.int64)
    nb_decode(a, A, k, B, pack)
    nb_pow(A, e, out, sq, tmp, p, b, k, exp, log, rel)
    return nb_encode(out, k, B, unpack)


_TOWERS: dict[tuple[int, int], TowerField] = {}


def get_tower(p: int, n: int) -> TowerField:
    key = (p, n)
    if key not in _TOWERS:
        _TOWERS[key] = TowerField(p, n)
    return _TOWERS[key]
