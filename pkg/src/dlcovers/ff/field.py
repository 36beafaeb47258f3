"""Prime-power fields F_{p^n} in a polynomial basis.

An element is encoded as the integer ``sum(c_i * p**i)`` of its coefficient
vector over F_p (``c_i`` is the coefficient of T^i).  Codes therefore order
elements lexicographically by (c_{n-1}, ..., c_0).

Fields with at most ``TABLE_LIMIT`` elements carry log/antilog tables and
support vectorised operations on numpy arrays of codes; larger fields fall
back to schoolbook polynomial arithmetic, which is adequate for sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

import numba
import numpy as np
from sympy import factorint

from ..errors import DomainError, PreconditionError, UsageError
from . import linalg
from .poly import find_irreducible, format_poly

TABLE_LIMIT = 1 << 21


@numba.njit(cache=True)
def _exp_table(p, n, red, g, size):
    # red[i]: T^n = sum red[i] T^i ; g: digits of the generator
    out = np.empty(size, dtype=np.int64)
    cur = np.zeros(n, dtype=np.int64)
    cur[0] = 1
    prod = np.zeros(2 * n - 1, dtype=np.int64)
    for e in range(size):
        code = 0
        for i in range(n - 1, -1, -1):
            code = code * p + cur[i]
        out[e] = code
        prod[:] = 0
        for i in range(n):
            if cur[i] != 0:
                for j in range(n):
                    prod[i + j] += cur[i] * g[j]
        for l in range(2 * n - 2, n - 1, -1):
            c = prod[l] % p
            if c != 0:
                for i in range(n):
                    prod[l - n + i] += c * red[i]
        for i in range(n):
            cur[i] = prod[i] % p
    return out


class FieldDescriptor:
    """The field F_{p^n} = F_p[T]/(modulus) with a fixed, reproducible modulus.

    Instances are immutable after construction and safe to share; use
    :func:`get_field` to obtain the canonical (lex-least modulus) instance.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | None = None):
        self.p = p
        self.n = n
        self.order = p**n
        self.modulus = tuple(modulus) if modulus is not None else find_irreducible(p, n)
        if len(self.modulus) != n:
            raise PreconditionError("modulus length must equal the degree")
        # T^n = sum(_red[i] T^i)
        self._red = [(-c) % p for c in reversed(self.modulus)]
        self._embeddings: dict[int, Embedding] = {}

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, FieldDescriptor)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.n}, {format_poly(self.modulus)})"

    @property
    def has_tables(self) -> bool:
        return self.order <= TABLE_LIMIT

    # -- code <-> digits --------------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.n):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        code = 0
        for c in reversed(list(ds)):
            code = code * self.p + int(c) % self.p
        return code

    def digit_matrix(self, codes) -> np.ndarray:
        """Rows of F_p-coordinates for an array of codes."""
        codes = np.asarray(codes, dtype=np.int64)
        out = np.empty(codes.shape + (self.n,), dtype=np.int64)
        rest = codes.copy()
        for i in range(self.n):
            rest, out[..., i] = np.divmod(rest, self.p)
        return out

    def codes_from_digit_matrix(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64) % self.p
        weights = self.p ** np.arange(self.n, dtype=np.int64)
        return d @ weights

    # -- scalar arithmetic ------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self.digits(a), self.digits(b)
        return self.from_digits(x + y for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, a: int, c: int) -> int:
        """Multiply by the prime-field scalar c."""
        return self.from_digits(c * x for x in self.digits(a))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            return int(self.exp[self.log[a] + self.log[b]])
        return self._mul_poly(a, b)

    def _mul_poly(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        if p == 2:
            prod = 0
            while b:
                if b & 1:
                    prod ^= a
                a <<= 1
                b >>= 1
            red = self.from_digits(self._red)
            for bit in range(2 * n - 2, n - 1, -1):
                if prod >> bit & 1:
                    prod ^= (1 << bit) ^ (red << (bit - n))
            return prod
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        for l in range(2 * n - 2, n - 1, -1):
            c = prod[l] % p
            if c:
                for i, r in enumerate(self._red):
                    prod[l - n + i] += c * r
        return self.from_digits(prod[:n])

    def pow(self, a: int, e: int) -> int:
        """Square-and-multiply exponentiation; negative exponents invert first."""
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inverse of zero")
        if self.has_tables:
            return int(self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)])
        return self.pow(a, self.order - 2)

    # -- tables -----------------------------------------------------------
    @cached_property
    def primitive_element(self) -> int:
        """Smallest code generating the multiplicative group."""
        m = self.order - 1
        if m == 1:
            return 1
        primes = list(factorint(m))
        for g in range(2, self.order):
            if all(self._pow_nt(g, m // l) != 1 for l in primes):
                return g
        raise AssertionError("unreachable: multiplicative group is cyclic")

    def _pow_nt(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base) if result and base else 0
            base = self._mul_poly(base, base) if base else 0
            e >>= 1
        return result

    @cached_property
    def _tables(self):
        if not self.has_tables:
            raise UsageError(f"{self!r} is too large for log tables")
        m = self.order - 1
        g = np.array(self.digits(self.primitive_element), dtype=np.int64)
        red = np.array(self._red, dtype=np.int64)
        exp1 = _exp_table(self.p, self.n, red, g, m)
        exp = np.concatenate([exp1, exp1, exp1[:1]])
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp1] = np.arange(m, dtype=np.int64)
        return exp, log

    @property
    def exp(self) -> np.ndarray:
        return self._tables[0]

    @property
    def log(self) -> np.ndarray:
        return self._tables[1]

    # -- vectorised arithmetic (table fields) -----------------------------
    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        ra, rb = a.copy(), b.copy()
        for _ in range(self.n):
            ra, da = np.divmod(ra, self.p)
            rb, db = np.divmod(rb, self.p)
            out += ((da + db) % self.p) * place
            place *= self.p
        return out

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        out = np.zeros_like(a)
        place = 1
        ra = a.copy()
        for _ in range(self.n):
            ra, da = np.divmod(ra, self.p)
            out += ((-da) % self.p) * place
            place *= self.p
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        zero = (a == 0) | (b == 0)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where(zero, 0, out)

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if e < 0 and np.any(a == 0):
            raise DomainError("negative power of zero")
        m = self.order - 1
        out = self.exp[(self.log[a] * (e % m)) % m]
        return np.where(a == 0, 0, out)

    def vscale(self, a, c: int):
        """Vectorised multiplication by a prime-field scalar."""
        return self.vmul(a, np.full(np.shape(a), self.from_digits([c % self.p])))

    # -- Frobenius, trace, embeddings -------------------------------------
    def _subfield_degree(self, qprime: int) -> int:
        k = round(math.log(qprime, self.p)) if qprime > 1 else 0
        if k < 1 or self.p**k != qprime or self.n % k:
            raise UsageError(f"{qprime} is not the order of a subfield of {self!r}")
        return k

    @lru_cache(maxsize=None)
    def frobenius_matrix(self, s: int) -> np.ndarray:
        """F_p-matrix of x -> x^(p^s); column i holds the image of T^i."""
        s %= self.n
        cols = []
        for i in range(self.n):
            basis = self.p**i
            cols.append(self.digits(self.pow(basis, self.p**s)))
        return np.array(cols, dtype=np.int64).T

    def frobenius(self, a: int, qprime: int, j: int = 1) -> int:
        """a^(qprime^j) via the precomputed linear map."""
        k = self._subfield_degree(qprime)
        mat = self.frobenius_matrix((k * j) % self.n)
        d = mat @ np.array(self.digits(a), dtype=np.int64)
        return self.from_digits(d % self.p)

    def vfrobenius(self, a, qprime: int, j: int = 1):
        k = self._subfield_degree(qprime)
        mat = self.frobenius_matrix((k * j) % self.n)
        return self.codes_from_digit_matrix(self.digit_matrix(a) @ mat.T)

    def register_subfield(self, k: int) -> "Embedding":
        """Register (idempotently) the embedding of F_{p^k}; k must divide n."""
        if k < 1 or self.n % k:
            raise UsageError(f"F_{self.p}^{k} is not a subfield of {self!r}")
        if k not in self._embeddings:
            self._embeddings[k] = Embedding.build(get_field(self.p, k), self)
        return self._embeddings[k]

    def embedding(self, qprime: int) -> "Embedding":
        k = self._subfield_degree(qprime)
        if k not in self._embeddings:
            raise UsageError(f"subfield of order {qprime} not registered on {self!r}")
        return self._embeddings[k]

    def trace_code(self, a: int, qprime: int) -> int:
        """Tr_{F/F_q'}(a) as an element (code) of this field."""
        k = self._subfield_degree(qprime)
        e = self.n // k
        acc = 0
        cur = a
        for _ in range(e):
            acc = self.add(acc, cur)
            cur = self.frobenius(cur, qprime)
        return acc

    @lru_cache(maxsize=None)
    def trace_matrix(self, qprime: int) -> np.ndarray:
        """F_p-matrix of the relative trace to F_q' (as a map F -> F)."""
        k = self._subfield_degree(qprime)
        e = self.n // k
        acc = np.zeros((self.n, self.n), dtype=np.int64)
        for j in range(e):
            acc = acc + self.frobenius_matrix((k * j) % self.n)
        return acc % self.p

    # -- elements ---------------------------------------------------------
    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise UsageError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    def gen(self) -> "FieldElement":
        """The class of T (equals the scalar 0 when n = 1 and T is the modulus root)."""
        if self.n == 1:
            return self.element((-self.modulus[0]) % self.p)
        return self.element(self.p)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def __iter__(self) -> Iterator["FieldElement"]:
        for code in range(self.order):
            yield FieldElement(self, code)

    def __len__(self) -> int:
        return self.order


@lru_cache(maxsize=None)
def get_field(p: int, n: int) -> FieldDescriptor:
    """Shared canonical descriptor of F_{p^n}."""
    return FieldDescriptor(p, n)


@dataclass(frozen=True)
class Embedding:
    """Ring embedding F_{p^k} -> F_{p^n} sending the subfield generator to theta."""

    sub: FieldDescriptor
    big: FieldDescriptor
    theta: int
    matrix: np.ndarray  # n x k, column i = digits(theta^i)

    @staticmethod
    def build(sub: FieldDescriptor, big: FieldDescriptor) -> "Embedding":
        theta = min(_roots_in_subfield(sub, big))
        cols, cur = [], 1
        for _ in range(sub.n):
            cols.append(big.digits(cur))
            cur = big.mul(cur, theta)
        return Embedding(sub, big, theta, np.array(cols, dtype=np.int64).T)

    def __call__(self, a: int) -> int:
        d = self.matrix @ np.array(self.sub.digits(a), dtype=np.int64)
        return self.big.from_digits(d % self.big.p)

    def preimage(self, a: int) -> int:
        x = linalg.solve(self.matrix, self.big.digits(a), self.big.p)
        if x is None:
            raise DomainError(f"element {a} does not lie in the embedded {self.sub!r}")
        return self.sub.from_digits(x)


def _roots_in_subfield(sub: FieldDescriptor, big: FieldDescriptor) -> list[int]:
    """Roots in ``big`` of the modulus of ``sub`` (all lie in the copy of sub)."""
    k, m = sub.n, big.order - 1
    step = m // (sub.order - 1)
    if big.has_tables:
        elems = np.concatenate([[0], big.exp[np.arange(sub.order - 1) * step]])
        acc = np.ones_like(elems)
        for c in sub.modulus:
            acc = big.vadd(big.vmul(acc, elems), np.full_like(elems, c))
        return sorted(int(e) for e in elems[acc == 0])
    gamma = big.pow(big.primitive_element, step)
    roots, cur = [], 1
    for _ in range(sub.order - 1):
        acc = 1
        for c in sub.modulus:
            acc = big.add(big.mul(acc, cur), c)
        if acc == 0:
            roots.append(cur)
            if len(roots) == k:
                break
        cur = big.mul(cur, gamma)
    return sorted(roots)


def _same_field(a: "FieldElement", b) -> "FieldElement":
    if isinstance(b, int):
        return FieldElement(a.field, a.field.scale(1, b))
    if not isinstance(b, FieldElement):
        return NotImplemented
    if b.field != a.field:
        raise UsageError(f"mixed-field operands: {a.field!r} and {b.field!r}")
    return b


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: FieldDescriptor
    code: int

    def __eq__(self, other):
        if isinstance(other, int):
            other = FieldElement(self.field, self.field.scale(1, other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.code == other.code

    def __hash__(self):
        return hash((self.field, self.code))

    def __add__(self, other):
        other = _same_field(self, other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.add(self.code, other.code))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __sub__(self, other):
        other = _same_field(self, other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.sub(self.code, other.code))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _same_field(self, other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul(self.code, other.code))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        other = _same_field(self, other)
        return self * other.inv()

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.field.digits(self.code)):
            if c:
                mono = "1" if i == 0 else ("T" if i == 1 else f"T^{i}")
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"

    def frobenius(self, qprime: int, j: int = 1) -> "FieldElement":
        return frobenius(self, qprime, j)


def frobenius(a: FieldElement, qprime: int, j: int = 1) -> FieldElement:
    """a^(q'^j), applied as a precomputed F_p-linear map."""
    return FieldElement(a.field, a.field.frobenius(a.code, qprime, j))


def relative_trace(a: FieldElement, qprime: int) -> FieldElement:
    """Tr_{F/F_q'}(a) as an element of the registered subfield F_q'."""
    emb = a.field.embedding(qprime)
    return FieldElement(emb.sub, emb.preimage(a.field.trace_code(a.code, qprime)))


def is_rth_power(a: FieldElement, r: int) -> tuple[bool, int]:
    """(is a an r-th power, number of r-th roots of a)."""
    if r < 1:
        raise PreconditionError("r must be a positive integer")
    if a.code == 0:
        return True, 1
    m = a.field.order - 1
    g = math.gcd(r, m)
    ok = a.field.pow(a.code, m // g) == 1
    return ok, (g if ok else 0)


def partition_range(order: int, index: int, count: int) -> range:
    """Codes of chunk ``index`` out of ``count`` equal contiguous slices."""
    if count < 1 or not 0 <= index < count:
        raise UsageError(f"chunk {index} out of range for {count} chunks")
    return range(index * order // count, (index + 1) * order // count)


def enumerate_partition(field: FieldDescriptor, index: int, count: int) -> Iterator[FieldElement]:
    for code in partition_range(field.order, index, count):
        yield FieldElement(field, code)
