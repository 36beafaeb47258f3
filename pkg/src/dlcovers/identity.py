"""Normal forms in the coordinate rings of the Suzuki and Ree curves.

Elements of F_p[x, y(, z)] modulo the Artin-Schreier relations

    Suzuki:  y^q = y + x^{q0} (x^q + x)
    Ree:     y^q = y + x^{q0} (x^q - x),   z^q = z + x^{2 q0} (x^q - x)

are stored densely as int64 arrays indexed ``[y-degree, z-degree, x-degree]``
with y, z degrees below q (the z axis has length 1 for Suzuki).  Reduction
walks the overflowing y (then z) slices from the top down, replacing
y^b by y^{b-q} (y + g(x)); every step lowers the y-degree, so it terminates,
and the result is the unique representative in the free F_p[x]-basis
{y^i z^j : i, j < q}.

p-th powers use the Frobenius trick: coefficients lie in F_p, so raising to
the p-th power just multiplies every exponent by p before reducing.  The
variable t never appears; t^k with m | k is replaced by (x^q - x)^{k/m}.

Identities are written once against a tiny algebra interface (x, y, z,
tpow, ring operators) and evaluated either symbolically here or numerically
on the points of a curve over a finite field.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from . import curves
from .count import components
from .curves import CurveSpec
from .errors import PreconditionError, UnsupportedError, UsageError
from .ff.field import FieldDescriptor, get_field

SHIFT_ADD_TERMS = 256


def _xpoly_terms(coeffs: dict[int, int], p: int) -> list[tuple[int, int]]:
    return sorted((d, c % p) for d, c in coeffs.items() if c % p)


class RewriteSystem:
    """Rewrite rules and bookkeeping for one curve (family, q)."""

    def __init__(self, family: str, q: int):
        if family not in ("suzuki", "ree"):
            raise UnsupportedError("rewrite systems exist for the suzuki and ree curves")
        p, q0, m, _ = curves._base_constants(family, q)
        self.family, self.q, self.q0, self.p, self.m = family, q, q0, p, m
        self.ny = q
        self.nz = q if family == "ree" else 1
        # y^q - y = x^{q0} f and z^q - z = x^{2q0} f, with f = x^q - x
        self.g_y = _xpoly_terms({q0 + q: 1, q0 + 1: -1}, p)
        self.g_z = _xpoly_terms({2 * q0 + q: 1, 2 * q0 + 1: -1}, p) if family == "ree" else []

    def __repr__(self):
        return f"RewriteSystem({self.family}, q={self.q})"

    # -- constructors ------------------------------------------------------
    def zero(self) -> "RewritePoly":
        return RewritePoly(self, np.zeros((self.ny, self.nz, 1), dtype=np.int64))

    def const(self, c: int) -> "RewritePoly":
        a = np.zeros((self.ny, self.nz, 1), dtype=np.int64)
        a[0, 0, 0] = c % self.p
        return RewritePoly(self, a)

    def monomial(self, xdeg: int = 0, ydeg: int = 0, zdeg: int = 0, coeff: int = 1) -> "RewritePoly":
        return self.from_terms({(xdeg, ydeg, zdeg): coeff})

    def from_terms(self, terms: dict[tuple[int, int, int], int]) -> "RewritePoly":
        """Normal form of a sparse polynomial given as {(x, y, z) degrees: coefficient}."""
        if not terms:
            return self.zero()
        if self.nz == 1 and any(k[2] for k in terms):
            raise UsageError("the Suzuki ring has no z variable")
        X = max(k[0] for k in terms) + 1
        Y = max(k[1] for k in terms) + 1
        Z = max(k[2] for k in terms) + 1
        a = np.zeros((Y, Z, X), dtype=np.int64)
        for (i, j, l), c in terms.items():
            a[j, l, i] = (a[j, l, i] + c) % self.p
        return RewritePoly(self, self.reduce(a))

    @property
    def x(self) -> "RewritePoly":
        return self.monomial(1, 0, 0)

    @property
    def y(self) -> "RewritePoly":
        return self.monomial(0, 1, 0)

    @property
    def z(self) -> "RewritePoly":
        if self.nz == 1:
            raise UsageError("the Suzuki ring has no z variable")
        return self.monomial(0, 0, 1)

    @property
    def f(self) -> "RewritePoly":
        return self.monomial(self.q) - self.x

    # -- reduction ---------------------------------------------------------
    def _headroom(self, Y: int, Z: int) -> int:
        gy = max(d for d, _ in self.g_y)
        gz = max((d for d, _ in self.g_z), default=0)
        return ((Y - 1) // self.q + 1) * gy + ((Z - 1) // self.q + 1) * gz

    def reduce(self, a: np.ndarray) -> np.ndarray:
        """Normal form of a raw coefficient array of any shape [Y, Z, X]."""
        p, q = self.p, self.q
        Y, Z, X = a.shape
        if Y <= self.ny and Z <= self.nz:
            out = np.zeros((self.ny, self.nz, X), dtype=np.int64)
            out[:Y, :Z] = a % p
            return _trim(out)
        if Z > 1 and self.nz == 1:
            raise UsageError("z-degree in a ring without z")
        X2 = X + self._headroom(Y, Z)
        w = np.zeros((max(Y, self.ny), max(Z, self.nz), X2), dtype=np.int64)
        w[:Y, :Z, :X] = a
        for b in range(Y - 1, q - 1, -1):
            s = w[b] % p
            if not s.any():
                continue
            w[b] = 0
            w[b - q + 1] += s
            hi = _last_nonzero(s) + 1
            for d, c in self.g_y:
                w[b - q, :, d:d + hi] += c * s[:, :hi]
        if self.nz > 1:
            for b in range(Z - 1, q - 1, -1):
                s = w[:, b] % p
                if not s.any():
                    continue
                w[:, b] = 0
                w[:, b - q + 1] += s
                hi = _last_nonzero(s) + 1
                for d, c in self.g_z:
                    w[:, b - q, d:d + hi] += c * s[:, :hi]
        return _trim(w[: self.ny, : self.nz] % p)

    # -- bookkeeping -------------------------------------------------------
    def t_power(self, k: int) -> "RewritePoly":
        """t^k eliminated through t^m = x^q - x (requires m | k)."""
        if k % self.m:
            raise PreconditionError(f"t^{k} cannot be eliminated: m={self.m} does not divide {k}")
        return self.f ** (k // self.m)

    @cached_property
    def frobenius_powers(self) -> dict[str, list["RewritePoly"]]:
        """Normal forms of y^{q^j} (and z^{q^j}) for j = 0..3."""
        out = {"y": [self.y]}
        if self.nz > 1:
            out["z"] = [self.z]
        for key in out:
            for _ in range(3):
                out[key].append(out[key][-1] ** self.q)
        return out


def _last_nonzero(s: np.ndarray) -> int:
    nz = np.nonzero(s.reshape(-1, s.shape[-1]).any(axis=0))[0]
    return int(nz[-1]) if nz.size else -1


def _trim(a: np.ndarray) -> np.ndarray:
    last = _last_nonzero(a.reshape(-1, a.shape[-1]))
    return np.ascontiguousarray(a[:, :, : max(last + 1, 1)])


def _fast_len(n: int) -> int:
    """Smallest 2^a 3^b 5^c >= n (cheap FFT sizes)."""
    best = 1 << max(0, (n - 1).bit_length())
    f5 = 1
    while f5 < best:
        f35 = f5
        while f35 < best:
            f = f35
            while f < n:
                f *= 2
            best = min(best, f)
            f35 *= 3
        f5 *= 5
    return best


class RewritePoly:
    """A normal-form element of the coordinate ring of a RewriteSystem."""

    __slots__ = ("system", "c")

    def __init__(self, system: RewriteSystem, coeffs: np.ndarray):
        self.system = system
        self.c = coeffs

    # -- views -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.c.any()

    @property
    def nterms(self) -> int:
        return int(np.count_nonzero(self.c))

    @property
    def x_degree(self) -> int:
        return _last_nonzero(self.c.reshape(-1, self.c.shape[-1]))

    def terms(self) -> dict[tuple[int, int, int], int]:
        """Sparse view {(x, y, z) degrees: coefficient}."""
        ys, zs, xs = np.nonzero(self.c)
        return {(int(i), int(j), int(l)): int(self.c[j, l, i]) for j, l, i in zip(ys, zs, xs)}

    def __repr__(self):
        return f"RewritePoly({self.nterms} terms, x-degree {self.x_degree})"

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.system.const(other)
        if not isinstance(other, RewritePoly):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- arithmetic --------------------------------------------------------
    def _lift(self, other) -> "RewritePoly":
        if isinstance(other, RewritePoly):
            if other.system is not self.system:
                raise UsageError("operands belong to different rewrite systems")
            return other
        if isinstance(other, (int, np.integer)):
            return self.system.const(int(other))
        return NotImplemented

    def _combine(self, other, sign: int) -> "RewritePoly":
        o = self._lift(other)
        if o is NotImplemented:
            return o
        X = max(self.c.shape[2], o.c.shape[2])
        out = np.zeros(self.c.shape[:2] + (X,), dtype=np.int64)
        out[:, :, : self.c.shape[2]] += self.c
        out[:, :, : o.c.shape[2]] += sign * o.c
        return RewritePoly(self.system, _trim(out % self.system.p))

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return RewritePoly(self.system, (-self.c) % self.system.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RewritePoly(self.system, self.system.reduce(_raw_product(self.c, o.c, self.system.p)))

    __rmul__ = __mul__

    def frobenius(self) -> "RewritePoly":
        """self^p: stretch every exponent by p, then reduce."""
        p = self.system.p
        Y, Z, X = self.c.shape
        a = np.zeros((p * (Y - 1) + 1, p * (Z - 1) + 1, p * (X - 1) + 1), dtype=np.int64)
        a[::p, ::p, ::p] = self.c
        return RewritePoly(self.system, self.system.reduce(a))

    def __pow__(self, e: int) -> "RewritePoly":
        if e < 0:
            raise UsageError("negative powers are not defined in the coordinate ring")
        p = self.system.p
        result = None
        cur = self
        while e:
            e, d = divmod(e, p)
            for _ in range(d):
                result = cur if result is None else result * cur
            if e:
                cur = cur.frobenius()
        return result if result is not None else self.system.const(1)

    def pow_by_multiplication(self, e: int) -> "RewritePoly":
        """Square-and-multiply power (cross-check for the Frobenius route)."""
        result = self.system.const(1)
        sq = self
        while e:
            if e & 1:
                result = result * sq
            e >>= 1
            if e:
                sq = sq * sq
        return result


def _raw_product(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Unreduced product of two coefficient arrays (exact, entries mod p)."""
    if np.count_nonzero(a) > np.count_nonzero(b):
        a, b = b, a
    na = np.count_nonzero(a)
    shape = tuple(sa + sb - 1 for sa, sb in zip(a.shape, b.shape))
    if na == 0:
        return np.zeros(shape, dtype=np.int64)
    if na <= SHIFT_ADD_TERMS:
        out = np.zeros(shape, dtype=np.int64)
        Yb, Zb, Xb = b.shape
        for j, l, i in zip(*np.nonzero(a)):
            out[j:j + Yb, l:l + Zb, i:i + Xb] += a[j, l, i] * b
        return out % p
    # dense case: floating FFT convolution; entries are bounded by
    # min(nnz) * (p-1)^2, far inside the exactly representable range
    fshape = [_fast_len(s) for s in shape]
    fa = np.fft.rfftn(a.astype(np.float64), fshape, axes=(0, 1, 2))
    fb = np.fft.rfftn(b.astype(np.float64), fshape, axes=(0, 1, 2))
    raw = np.fft.irfftn(fa * fb, fshape, axes=(0, 1, 2))[: shape[0], : shape[1], : shape[2]]
    out = np.rint(raw)
    err = float(np.max(np.abs(raw - out))) if out.size else 0.0
    if err > 0.25:
        raise ArithmeticError(f"FFT rounding error {err} too large for an exact product")
    return out.astype(np.int64) % p


def normal_form(poly, system: RewriteSystem) -> RewritePoly:
    """Normal form of a RewritePoly, a sparse term dict or a raw coefficient array."""
    if isinstance(poly, RewritePoly):
        return RewritePoly(system, system.reduce(poly.c))
    if isinstance(poly, dict):
        return system.from_terms(poly)
    return RewritePoly(system, system.reduce(np.asarray(poly, dtype=np.int64)))


# -- algebras the identities are written against ---------------------------

W8_FORMS = ("printed", "quadric")


def _check_w8_form(w8_form: str) -> str:
    if w8_form not in W8_FORMS:
        raise UsageError(f"w8_form must be one of {W8_FORMS}")
    return w8_form


class SymbolicAlgebra:
    def __init__(self, system: RewriteSystem, w8_form: str = "printed"):
        self.system = system
        self.w8_form = _check_w8_form(w8_form)
        self.p, self.q, self.q0, self.m = system.p, system.q, system.q0, system.m
        self.x, self.y = system.x, system.y
        self.z = system.z if system.nz > 1 else None
        self.cache: dict[str, object] = {}

    def tpow(self, k: int):
        return self.system.t_power(k)


class FieldArray:
    """Vector of field elements with ring operators (numeric evaluation)."""

    __slots__ = ("field", "v")

    def __init__(self, fld: FieldDescriptor, v: np.ndarray):
        self.field = fld
        self.v = v

    def _lift(self, other):
        if isinstance(other, FieldArray):
            return other.v
        if isinstance(other, (int, np.integer)):
            return np.full(self.v.shape, self.field.from_digits([int(other) % self.field.p]), dtype=np.int64)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return FieldArray(self.field, self.field.vadd(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return FieldArray(self.field, self.field.vsub(self.v, o))

    def __rsub__(self, other):
        o = self._lift(other)
        return FieldArray(self.field, self.field.vsub(o, self.v))

    def __neg__(self):
        return FieldArray(self.field, self.field.vneg(self.v))

    def __mul__(self, other):
        o = self._lift(other)
        return FieldArray(self.field, self.field.vmul(self.v, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return FieldArray(self.field, self.field.vpow(self.v, e))


class NumericAlgebra:
    def __init__(self, spec: CurveSpec, fld: FieldDescriptor, points: dict[str, np.ndarray],
                 w8_form: str = "printed"):
        self.w8_form = _check_w8_form(w8_form)
        base = spec.base_family
        _, q0, m, _ = curves._base_constants(base, spec.q)
        self.p, self.q, self.q0, self.m = spec.p, spec.q, q0, m
        self.field = fld
        self.x = FieldArray(fld, points["x"])
        self.y = FieldArray(fld, points["y"])
        self.z = FieldArray(fld, points["z"]) if "z" in points else None
        self._t = FieldArray(fld, points["t"]) if "t" in points else None
        self.cover_exponent = spec.exponent if spec.is_cover else None
        self.cache: dict[str, object] = {}

    def tpow(self, k: int):
        if self._t is None:
            raise UsageError("identity involves t but the curve has no t coordinate")
        if self.cover_exponent != self.m:
            raise UsageError("t-identities are stated for the exponent-m cover")
        return self._t ** k


# -- the identities ---------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    name: str
    family: str
    description: str
    fn: Callable
    uses_t: bool = False


def _suzuki_functions(A) -> dict:
    if "z" not in A.cache:
        q0, x, y = A.q0, A.x, A.y
        z = y ** (2 * q0) + x ** (2 * q0 + 1)
        w = x * y ** (2 * q0) + z ** (2 * q0)
        A.cache.update(z=z, w=w, f=x ** A.q + x)
    return A.cache


def _ree_functions(A) -> dict:
    if "w1" not in A.cache:
        q0, x, y, z = A.q0, A.x, A.y, A.z
        k = 3 * q0
        w1 = x ** (k + 1) - y**k
        w2 = x * y**k - z**k
        w3 = x * z**k - w1**k
        w4 = x * w2**q0 - y * w1**q0
        v = x * w3**q0 - z * w1**q0
        w6 = v**k - w2**k + x * w4**k
        w7 = w2 + v
        if getattr(A, "w8_form", "printed") == "quadric":
            w8 = w2 * w2 - w1 * w3 - x * w6
        else:
            w8 = w6**k + x * w7**k
        A.cache.update(w1=w1, w2=w2, w3=w3, w4=w4, v=v, w6=w6, w7=w7, w8=w8, f=x**A.q - x)
    return A.cache


def _ree_A(A, i: int):
    key = f"A{i}"
    if key not in A.cache:
        W = _ree_functions(A)
        Q = A.q**i
        k = 3 * A.q0
        A.cache[key] = ((W["w7"] ** Q) ** k + (W["w4"] ** Q) ** k * A.x + (A.z**Q) ** k * W["w1"]
                        + (A.y**Q) ** k * W["w2"] + (A.x**Q) ** k * W["w3"] + W["w6"])
    return A.cache[key]


def _suz(name, desc, body, uses_t=False):
    return Identity(name, "suzuki", desc, body, uses_t)


def _ree(name, desc, body):
    return Identity(name, "ree", desc, body)


SUZUKI_IDENTITIES = [
    _suz("z-relation", "z^q + z = x^{2q0} (x^q + x)",
         lambda A: (lambda S: S["z"] ** A.q + S["z"] - A.x ** (2 * A.q0) * S["f"])(_suzuki_functions(A))),
    _suz("w-relation", "w^q + w = y^{2q0} (x^q + x)",
         lambda A: (lambda S: S["w"] ** A.q + S["w"] - A.y ** (2 * A.q0) * S["f"])(_suzuki_functions(A))),
    _suz("involution-lift", "w^{2q0} = w x^{2q0} + z y^{2q0}",
         lambda A: (lambda S: S["w"] ** (2 * A.q0) - S["w"] * A.x ** (2 * A.q0)
                    - S["z"] * A.y ** (2 * A.q0))(_suzuki_functions(A))),
    _suz("hermitian-embedding", "w^{q^2} + w + z^{q^2} x + x^{q^2} z = t^{q^2+1}",
         lambda A: (lambda S: S["w"] ** (A.q**2) + S["w"] + S["z"] ** (A.q**2) * A.x
                    + A.x ** (A.q**2) * S["z"] - A.tpow(A.q**2 + 1))(_suzuki_functions(A)),
         uses_t=True),
]


def _wqw(lhs: str, rhs: Callable[[object, dict], object], desc: str):
    def body(A):
        W = _ree_functions(A)
        return W[lhs] ** A.q - W[lhs] - rhs(A, W) * W["f"]
    return _ree(f"{lhs}-relation", desc, body)


REE_IDENTITIES = [
    _wqw("w1", lambda A, W: A.x ** (3 * A.q0), "w1^q - w1 = x^{3q0} (x^q - x)"),
    _wqw("w2", lambda A, W: A.y ** (3 * A.q0), "w2^q - w2 = y^{3q0} (x^q - x)"),
    _wqw("w3", lambda A, W: A.z ** (3 * A.q0), "w3^q - w3 = z^{3q0} (x^q - x)"),
    _wqw("w4", lambda A, W: (W["w2"] - A.x * W["w1"]) ** A.q0, "w4^q - w4 = (w2 - x w1)^{q0} (x^q - x)"),
    _wqw("w6", lambda A, W: W["w4"] ** (3 * A.q0), "w6^q - w6 = w4^{3q0} (x^q - x)"),
    _wqw("w8", lambda A, W: W["w7"] ** (3 * A.q0), "w8^q - w8 = w7^{3q0} (x^q - x)"),
    _ree("involution-lift", "w8^{3q0} = w8 w4^{3q0} - w6 w7^{3q0}",
         lambda A: (lambda W, k: W["w8"] ** k - W["w8"] * W["w4"] ** k + W["w6"] * W["w7"] ** k)(
             _ree_functions(A), 3 * A.q0)),
    _ree("A-1", "A_{-1} = -w8 - x w6 - w1 w3 + w2^2 = 0",
         lambda A: (lambda W: -W["w8"] - A.x * W["w6"] - W["w1"] * W["w3"] + W["w2"] * W["w2"])(
             _ree_functions(A))),
    _ree("A0-first", "x^{3q0} w3 - z^{3q0} w1 - w7^{3q0} + w2^{3q0} = 0",
         lambda A: (lambda W, k: A.x**k * W["w3"] - A.z**k * W["w1"] - W["w7"] ** k + W["w2"] ** k)(
             _ree_functions(A), 3 * A.q0)),
    _ree("A0-second", "w4^{3q0} x + z^{3q0} w1 - y^{3q0} w2 = 0",
         lambda A: (lambda W, k: W["w4"] ** k * A.x + A.z**k * W["w1"] - A.y**k * W["w2"])(
             _ree_functions(A), 3 * A.q0)),
    _ree("A0-third", "w4^{3q0} x + w7^{3q0} + w2^{3q0} - w6 = 0",
         lambda A: (lambda W, k: W["w4"] ** k * A.x + W["w7"] ** k + W["w2"] ** k - W["w6"])(
             _ree_functions(A), 3 * A.q0)),
    _ree("A0", "A_0 = 0", lambda A: _ree_A(A, 0)),
    _ree("B1", "B_1 = w4^q + w4 + z^q x + x^q z + y^{q+1} = 0",
         lambda A: (lambda W: W["w4"] ** A.q + W["w4"] + A.z**A.q * A.x + A.x**A.q * A.z
                    + A.y ** (A.q + 1))(_ree_functions(A))),
    _ree("B2", "B_2 = w4^{q^2} + w4 + z^{q^2} x + x^{q^2} z + y^{q^2+1} = -(x^q - x)^{q+2q0+1}",
         lambda A: (lambda W, Q: W["w4"] ** Q + W["w4"] + A.z**Q * A.x + A.x**Q * A.z
                    + A.y ** (Q + 1) + W["f"] ** (A.q + 2 * A.q0 + 1))(_ree_functions(A), A.q**2)),
    _ree("A1", "A_1 = 0", lambda A: _ree_A(A, 1)),
    _ree("A2", "A_2 = (x^q - x)^{3 q q0 + 2q + 3q0 + 1}",
         lambda A: _ree_A(A, 2) - _ree_functions(A)["f"] ** (3 * A.q * A.q0 + 2 * A.q + 3 * A.q0 + 1)),
]

IDENTITIES = {i.name: i for i in SUZUKI_IDENTITIES}
IDENTITIES.update({f"ree:{i.name}": i for i in REE_IDENTITIES})
IDENTITIES.update({f"suzuki:{i.name}": i for i in SUZUKI_IDENTITIES})


def get_identity(identity_id: str, family: str | None = None) -> Identity:
    key = identity_id
    if family is not None and ":" not in key:
        key = f"{family}:{identity_id}"
    if key not in IDENTITIES:
        raise UsageError(f"unknown identity {identity_id!r}")
    return IDENTITIES[key]


def identity_names(family: str) -> list[str]:
    return [i.name for i in (SUZUKI_IDENTITIES if family == "suzuki" else REE_IDENTITIES)]


@dataclass
class IdentityResult:
    name: str
    description: str
    passed: bool
    residual_terms: int
    seconds: float

    def payload(self) -> dict:
        return {"name": self.name, "description": self.description, "passed": self.passed,
                "residual_terms": self.residual_terms}


def _run_chain(family: str, q: int, perturb: str | None, w8_form: str = "printed") -> list[IdentityResult]:
    system = RewriteSystem(family, q)
    A = SymbolicAlgebra(system, w8_form)
    out = []
    for ident in (SUZUKI_IDENTITIES if family == "suzuki" else REE_IDENTITIES):
        t0 = time.perf_counter()
        res = ident.fn(A)
        if perturb == ident.name:
            res = res + 1
        out.append(IdentityResult(ident.name, ident.description, res.is_zero(), res.nterms,
                                  time.perf_counter() - t0))
    return out


def verify_suzuki_chain(q: int, perturb: str | None = None) -> list[IdentityResult]:
    """Reduce every Suzuki identity to normal form; ``perturb`` adds 1 to one of them."""
    p, a = curves.prime_power(q)
    if p != 2 or a % 2 == 0 or a < 3:
        raise PreconditionError(f"suzuki needs q = 2^(2s+1) with s >= 1, got {q}")
    s = (a - 1) // 2
    if s > 2:
        est = q * q * q**2
        raise PreconditionError(f"s={s} is beyond the supported range s <= 2 (dense size ~{est:.2e} coefficients)")
    return _run_chain("suzuki", q, perturb)


def verify_ree_chain(q: int, perturb: str | None = None, w8_form: str = "printed") -> list[IdentityResult]:
    """Reduce the Ree identity chain (supported for q = 27 only).

    ``w8_form="printed"`` uses w8 = w6^{3q0} + x w7^{3q0}; with it the w8
    relation, the involution lift and A-1 do not reduce to zero.
    ``w8_form="quadric"`` takes w8 = w2^2 - w1 w3 - x w6 instead, which
    satisfies both relations (A-1 then holds by construction).
    """
    if q != 27:
        size = q * q * q**3
        raise PreconditionError(f"the Ree chain is supported for q=27 only (q={q} needs ~{size:.2e} coefficients)")
    return _run_chain("ree", q, perturb, _check_w8_form(w8_form))


# -- numeric evaluation on curve points ---------------------------------------

def affine_points(spec: CurveSpec, e: int) -> tuple[FieldDescriptor, dict[str, np.ndarray]]:
    """All affine points of the curve over F_{q^e} (table fields only)."""
    p, a = curves.prime_power(spec.q)
    fld = get_field(p, a * e)
    if not fld.has_tables:
        raise PreconditionError("point lists need a table field (at most 2^21 elements)")
    xs = np.arange(fld.order, dtype=np.int64)
    pts = {"x": xs}

    def expand(rhs: np.ndarray, lhs_all: np.ndarray, name: str):
        order = np.argsort(lhs_all, kind="stable")
        srt = lhs_all[order]
        lo = np.searchsorted(srt, rhs, "left")
        cnt = np.searchsorted(srt, rhs, "right") - lo
        rep = np.repeat(np.arange(rhs.size), cnt)
        for key in list(pts):
            pts[key] = pts[key][rep]
        start = np.repeat(lo, cnt)
        offs = np.arange(rep.size) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        pts[name] = order[start + offs]

    for comp in components(spec.base_family, spec.q):
        lhs = fld.vadd(fld.vpow(xs, comp.qprime), fld.vscale(xs, comp.eps))
        x = pts["x"]
        rhs = fld.vpow(x, comp.x_power)
        if comp.use_f:
            rhs = fld.vmul(rhs, fld.vsub(fld.vpow(x, spec.q), x))
        expand(rhs, lhs, comp.name)
    if spec.family in ("cyclic-cover", "kummer-line"):
        x = pts["x"]
        expand(fld.vsub(fld.vpow(x, spec.q), x), fld.vpow(xs, spec.exponent), "t")
    return fld, pts


def evaluate_identity_at_points(identity_id: str, spec: CurveSpec, e: int,
                                perturb: bool = False, w8_form: str = "printed") -> tuple[int, int]:
    """(violations, points checked): nonzero values of LHS - RHS on affine points."""
    base = spec.base_family
    if base not in ("suzuki", "ree"):
        raise UnsupportedError("identities are defined on the suzuki and ree curves")
    ident = get_identity(identity_id, base)
    if ident.family != base:
        raise UsageError(f"identity {identity_id!r} belongs to the {ident.family} curve")
    fld, pts = affine_points(spec, e)
    A = NumericAlgebra(spec, fld, pts, w8_form)
    res = ident.fn(A)
    if perturb:
        res = res + 1
    return int(np.count_nonzero(res.v)), int(pts["x"].size)


def size_estimate(family: str, q: int) -> int:
    """Rough dense coefficient count of the largest chain intermediate."""
    nz = q if family == "ree" else 1
    return q * nz * q ** (3 if family == "ree" else 2)


__all__ = [
    "RewriteSystem", "RewritePoly", "normal_form", "verify_suzuki_chain", "verify_ree_chain",
    "evaluate_identity_at_points", "affine_points", "get_identity", "identity_names",
    "IdentityResult", "W8_FORMS",
]
