"""Univariate polynomials over F_p and the deterministic modulus search.

Polynomials are plain lists of coefficients, lowest degree first.  Moduli
are reported the other way round, as the tuple (c_{n-1}, ..., c_0) of the
non-leading coefficients of a monic polynomial, because that is the order in
which "lexicographically least" is defined.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from ..errors import PreconditionError


def trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def poly_eval(f: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def monic_from_tuple(coeffs: tuple[int, ...]) -> list[int]:
    """(c_{n-1},...,c_0) -> low-first coefficient list of the monic polynomial."""
    return list(reversed(coeffs)) + [1]


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Irreducibility over F_p of the monic polynomial with the given tail."""
    return bool(gf_irreducible_p([1, *coeffs], p, ZZ))


@lru_cache(maxsize=None)
def find_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree n over F_p.

    Returns the coefficient tuple (c_{n-1}, ..., c_0); the scan runs through
    ``itertools.product`` order, which is lexicographic on that tuple.
    """
    if not isprime(p):
        raise PreconditionError(f"characteristic must be prime, got {p}")
    if n < 1:
        raise PreconditionError(f"extension degree must be >= 1, got {n}")
    for coeffs in itertools.product(range(p), repeat=n):
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("unreachable: irreducibles exist in every degree")


def format_poly(coeffs: tuple[int, ...], var: str = "T") -> str:
    """Human-readable form of a monic modulus tail, e.g. (1, 1) -> 'T^2 + T + 1'."""
    n = len(coeffs)
    terms = [f"{var}^{n}" if n > 1 else var]
    for i, c in enumerate(coeffs):
        deg = n - 1 - i
        if c == 0:
            continue
        mono = "" if deg == 0 else (var if deg == 1 else f"{var}^{deg}")
        if deg == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms)
