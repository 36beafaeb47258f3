"""Numerical semigroups generated by finitely many pole orders."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import DomainError, UsageError


def membership(generators, limit: int) -> np.ndarray:
    """Boolean array M with M[n] true iff n in <generators>, for 0 <= n < limit.

    Processed in blocks of length min(generators): every entry of a block
    depends only on earlier blocks, so each block is one vectorized OR.
    """
    gens = sorted(set(int(g) for g in generators))
    a = gens[0]
    M = np.zeros(limit, dtype=bool)
    M[0] = True
    for start in range(1, limit, a):
        stop = min(start + a, limit)
        block = M[start:stop]
        for g in gens:
            lo = start - g
            if lo + (stop - start) <= 0:
                continue
            src_lo = max(lo, 0)
            block[src_lo - lo:] |= M[src_lo:stop - g]
    return M


@dataclass
class NumericalSemigroup:
    generators: tuple
    gaps: list = field(repr=False)
    frobenius: int
    conductor: int

    @property
    def genus(self) -> int:
        return len(self.gaps)

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        return n >= self.conductor or n not in set(self.gaps)

    @classmethod
    def generated_by(cls, generators) -> "NumericalSemigroup":
        gens = sorted(set(int(g) for g in generators))
        if not gens:
            raise UsageError("a numerical semigroup needs at least one generator")
        if gens[0] <= 0:
            raise UsageError("generators must be positive integers")
        if reduce(math.gcd, gens) != 1:
            raise DomainError(f"gcd of generators is {reduce(math.gcd, gens)}: infinitely many gaps")
        a = gens[0]
        # grow the window until a run of `a` consecutive members appears;
        # from there on everything is a member
        limit = max(4 * a, 64)
        while True:
            M = membership(gens, limit)
            run = np.convolve(M.astype(np.int64), np.ones(a, dtype=np.int64), mode="valid")
            full = np.nonzero(run == a)[0]
            if full.size:
                conductor = int(full[0])
                break
            limit *= 2
        gaps = np.nonzero(~M[:conductor])[0].tolist()
        return cls(tuple(gens), gaps, conductor - 1, conductor)

    def memory_bytes(self) -> int:
        return self.conductor + min(self.generators)


def semigroup_invariants(generators) -> tuple[int, int, int]:
    """(genus, Frobenius number, conductor) of the semigroup generated by ``generators``."""
    S = NumericalSemigroup.generated_by(generators)
    return S.genus, S.frobenius, S.conductor


def naive_membership(generators, limit: int) -> list[bool]:
    """Coin-problem recursion, kept simple as an oracle for tests."""
    gens = sorted(set(generators))
    out = [False] * limit
    for n in range(limit):
        out[n] = n == 0 or any(g <= n and out[n - g] for g in gens)
    return out
