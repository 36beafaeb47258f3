"""Numba enumeration kernel: local solution counts summed over a code range.

For each x in [start, stop) of a tower field (packed slots, see ff.tower)
the kernel forms f = x^q - x, evaluates every Artin-Schreier right-hand side
x^a * f^b, tests image membership with precomputed F_p-linear functionals and
multiplies kernel sizes.  Where the product is nonzero it runs the Kummer
residue tests for all requested exponents at once.

out layout (nk = number of Kummer exponents):
    out[0]              base affine count
    out[1 + i]          cover affine count for exponent i
    out[1 + nk + i]     points of the base over x not in F_q whose fiber does not split
    out[1 + 2 nk + i]   number of such x
"""

from __future__ import annotations

import numba
import numpy as np

from .ff.tower import (nb_decode, nb_equal, nb_frob, nb_is_one, nb_is_zero, nb_mul, nb_pow,
                       nb_set_one, nb_sub)

MODE_NORM_LOG = 0
MODE_SUBFIELD = 1
MODE_POWER = 2


@numba.njit(cache=True, nogil=True)
def count_range(start, stop, F, qexp, comp_digits, comp_use_f, comp_ftab, comp_nrows, comp_ker,
                kum_r, kum_g, kum_mode, kum_c, kum_e, out):
    p, k, B, b, exp, log, pack, unpack, bfrob, rel, tau = F
    ncomp = comp_digits.shape[0]
    ndig = comp_digits.shape[1]
    nk = kum_r.shape[0]
    X = np.zeros(k, dtype=np.int64)
    Xq = np.zeros(k, dtype=np.int64)
    Fv = np.zeros(k, dtype=np.int64)
    rhs = np.zeros(k, dtype=np.int64)
    frs = np.zeros((ndig, k), dtype=np.int64)
    have = np.zeros(ndig, dtype=np.bool_)
    h = np.zeros(k, dtype=np.int64)
    h2 = np.zeros(k, dtype=np.int64)
    sq = np.zeros(k, dtype=np.int64)
    tmp = np.zeros(2 * k, dtype=np.int64)
    base = 0
    cover = np.zeros(nk, dtype=np.int64)
    vpts = np.zeros(nk, dtype=np.int64)
    vx = np.zeros(nk, dtype=np.int64)
    for code in range(start, stop):
        nb_decode(code, X, k, B, pack)
        if qexp == 0:
            for j in range(k):
                Xq[j] = X[j]
        else:
            nb_frob(X, qexp, Xq, p, b, k, exp, log, bfrob, tau)
        nb_sub(Xq, X, Fv, p, b, k)
        prod = 1
        for i in range(ndig):
            have[i] = False
        for c in range(ncomp):
            # rhs = x^a (digits of a in base p), times f if requested
            first = True
            for i in range(ndig):
                d = comp_digits[c, i]
                if d == 0:
                    continue
                if not have[i]:
                    if i == 0:
                        for j in range(k):
                            frs[i, j] = X[j]
                    else:
                        nb_frob(X, i, frs[i], p, b, k, exp, log, bfrob, tau)
                    have[i] = True
                for _ in range(d):
                    if first:
                        for j in range(k):
                            rhs[j] = frs[i, j]
                        first = False
                    else:
                        nb_mul(rhs, frs[i], rhs, tmp, p, b, k, exp, log, rel)
            if first:
                nb_set_one(rhs, k)
            if comp_use_f[c]:
                nb_mul(rhs, Fv, rhs, tmp, p, b, k, exp, log, rel)
            ok = True
            for r in range(comp_nrows[c]):
                s = 0
                for i in range(k):
                    s += comp_ftab[c, r, i, rhs[i]]
                if s % p != 0:
                    ok = False
                    break
            if not ok:
                prod = 0
                break
            prod *= comp_ker[c]
        if prod == 0:
            continue
        base += prod
        if nk == 0:
            continue
        if nb_is_zero(Fv, k):
            for i in range(nk):
                cover[i] += prod
            continue
        for i in range(nk):
            mode = kum_mode[i]
            g = kum_g[i]
            if mode == 0:
                # norm to the base field, then a discrete-log test there
                for j in range(k):
                    h[j] = Fv[j]
                for j in range(1, k):
                    nb_frob(Fv, b * j, h2, p, b, k, exp, log, bfrob, tau)
                    nb_mul(h, h2, h, tmp, p, b, k, exp, log, rel)
                res = log[h[0]] % g == 0
            elif mode == 1:
                nb_pow(Fv, kum_e[i], h, sq, tmp, p, b, k, exp, log, rel)
                nb_frob(h, kum_c[i], h2, p, b, k, exp, log, bfrob, tau)
                res = nb_equal(h, h2, k)
            else:
                nb_pow(Fv, kum_e[i], h, sq, tmp, p, b, k, exp, log, rel)
                res = nb_is_one(h, k)
            if res:
                cover[i] += prod * g
                if g != kum_r[i]:
                    vpts[i] += prod
                    vx[i] += 1
            else:
                vpts[i] += prod
                vx[i] += 1
    out[0] = base
    for i in range(nk):
        out[1 + i] = cover[i]
        out[1 + nk + i] = vpts[i]
        out[1 + 2 * nk + i] = vx[i]
