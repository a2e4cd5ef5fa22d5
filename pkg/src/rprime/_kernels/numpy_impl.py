"""Pure-numpy kernel implementations.

Reference semantics for the numba kernels and the fallback path when numba
is unavailable or disabled via RPRIME_NO_NUMBA=1. Same signatures as
numba_impl; results must be bit-identical.
"""

from __future__ import annotations

import numpy as np

from .. import _poly


def primes_up_to(n):
    """Ascending int64 array of primes <= n."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def fill_multiplicative(n, primes, pp_ptr, pp_n, pp_val):
    """Multiplicative completion: vals[k] = prod over p^j || k of pp values.

    Args:
        n: table bound.
        primes: primes <= n, ascending.
        pp_ptr: int64 CSR offsets, one row per prime.
        pp_n: prime powers p^1..p^jmax <= n, ascending within a row.
        pp_val: value assigned at each prime power.

    Returns:
        int64 array vals[0..n] with vals[0] = 0, vals[1] = 1.
    """
    vals = np.ones(n + 1, dtype=np.int64)
    vals[0] = 0
    for i in range(len(primes)):
        p = int(primes[i])
        lo, hi = int(pp_ptr[i]), int(pp_ptr[i + 1])
        row = pp_val[lo:hi]
        fac = np.full(n // p, row[0], dtype=np.int64)
        stride = 1
        for j in range(1, hi - lo):
            stride *= p
            # multiples of p^(j+1) sit at every stride-th slot of the
            # multiples-of-p array
            fac[stride - 1:: stride] = row[j]
        vals[p:: p] *= fac
    return vals


def _powmod_vec(base, exp, mod):
    # element-wise pow(base, exp, mod); mod < 2**31 keeps products in int64
    result = np.ones_like(mod)
    b = np.remainder(base, mod)
    e = exp.copy()
    while e.max(initial=0) > 0:
        odd = (e & 1).astype(bool)
        result[odd] = result[odd] * b[odd] % mod[odd]
        b = b * b % mod
        e >>= 1
    return result


def kronecker_over_primes(big_d, primes):
    """int8 array of the Kronecker symbol (big_d | p) per prime."""
    assert len(primes) == 0 or int(primes[-1]) < 2 ** 31
    out = np.zeros(len(primes), dtype=np.int8)
    if len(primes) == 0:
        return out
    start = 0
    if primes[0] == 2:
        if big_d % 2 != 0:
            out[0] = 1 if big_d % 8 in (1, 7) else -1
        start = 1
    odd = primes[start:]
    if len(odd):
        r = np.remainder(big_d, odd)
        res = _powmod_vec(r, (odd - 1) >> 1, odd)
        chi = np.zeros(len(odd), dtype=np.int8)
        chi[res == 1] = 1
        chi[res == odd - 1] = -1
        out[start:] = chi
    return out


def ddf_degree_census(coeffs, primes):
    """Factor-degree censuses of a monic integer polynomial mod many primes.

    Only valid for primes not dividing disc(f) (callers route ramified primes
    through the scalar path). Returns int16 matrix c with c[i, d-1] = number
    of irreducible factors of degree d of f mod primes[i].
    """
    deg = len(coeffs) - 1
    out = np.zeros((len(primes), deg), dtype=np.int16)
    ints = [int(c) for c in coeffs]
    for i in range(len(primes)):
        p = int(primes[i])
        fbar = [c % p for c in ints]
        for d, count in _poly.gf_distinct_degree(fbar, p):
            out[i, d - 1] += count
    return out
