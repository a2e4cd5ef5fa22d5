"""Numba kernels for the sieve hot loops.

Signatures and results match numpy_impl exactly; the facade in __init__
picks one implementation at import time. Everything is nopython-compiled.
Primes must stay below 2**31 so squares fit in int64.
"""

from __future__ import annotations

import numba as nb
import numpy as np

njit_kwargs = {"cache": True, "nogil": True}


@nb.njit(**njit_kwargs)
def primes_up_to(n):
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=np.bool_)
    sieve[0] = False
    sieve[1] = False
    i = 2
    while i * i <= n:
        if sieve[i]:
            sieve[i * i:: i] = False
        i += 1
    count = 0
    for k in range(2, n + 1):
        if sieve[k]:
            count += 1
    out = np.empty(count, dtype=np.int64)
    j = 0
    for k in range(2, n + 1):
        if sieve[k]:
            out[j] = k
            j += 1
    return out


@nb.njit(**njit_kwargs)
def fill_multiplicative(n, primes, pp_ptr, pp_n, pp_val):
    vals = np.ones(n + 1, dtype=np.int64)
    vals[0] = 0
    spf = np.zeros(n + 1, dtype=np.int32)
    for i in range(primes.shape[0]):
        p = primes[i]
        for m in range(p, n + 1, p):
            if spf[m] == 0:
                spf[m] = np.int32(p)
    for k in range(pp_n.shape[0]):
        vals[pp_n[k]] = pp_val[k]
    for m in range(2, n + 1):
        p = np.int64(spf[m])
        if p == m:
            continue
        q = p
        rest = m // p
        while rest % p == 0:
            q *= p
            rest //= p
        if rest > 1:
            # q = p^(v_p(m)) was scattered above; rest < m is already final
            vals[m] = vals[q] * vals[rest]
    return vals


@nb.njit(**njit_kwargs)
def _powmod(b, e, m):
    r = np.int64(1)
    b = b % m
    if b < 0:
        b += m
    while e > 0:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


@nb.njit(**njit_kwargs)
def kronecker_over_primes(big_d, primes):
    out = np.zeros(primes.shape[0], dtype=np.int8)
    for i in range(primes.shape[0]):
        p = primes[i]
        if p == 2:
            if big_d % 2 != 0:
                m8 = big_d % 8
                out[i] = 1 if (m8 == 1 or m8 == 7) else -1
            continue
        r = big_d % p
        if r < 0:
            r += p
        if r == 0:
            out[i] = 0
        else:
            res = _powmod(r, (p - 1) >> 1, p)
            out[i] = 1 if res == 1 else -1
    return out


# --- polynomial helpers over GF(p), flat int64 arrays with explicit degrees

@nb.njit(**njit_kwargs)
def _pmod(a, da, m, dm, p):
    # reduce a (degree da) by monic m in place; returns the new degree
    for i in range(da, dm - 1, -1):
        c = a[i] % p
        a[i] = 0
        if c != 0:
            off = i - dm
            for j in range(dm):
                a[off + j] = (a[off + j] - c * m[j]) % p
    # entries above da were never written when da < dm - 1
    d = da if da < dm - 1 else dm - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


@nb.njit(**njit_kwargs)
def _pmulmod(a, da, b, db, m, dm, p, out):
    # out = a*b mod m; returns the degree of out
    for i in range(da + db + 1):
        out[i] = 0
    for i in range(da + 1):
        ai = a[i]
        if ai != 0:
            for j in range(db + 1):
                out[i + j] = (out[i + j] + ai * b[j]) % p
    return _pmod(out, da + db, m, dm, p)


@nb.njit(**njit_kwargs)
def _pgcd(a, da, b, db, p):
    # monic gcd; a and b are destroyed, the result lands in a
    while db >= 0:
        inv = _powmod(b[db], p - 2, p)
        for i in range(da, db - 1, -1):
            c = a[i] * inv % p
            a[i] = 0
            if c != 0:
                off = i - db
                for j in range(db):
                    a[off + j] = (a[off + j] - c * b[j]) % p
        d = db - 1
        while d >= 0 and a[d] == 0:
            d -= 1
        # swap roles
        t = a
        a = b
        b = t
        da = db
        db = d
    if da >= 0 and a[da] != 1:
        inv = _powmod(a[da], p - 2, p)
        for i in range(da + 1):
            a[i] = a[i] * inv % p
    return a, da


@nb.njit(**njit_kwargs)
def _pdiv_monic(a, da, b, db, p, q):
    # q = a // b for monic b dividing a exactly; a is destroyed
    for i in range(da, db - 1, -1):
        c = a[i]
        q[i - db] = c
        if c != 0:
            off = i - db
            for j in range(db + 1):
                a[off + j] = (a[off + j] - c * b[j]) % p
    return da - db


@nb.njit(**njit_kwargs)
def ddf_degree_census(coeffs, primes):
    n = coeffs.shape[0] - 1
    out = np.zeros((primes.shape[0], n), dtype=np.int16)
    size = 2 * n + 2
    g = np.zeros(size, dtype=np.int64)
    h = np.zeros(size, dtype=np.int64)
    hp = np.zeros(size, dtype=np.int64)
    u = np.zeros(size, dtype=np.int64)
    v = np.zeros(size, dtype=np.int64)
    w = np.zeros(size, dtype=np.int64)
    tmp = np.zeros(2 * size, dtype=np.int64)
    q = np.zeros(size, dtype=np.int64)
    for idx in range(primes.shape[0]):
        p = primes[idx]
        for i in range(size):
            g[i] = 0
            h[i] = 0
        for i in range(n + 1):
            c = coeffs[i] % p
            g[i] = c + p if c < 0 else c
        dg = n
        if dg == 1:
            out[idx, 0] += 1
            continue
        h[1] = 1
        dh = 1
        d = 0
        while dg >= 2 * (d + 1):
            d += 1
            # h = h^p mod g by square and multiply
            for i in range(size):
                hp[i] = h[i]
                u[i] = 0
            dhp = dh
            u[0] = 1
            du = 0
            e = p
            while e > 0:
                if e & 1:
                    du = _pmulmod(u, du, hp, dhp, g, dg, p, tmp)
                    for i in range(du + 1):
                        u[i] = tmp[i]
                    for i in range(du + 1, size):
                        u[i] = 0
                e >>= 1
                if e > 0:
                    dhp = _pmulmod(hp, dhp, hp, dhp, g, dg, p, tmp)
                    for i in range(dhp + 1):
                        hp[i] = tmp[i]
                    for i in range(dhp + 1, size):
                        hp[i] = 0
            for i in range(size):
                h[i] = u[i] if i <= du else 0
            dh = du
            # gcd(h - x, g)
            for i in range(size):
                u[i] = h[i] if i <= dh else 0
                v[i] = g[i] if i <= dg else 0
            u[1] = (u[1] - 1) % p
            du2 = dh if dh > 1 else 1
            while du2 >= 0 and u[du2] == 0:
                du2 -= 1
            c_arr, dc = _pgcd(u, du2, v, dg, p)
            if dc > 0:
                out[idx, d - 1] += np.int16(dc // d)
                # _pgcd may hand back either scratch buffer, so park the
                # gcd in w before reusing v as the dividend copy
                for i in range(size):
                    w[i] = c_arr[i] if i <= dc else 0
                for i in range(size):
                    v[i] = g[i] if i <= dg else 0
                dq = _pdiv_monic(v, dg, w, dc, p, q)
                dg = dq
                for i in range(size):
                    g[i] = q[i] if i <= dg else 0
                    q[i] = 0
                if dg == 0:
                    break
                dh = _pmod(h, max(dh, dg), g, dg, p)
                if dh < 0:
                    dh = 0
        if dg > 0:
            out[idx, dg - 1] += 1
    return out
