"""Ideal counting and relatively r-prime tuple counting.

The fast path evaluates the Moebius sum grouped by norm,

    V_m^r(x) = sum over k <= x^(1/r) of m(k) * I_K(x / k^r)^m,

an exact rewrite of the per-ideal inclusion-exclusion because I_K depends
only on the norm. The brute-force oracle never touches the m(k) table: it
enumerates every ideal up to x, records which prime-ideal slots appear
with valuation >= r, and counts tuples whose slot sets have empty
intersection. The two paths share no counting logic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OracleBoundExceeded, OutOfRange, UsageError
from .multsieve import CoeffTable
from .numberfield import FieldDescriptor, splitting_type

ORACLE_BOUND = 10 ** 4
_TUPLE_BUDGET = 10 ** 8


@dataclass(frozen=True)
class CountResult:
    """One evaluation point: counts, main term, and the exact residual."""

    x: float
    I: int
    V: int
    main: float
    E: float
    m: int
    r: int


@dataclass(frozen=True)
class IdealHandle:
    """Oracle-side ideal: factorization over (prime, slot, exponent).

    Slots index the prime ideals above p in splitting_type order, so the
    norm is the product of p^(f_slot * exponent) over the factors.
    """

    factorization: tuple
    norm: int


def ideal_count(K: FieldDescriptor, table: CoeffTable, x) -> int:
    """I_K(x): ideals of norm <= x, by prefix-sum lookup."""
    if x < 1 or x > table.N:
        raise OutOfRange(x, table.N)
    return int(table.A[math.floor(x)])


def _iroot(n: int, r: int) -> int:
    """Largest k with k^r <= n."""
    if r == 1:
        return n
    k = int(round(n ** (1.0 / r)))
    while k > 0 and k ** r > n:
        k -= 1
    while (k + 1) ** r <= n:
        k += 1
    return k


def count_rprime(K: FieldDescriptor, table: CoeffTable, x, m: int, r: int) -> int:
    """V_m^r(x, K) exactly, via the norm-grouped Moebius sum."""
    if m < 1 or r < 1:
        raise UsageError(f"m and r must be positive, got m={m}, r={r}")
    if x < 1:
        raise OutOfRange(x, table.N)
    if m == 1 and r == 1:
        return 1
    fx = math.floor(x)
    if fx > table.N:
        raise OutOfRange(x, table.N)
    kmax = _iroot(fx, r)
    ks = np.arange(1, kmax + 1, dtype=np.int64)
    quo = fx // ks ** r
    mv = table.m[ks]
    Av = table.A[quo]
    # every partial sum is bounded by sum|m(k)| * A(x)^m; stay in int64
    # only when that fits, else fall back to exact big-int accumulation
    bound = int(np.abs(mv).sum()) * int(table.A[fx]) ** m
    if bound < 2 ** 62:
        return int(np.sum(mv * Av ** m))
    total = 0
    for k in range(kmax):
        total += int(mv[k]) * int(Av[k]) ** m
    return total


def enumerate_ideals(K: FieldDescriptor, x, bound: int = ORACLE_BOUND):
    """Every ideal of norm <= x exactly once, sorted by norm.

    Built by crossing local prime-power combinations over all primes
    p <= x, with norms capped at each step.
    """
    if x > bound:
        raise OracleBoundExceeded(
            f"enumeration up to x = {x} exceeds the oracle bound {bound}"
        )
    if x < 1:
        return []
    fx = math.floor(x)
    ideals = [(1, ())]
    p = 2
    while p <= fx:
        st = splitting_type(K, p)
        combos = [(1, ())]
        for slot, f in enumerate(st.residue_degrees):
            q = p ** f
            if q > fx:
                continue
            grown = []
            for nm, fac in combos:
                val = nm
                exp = 0
                while val <= fx:
                    grown.append(
                        (val, fac + ((p, slot, exp),) if exp else fac)
                    )
                    exp += 1
                    val *= q
            combos = grown
        if len(combos) > 1:
            merged = []
            for ln, lfac in combos:
                for nm, fac in ideals:
                    if nm * ln <= fx:
                        merged.append((nm * ln, fac + lfac))
            ideals = merged
        p += 1
        while p <= fx and not _is_prime_small(p):
            p += 1
    ideals.sort()
    return [IdealHandle(factorization=fac, norm=nm) for nm, fac in ideals]


def _is_prime_small(n: int) -> bool:
    if n < 4:
        return n > 1
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _slot_masks(K: FieldDescriptor, handles, X: int, r: int):
    """Per-ideal bitmasks over slots that can reach valuation r within X.

    Returns (masks, norms): masks is uint64 of shape (len(handles), lanes),
    bit t set when the ideal has valuation >= r at trigger slot t.
    """
    trigger = {}
    p = 2
    while p ** r <= X:
        if _is_prime_small(p):
            st = splitting_type(K, p)
            for slot, f in enumerate(st.residue_degrees):
                if (p ** f) ** r <= X:
                    trigger[(p, slot)] = len(trigger)
        p += 1
    lanes = max(1, -(-len(trigger) // 64))
    masks = np.zeros((len(handles), lanes), dtype=np.uint64)
    norms = np.empty(len(handles), dtype=np.int64)
    for i, h in enumerate(handles):
        norms[i] = h.norm
        for p, slot, exp in h.factorization:
            if exp >= r:
                # q^r divides the norm, so the slot is always registered
                t = trigger[(p, slot)]
                masks[i, t >> 6] |= np.uint64(1 << (t & 63))
    return masks, norms


def brute_force_rprime_series(K: FieldDescriptor, X: int, m: int, r: int):
    """Oracle V_m^r(x, K) for every integer x in 0..X, one enumeration.

    A tuple is relatively r-prime unless some slot carries valuation >= r
    in all m components; each good tuple lands in the histogram at its
    max component norm, and the running sum gives the series.
    """
    if m < 1 or r < 1:
        raise UsageError(f"m and r must be positive, got m={m}, r={r}")
    X = math.floor(X)
    handles = enumerate_ideals(K, X)
    n_ideals = len(handles)
    if n_ideals ** m > _TUPLE_BUDGET:
        raise OracleBoundExceeded(
            f"{n_ideals}^{m} tuples exceed the oracle budget {_TUPLE_BUDGET}"
        )
    hist = np.zeros(X + 1, dtype=np.int64)
    if n_ideals:
        masks, norms = _slot_masks(K, handles, X, r)
        lanes = masks.shape[1]
        cur_and = masks
        cur_max = norms
        remaining = m - 1
        while remaining and len(cur_and) * n_ideals * lanes <= 2 ** 22:
            cur_and = (cur_and[:, None, :] & masks[None, :, :]).reshape(
                -1, lanes
            )
            cur_max = np.maximum(cur_max[:, None], norms[None, :]).reshape(-1)
            remaining -= 1
        hist = _stream_levels(cur_and, cur_max, masks, norms, remaining, hist)
    return np.cumsum(hist)


def _stream_levels(cur_and, cur_max, masks, norms, remaining, hist):
    """Finish the tuple count, streaming the last levels block-wise."""
    if remaining == 0:
        good = ~cur_and.any(axis=1)
        if good.any():
            hist += np.bincount(cur_max[good], minlength=len(hist))
        return hist
    block = max(1, 2 ** 22 // max(1, len(masks) * masks.shape[1]))
    for lo in range(0, len(cur_and), block):
        a = cur_and[lo : lo + block]
        mx = cur_max[lo : lo + block]
        nxt_and = (a[:, None, :] & masks[None, :, :]).reshape(
            -1, masks.shape[1]
        )
        nxt_max = np.maximum(mx[:, None], norms[None, :]).reshape(-1)
        hist = _stream_levels(nxt_and, nxt_max, masks, norms, remaining - 1, hist)
    return hist


def brute_force_rprime(K: FieldDescriptor, x, m: int, r: int) -> int:
    """Oracle count at a single x; same machinery as the series."""
    if x < 1:
        raise OutOfRange(x, ORACLE_BOUND)
    series = brute_force_rprime_series(K, math.floor(x), m, r)
    return int(series[-1])
