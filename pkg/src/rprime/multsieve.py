"""Coefficient tables of zeta_K and its reciprocal by multiplicative sieving.

A complete table up to N holds a(n), the number of ideals of norm n, the
norm-grouped Moebius values m(n), and the prefix sums A(n). Both a and m
are multiplicative, so one pass with per-prime-power local values fills
everything. Local values come from the splitting type: the Euler factor of
zeta_K at p is a product of (1 - t^{f_i})^{-1} over the primes above p,
and the reciprocal flips each factor.

m is not supported on squarefree integers. Over Q(i) the two primes of
norm 5 give m(25) = +1, so any squarefree shortcut corrupts downstream
counts; every prime power up to N is sieved.
"""

from __future__ import annotations

import hashlib
import os
import struct
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CacheCorrupt, CapacityError, UsageError
from .numberfield import FieldDescriptor, SplittingType, splitting_type

# beyond this the three 64-bit arrays approach multi-gigabyte territory
CAPACITY_BUDGET = 1 << 27

_CACHE_MAGIC = b"RPRMTBL1"
_CACHE_VERSION = 1


@dataclass(frozen=True)
class CoeffTable:
    """Immutable coefficient table for one field up to bound N.

    Arrays have length N + 1 and are indexed by n directly; slot 0 is 0.
    Coefficients are 64-bit signed, which is ample here: a(n) is bounded
    by the divisor function to the field degree and |m(n)| never exceeds
    a(n) at desk scales.
    """

    N: int
    a: np.ndarray
    m: np.ndarray
    A: np.ndarray

    def __post_init__(self):
        for arr in (self.a, self.m, self.A):
            arr.setflags(write=False)

    def __repr__(self):
        return f"CoeffTable(N={self.N})"


def local_coeffs(st: SplittingType, pk_budget: int):
    """Coefficients of the Euler factor at one prime, up to exponent k.

    Returns (a, m) as lists indexed by j = 0..pk_budget, holding the
    values at p^j. Only the residue degrees f_i enter: prime ideal norms
    drive the series, ramification exponents do not.
    """
    if pk_budget < 0:
        raise UsageError("pk_budget must be nonnegative")
    k = pk_budget
    a = [0] * (k + 1)
    a[0] = 1
    m = [0] * (k + 1)
    m[0] = 1
    for f in st.residue_degrees:
        if f > k:
            continue
        # multiply the a-series by 1/(1 - t^f) and the m-series by (1 - t^f)
        for j in range(f, k + 1):
            a[j] += a[j - f]
        for j in range(k, f - 1, -1):
            m[j] -= m[j - f]
    return a, m


def _powers_up_to(p: int, n: int):
    out = []
    q = p
    while q <= n:
        out.append(q)
        q *= p
    return out


def _prime_power_values(K: FieldDescriptor, N: int):
    """CSR arrays (primes, pp_ptr, pp_n, pp_a, pp_m) for all primes <= N.

    Primes with p^2 <= N or p ramified go through the per-prime local DP.
    The rest contribute only p itself, where a(p) is the number of
    degree-one primes above p and m(p) = -a(p); those are batch-computed
    by kernel (Kronecker symbols for quadratic fields, a distinct-degree
    census of the defining polynomial otherwise).
    """
    primes = _kernels.primes_up_to(N)
    n_p = len(primes)
    ramified = set(K.ramified_primes)
    small = (primes.astype(np.int64) ** 2 <= N) | np.isin(
        primes, np.array(sorted(ramified), dtype=np.int64)
    )

    counts = np.ones(n_p, dtype=np.int64)
    local = {}
    for i in np.nonzero(small)[0].tolist():
        p = int(primes[i])
        powers = _powers_up_to(p, N)
        a_loc, m_loc = local_coeffs(splitting_type(K, p), len(powers))
        local[i] = (powers, a_loc[1:], m_loc[1:])
        counts[i] = len(powers)

    pp_ptr = np.zeros(n_p + 1, dtype=np.int64)
    np.cumsum(counts, out=pp_ptr[1:])
    total = int(pp_ptr[-1])
    pp_n = np.zeros(total, dtype=np.int64)
    pp_a = np.zeros(total, dtype=np.int64)
    pp_m = np.zeros(total, dtype=np.int64)

    large_idx = np.nonzero(~small)[0]
    if len(large_idx):
        large = primes[large_idx]
        if K.kind == "rational":
            a_large = np.ones(len(large), dtype=np.int64)
        elif K.kind == "quadratic":
            chi = _kernels.kronecker_over_primes(
                K.signed_quadratic_disc(), large
            )
            a_large = 1 + chi.astype(np.int64)
        else:
            census = _kernels.ddf_degree_census(
                np.array(K.poly, dtype=np.int64), large
            )
            a_large = census[:, 0].astype(np.int64)
        pos = pp_ptr[large_idx]
        pp_n[pos] = large
        pp_a[pos] = a_large
        pp_m[pos] = -a_large

    for i, (powers, a_loc, m_loc) in local.items():
        lo = int(pp_ptr[i])
        pp_n[lo : lo + len(powers)] = powers
        pp_a[lo : lo + len(powers)] = a_loc
        pp_m[lo : lo + len(powers)] = m_loc

    return primes, pp_ptr, pp_n, pp_a, pp_m


def build_table(
    K: FieldDescriptor, N: int, budget: int = CAPACITY_BUDGET
) -> CoeffTable:
    """Complete CoeffTable for K up to N: a, m, and A all filled."""
    if N < 1:
        raise UsageError(f"table bound must be >= 1, got {N}")
    if N > budget:
        raise CapacityError(N, budget)
    primes, pp_ptr, pp_n, pp_a, pp_m = _prime_power_values(K, N)
    a = _kernels.fill_multiplicative(N, primes, pp_ptr, pp_n, pp_a)
    m = _kernels.fill_multiplicative(N, primes, pp_ptr, pp_n, pp_m)
    # a(n) <= d(n)^degree stays far below 2^63 within the budget
    assert a.min() >= 0
    A = np.cumsum(a)
    return CoeffTable(N=N, a=a, m=m, A=A)


def sieve_zeta_coeffs(
    K: FieldDescriptor, N: int, budget: int = CAPACITY_BUDGET
) -> CoeffTable:
    """Table with exact a(n) and A(n) for n <= N (m comes along for free)."""
    return build_table(K, N, budget)


def sieve_moebius_coeffs(
    K: FieldDescriptor, N: int, budget: int = CAPACITY_BUDGET
) -> CoeffTable:
    """Table with exact norm-grouped Moebius m(n) for n <= N."""
    return build_table(K, N, budget)


# --- binary cache -----------------------------------------------------------
#
# layout: magic | version u32 | spec-string length u32 | spec utf-8 |
#         N u64 | a[0..N] int64 | m[0..N] int64, all little endian.
# A is recomputed on load. Files are keyed by a hash of the field spec so
# distinct fields never collide on a path.


def table_cache_path(K: FieldDescriptor, N: int, cache_dir: str) -> str:
    spec = K.spec_string()
    digest = hashlib.sha256(spec.encode()).hexdigest()[:16]
    return os.path.join(cache_dir, f"{digest}_N{N}.rpt")


def save_table(table: CoeffTable, K: FieldDescriptor, cache_dir: str) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    path = table_cache_path(K, table.N, cache_dir)
    spec = K.spec_string().encode()
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(_CACHE_MAGIC)
        fh.write(struct.pack("<II", _CACHE_VERSION, len(spec)))
        fh.write(spec)
        fh.write(struct.pack("<Q", table.N))
        fh.write(table.a.astype("<i8").tobytes())
        fh.write(table.m.astype("<i8").tobytes())
    os.replace(tmp, path)
    return path


def load_table(K: FieldDescriptor, N: int, cache_dir: str):
    """Cached CoeffTable for (K, N), or None when no file exists."""
    path = table_cache_path(K, N, cache_dir)
    if not os.path.exists(path):
        return None
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:8] != _CACHE_MAGIC:
        raise CacheCorrupt(path, "bad magic")
    version, spec_len = struct.unpack_from("<II", blob, 8)
    if version != _CACHE_VERSION:
        raise CacheCorrupt(path, f"unsupported version {version}")
    off = 16
    spec = blob[off : off + spec_len].decode()
    if spec != K.spec_string():
        raise CacheCorrupt(path, "field spec mismatch")
    off += spec_len
    (n_stored,) = struct.unpack_from("<Q", blob, off)
    if n_stored != N:
        raise CacheCorrupt(path, f"bound mismatch: {n_stored} != {N}")
    off += 8
    want = 8 * (N + 1)
    if len(blob) != off + 2 * want:
        raise CacheCorrupt(path, "truncated payload")
    a = np.frombuffer(blob, dtype="<i8", count=N + 1, offset=off).astype(
        np.int64
    )
    m = np.frombuffer(
        blob, dtype="<i8", count=N + 1, offset=off + want
    ).astype(np.int64)
    return CoeffTable(N=N, a=a, m=m, A=np.cumsum(a))
