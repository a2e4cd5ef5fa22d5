"""Time the numba kernels against the pure-numpy fallback.

Runs each kernel on its production workload (the CSR rows a real field
table is built from), checks the two implementations agree, and prints
best-of-5 wall times with the speedup. Run as a plain script:

    python3 benchmarks/bench_kernels.py [N]

N is the table bound (default 10^7).
"""

import sys
import time

import numpy as np

from rprime._kernels import numpy_impl
from rprime.multsieve import _prime_power_values
from rprime.numberfield import make_quadratic, parse_field_spec

try:
    from rprime._kernels import numba_impl
except ImportError:
    print("numba is not importable; nothing to compare")
    sys.exit(0)


def best_of(fn, repeats=5):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def row(name, slow_fn, fast_fn):
    t_np, a = best_of(slow_fn)
    t_nb, b = best_of(fast_fn)
    assert np.array_equal(a, b), name
    print(f"{name:<28} numpy {t_np * 1e3:9.2f} ms   "
          f"numba {t_nb * 1e3:9.2f} ms   x{t_np / t_nb:6.1f}")


def main():
    N = int(float(sys.argv[1])) if len(sys.argv) > 1 else 10 ** 7
    K = make_quadratic(-1)
    cubic = parse_field_spec("poly:-1,-1,0,1")
    primes, pp_ptr, pp_n, pp_a, _ = _prime_power_values(K, N)
    poly = np.array(cubic.poly, dtype=np.int64)

    # first calls JIT-compile; keep that out of the timings
    numba_impl.primes_up_to(100)
    numba_impl.fill_multiplicative(100, *_prime_power_values(K, 100)[:4])
    numba_impl.kronecker_over_primes(-4, primes[:100])
    numba_impl.ddf_degree_census(poly, primes[:100])

    print(f"N = {N}, {len(primes)} primes, field quad:-1")
    row("primes_up_to",
        lambda: numpy_impl.primes_up_to(N),
        lambda: numba_impl.primes_up_to(N))
    row("fill_multiplicative",
        lambda: numpy_impl.fill_multiplicative(N, primes, pp_ptr, pp_n, pp_a),
        lambda: numba_impl.fill_multiplicative(N, primes, pp_ptr, pp_n, pp_a))
    row("kronecker_over_primes",
        lambda: numpy_impl.kronecker_over_primes(-4, primes),
        lambda: numba_impl.kronecker_over_primes(-4, primes))
    small = primes[: min(len(primes), 10 ** 5)]
    row("ddf_degree_census",
        lambda: numpy_impl.ddf_degree_census(poly, small),
        lambda: numba_impl.ddf_degree_census(poly, small))


if __name__ == "__main__":
    main()
