"""Kernel facade: numba when available, pure numpy otherwise.

Selection happens once at import time. Set RPRIME_NO_NUMBA=1 to force the
numpy path (the benchmark and the equality tests import both implementations
directly, bypassing the facade).
"""

from __future__ import annotations

import os

from . import numpy_impl

USING_NUMBA = False
_impl = numpy_impl

if not os.environ.get("RPRIME_NO_NUMBA"):
    try:
        from . import numba_impl as _numba_impl

        _impl = _numba_impl
        USING_NUMBA = True
    except Exception:  # numba missing or failed to compile
        _impl = numpy_impl
        USING_NUMBA = False


def impl_name() -> str:
    return "numba" if USING_NUMBA else "numpy"


def primes_up_to(n):
    return _impl.primes_up_to(n)


def fill_multiplicative(n, primes, pp_ptr, pp_n, pp_val):
    return _impl.fill_multiplicative(n, primes, pp_ptr, pp_n, pp_val)


def kronecker_over_primes(big_d, primes):
    return _impl.kronecker_over_primes(big_d, primes)


def ddf_degree_census(coeffs, primes):
    return _impl.ddf_degree_census(coeffs, primes)
