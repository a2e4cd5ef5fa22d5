"""Main-term constants: residue of zeta_K at 1, special values, class data.

The residue c comes from the class number formula
2^r1 (2pi)^r2 h R / (w sqrt|D|), assembled exactly for rational and
quadratic fields: h by reduced-form counting (imaginary) or the L-value
route with a rounding guard (real), R by continued fractions, and w from
the discriminant alone. Fields where h and R are out of reach get a
regression estimate of the slope of I_K(x) with an explicit uncertainty.

zeta_K at real s > 1 is a truncated Euler product over splitting data
with a certified tail, so every numerical value ships with a bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta as _hurwitz_zeta

from . import _kernels
from .errors import (
    InsufficientTable,
    NotFundamental,
    RoundingUnsafe,
    SNotGreaterThanOne,
    UsageError,
)
from .multsieve import CoeffTable
from .numberfield import (
    FieldDescriptor,
    is_squarefree,
    kronecker,
    splitting_type,
)

CLASS_NUMBER_BOUND = 10 ** 6
REGRESSION_MIN_N = 10 ** 5


@dataclass(frozen=True)
class ResidueInfo:
    """Residue c of zeta_K at s = 1 plus how it was obtained.

    h, R, w are populated for the exact methods; uncertainty is nonzero
    only for regression estimates.
    """

    c: float
    method: str
    h: int = None
    R: float = None
    w: int = None
    uncertainty: float = 0.0


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(abs(D))
    if D % 4 == 0:
        d = D // 4
        return d % 4 in (2, 3) and is_squarefree(abs(d))
    return False


def _root_count(D: int) -> int:
    if D == -4:
        return 4
    if D == -3:
        return 6
    return 2


def _log_bigint(n: int) -> float:
    """log n for integers too large for float conversion."""
    k = n.bit_length()
    if k <= 900:
        return math.log(n)
    top = n >> (k - 64)
    return math.log(top) + (k - 64) * math.log(2)


def _log_unit_from_trace(t: int, norm: int) -> float:
    """log of the larger root of X^2 - tX + norm, for t >= 1, norm = +-1."""
    if t < 10 ** 12:
        return math.log((t + math.sqrt(t * t - 4 * norm)) / 2)
    # the unit equals t - norm/unit; the correction is below 1/t^2
    return _log_bigint(t)


def _pell_fundamental(d: int):
    """Fundamental solution of x^2 - d y^2 = +-1 by continued fractions.

    Returns (x, y, norm) for the unit x + y*sqrt(d) generating the unit
    group of Z[sqrt d].
    """
    a0 = math.isqrt(d)
    p_prev, p_cur = 1, a0
    q_prev, q_cur = 0, 1
    P, Q = a0, d - a0 * a0
    k = 1
    while Q != 1:
        a = (a0 + P) // Q
        P = a * Q - P
        Q = (d - P * P) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        k += 1
    return p_cur, q_cur, (-1) ** k


def _icbrt(n: int) -> int:
    if n < 0:
        return -_icbrt(-n)
    x = int(round(n ** (1.0 / 3))) if n < 2 ** 51 else 1 << (n.bit_length() // 3 + 1)
    while x ** 3 > n:
        x = (2 * x + n // (x * x)) // 3
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def fundamental_unit_regulator(d: int) -> float:
    """R = log of the fundamental unit of the real quadratic field Q(sqrt d).

    Continued fractions give the fundamental unit of Z[sqrt d] exactly;
    for d = 1 mod 4 the maximal order can be three times finer, so an
    exact integer cube-root check decides whether to divide the log by 3.
    """
    if d <= 1 or not is_squarefree(d):
        raise UsageError(f"need squarefree d > 1, got {d}")
    x, y, nrm = _pell_fundamental(d)
    if d % 4 != 1:
        return _log_unit_from_trace(2 * x, nrm)
    # hunt for (a + b sqrt d)/2 with cube x + y sqrt d; its trace a sits
    # within 2 of (2x)^(1/3) because x + y sqrt d = 2x -+ 1/(x + y sqrt d)
    guess = _icbrt(2 * x)
    for a in range(max(1, guess - 2), guess + 3):
        for nu in (1, -1):
            num = a * a - 4 * nu
            if num <= 0 or num % d:
                continue
            b = math.isqrt(num // d)
            if b * b != num // d:
                continue
            if a ** 3 + 3 * a * b * b * d == 8 * x and 3 * a * a * b + b ** 3 * d == 8 * y:
                return _log_unit_from_trace(a, nu)
    return _log_unit_from_trace(2 * x, nrm)


def dirichlet_L1(D: int) -> float:
    """L(1, chi_D) by the exact finite character-sum formulas."""
    if not is_fundamental_discriminant(D):
        raise NotFundamental(D)
    aD = abs(D)
    chi = [kronecker(D, a) for a in range(aD)]
    if D < 0:
        s = sum(chi[a] * a for a in range(1, aD))
        return -math.pi * s / aD ** 1.5
    s = sum(chi[a] * math.log(math.sin(math.pi * a / D)) for a in range(1, aD))
    return -s / math.sqrt(D)


def class_number_quadratic(D: int, bound: int = CLASS_NUMBER_BOUND) -> int:
    """Class number of the quadratic field of fundamental discriminant D."""
    if not is_fundamental_discriminant(D):
        raise NotFundamental(D)
    if abs(D) > bound:
        raise UsageError(f"|D| = {abs(D)} exceeds the configured bound {bound}")
    if D < 0:
        h = 0
        b = D % 2
        while b * b <= -D / 3 * 1.0000001:
            t = (b * b - D) // 4
            a = max(b, 1)
            while a * a <= t:
                if t % a == 0:
                    c = t // a
                    if math.gcd(math.gcd(a, b), c) == 1:
                        # (a, +-b, c) are distinct classes except at the
                        # reduction boundary b = 0, a = b, or a = c
                        h += 1 if (b == 0 or a == b or a == c) else 2
                a += 1
            b += 2
        return h
    d = D if D % 4 == 1 else D // 4
    R = fundamental_unit_regulator(d)
    hf = math.sqrt(D) * dirichlet_L1(D) / (2 * R)
    h = round(hf)
    if abs(hf - h) >= 0.25:
        raise RoundingUnsafe(D, hf)
    return h


def _regression_c(K: FieldDescriptor, table: CoeffTable):
    if table is None or table.N < REGRESSION_MIN_N:
        have = 0 if table is None else table.N
        raise InsufficientTable(REGRESSION_MIN_N, have)
    xs = np.unique(
        np.geomspace(table.N / 10, table.N, 64).astype(np.int64)
    )
    ys = table.A[xs].astype(np.float64)
    xf = xs.astype(np.float64)
    xbar = xf.mean()
    ybar = ys.mean()
    sxx = np.sum((xf - xbar) ** 2)
    slope = np.sum((xf - xbar) * (ys - ybar)) / sxx
    resid = ys - ybar - slope * (xf - xbar)
    dof = len(xs) - 2
    stderr = math.sqrt(float(np.sum(resid ** 2)) / dof / sxx)
    return float(slope), stderr


def residue_c(K: FieldDescriptor, table: CoeffTable = None) -> ResidueInfo:
    """Residue of zeta_K at s = 1.

    Exact for rational and quadratic fields (including degree-2 fields
    entered by polynomial); otherwise a slope regression of I_K(x)
    against x on a geometric grid, with its standard error.
    """
    if K.kind == "rational":
        return ResidueInfo(c=1.0, method="exact-rational", h=1, R=1.0, w=2)
    if K.degree == 2:
        D = K.disc_signed
        h = class_number_quadratic(D)
        w = _root_count(D)
        if D < 0:
            R = 1.0
            c = 2 * math.pi * h / (w * math.sqrt(-D))
        else:
            d = D if D % 4 == 1 else D // 4
            R = fundamental_unit_regulator(d)
            c = 2 * h * R / math.sqrt(D)
        return ResidueInfo(c=c, method="exact-quadratic", h=h, R=R, w=w)
    slope, stderr = _regression_c(K, table)
    return ResidueInfo(c=slope, method="regression-estimate", uncertainty=stderr)


def zeta_K_real(K: FieldDescriptor, s: float, P: int):
    """Truncated Euler product of zeta_K at real s > 1 with a tail bracket.

    Returns (value, tail_bound) where the true value lies within
    value +- tail_bound: the log-tail over p > P is majorized by
    n * integral of t^(-s), inflated to cover the -log(1-t) curvature.
    """
    if s <= 1:
        raise SNotGreaterThanOne(s)
    if P < 100:
        raise UsageError(f"prime cutoff P = {P} too small, need >= 100")
    primes = _kernels.primes_up_to(P)
    n = K.degree
    ramified = np.isin(primes, np.array(K.ramified_primes, dtype=np.int64))
    plain = primes[~ramified]
    pf = plain.astype(np.float64)
    log_val = 0.0
    if K.kind == "rational":
        log_val += float(-np.log1p(-pf ** -s).sum())
    elif K.kind == "quadratic":
        chi = _kernels.kronecker_over_primes(K.signed_quadratic_disc(), plain)
        log_val += float(-2.0 * np.log1p(-pf[chi == 1] ** -s).sum())
        log_val += float(-np.log1p(-pf[chi == -1] ** (-2 * s)).sum())
    else:
        census = _kernels.ddf_degree_census(
            np.array(K.poly, dtype=np.int64), plain
        )
        for deg in range(1, n + 1):
            cnt = census[:, deg - 1].astype(np.float64)
            log_val += float(-(cnt * np.log1p(-pf ** (-deg * s))).sum())
    for p in primes[ramified].tolist():
        for f in splitting_type(K, int(p)).residue_degrees:
            log_val -= math.log1p(-float(p) ** (-f * s))
    value = math.exp(log_val)
    log_tail = n * P ** (1 - s) / ((s - 1) * (1 - P ** -s))
    return value, value * math.expm1(log_tail)


def _zeta_quadratic_exact(D: int, s: float) -> float:
    """zeta(s) * L(s, chi_D) via Hurwitz zeta, exact to double precision."""
    aD = abs(D)
    L = 0.0
    for a in range(1, aD + 1):
        ch = kronecker(D, a)
        if ch:
            L += ch * float(_hurwitz_zeta(s, a / aD))
    L *= aD ** -s
    return float(_hurwitz_zeta(s, 1)) * L


def zeta_K_value(K: FieldDescriptor, s: float):
    """Best available zeta_K(s): exact special forms when the field allows,
    else the Euler product pushed until the tail stops improving.

    Returns (value, tail_bound); tail_bound 0.0 marks the exact paths.
    """
    if s <= 1:
        raise SNotGreaterThanOne(s)
    if K.kind == "rational":
        return float(_hurwitz_zeta(s, 1)), 0.0
    if K.degree == 2:
        return _zeta_quadratic_exact(K.disc_signed, s), 0.0
    value, tail = zeta_K_real(K, s, 10 ** 4)
    for P in (10 ** 5, 10 ** 6, 4 * 10 ** 6):
        if tail < 1e-10 * value:
            break
        value, tail = zeta_K_real(K, s, P)
    return value, tail


def main_term(K: FieldDescriptor, x, m: int, r: int, residue: ResidueInfo) -> float:
    """c^m x^m / zeta_K(rm)."""
    if m * r < 2:
        raise UsageError(f"main term needs rm >= 2, got m={m}, r={r}")
    z, _ = zeta_K_value(K, float(m * r))
    return residue.c ** m * float(x) ** m / z
