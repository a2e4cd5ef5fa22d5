"""Number fields and prime splitting.

Three kinds of field are supported: the rationals, quadratic fields Q(sqrt(d))
for squarefree d, and monogenic fields Z[theta] given by a monic irreducible
polynomial that passes the Dedekind index test at every prime whose square
divides the polynomial discriminant. For such fields the splitting type of a
rational prime p (the multiset of ramification indices and residue degrees of
the primes above p) is computed exactly: closed-form Kronecker-symbol rules
for the quadratic kind, polynomial factorization mod p for the monogenic kind.

Splitting is the single fact every downstream count derives from.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import _poly
from .errors import (
    DiscTooLarge,
    InvalidD,
    NonSquarefree,
    NotMonogenic,
    Reducible,
    ReducibleUndetermined,
    UsageError,
)

DISC_FACTOR_BUDGET = 10 ** 7

# deterministic Miller-Rabin witnesses, valid for all n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_squarefree(d: int) -> bool:
    d = abs(d)
    if d == 0:
        return False
    i = 2
    while i * i <= d:
        if d % (i * i) == 0:
            return False
        while d % i == 0:
            d //= i
        i += 1
    return True


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out twos of n: (a|2) is 0 for even a, +-1 by a mod 8
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    # Jacobi symbol by quadratic reciprocity
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class SplittingType:
    """Multiset {(e_i, f_i)} of the primes above p, sorted by (f, e)."""

    entries: tuple

    def __post_init__(self):
        canon = tuple(sorted((tuple(e) for e in self.entries),
                             key=lambda ef: (ef[1], ef[0])))
        object.__setattr__(self, "entries", canon)
        if not self.entries:
            raise ValueError("splitting type cannot be empty")
        for e, f in self.entries:
            if e < 1 or f < 1:
                raise ValueError(f"bad (e, f) = ({e}, {f})")

    @property
    def residue_degrees(self):
        """Tuple of the f_i, one per prime above p."""
        return tuple(f for _e, f in self.entries)

    @property
    def efsum(self):
        return sum(e * f for e, f in self.entries)

    @property
    def ramified(self):
        return any(e > 1 for e, _f in self.entries)


def _sorted_by_f(pairs):
    return tuple(sorted(pairs, key=lambda ef: (ef[1], ef[0])))


@dataclass(frozen=True)
class FieldDescriptor:
    """A number field with just enough data to answer splitting queries.

    Attributes:
        kind: "rational", "quadratic", or "monogenic".
        degree: [K:Q].
        r1: number of real embeddings.
        r2: number of complex-conjugate embedding pairs.
        disc_abs: absolute value of the field discriminant.
        disc_signed: the field discriminant with its sign.
        d: the squarefree integer for the quadratic kind, else None.
        poly: monic defining polynomial (constant term first) for the
            monogenic kind, else None.
    """

    kind: str
    degree: int
    r1: int
    r2: int
    disc_abs: int
    disc_signed: int
    d: int | None = None
    poly: tuple | None = None
    ramified_primes: tuple = field(default=(), repr=False)

    def __post_init__(self):
        assert self.degree == self.r1 + 2 * self.r2

    def spec_string(self) -> str:
        """Canonical CLI spec, round-trips through parse_field_spec."""
        if self.kind == "rational":
            return "rational"
        if self.kind == "quadratic":
            return f"quad:{self.d}"
        return "poly:" + ",".join(str(c) for c in self.poly)

    def signed_quadratic_disc(self) -> int | None:
        """Fundamental discriminant when the field is (any kind of) degree-2."""
        if self.degree == 2:
            return self.disc_signed
        return None


def make_rational() -> FieldDescriptor:
    return FieldDescriptor(
        kind="rational", degree=1, r1=1, r2=0, disc_abs=1, disc_signed=1
    )


def make_quadratic(d: int) -> FieldDescriptor:
    """Quadratic field Q(sqrt(d)) for squarefree d not in {0, 1}."""
    if d in (0, 1):
        raise InvalidD(d)
    if not is_squarefree(d):
        raise NonSquarefree(d)
    disc = d if d % 4 == 1 else 4 * d
    r1, r2 = (2, 0) if d > 0 else (0, 1)
    ram = tuple(p for p in _small_prime_factors(abs(disc)))
    return FieldDescriptor(
        kind="quadratic",
        degree=2,
        r1=r1,
        r2=r2,
        disc_abs=abs(disc),
        disc_signed=disc,
        d=d,
        ramified_primes=ram,
    )


def _small_prime_factors(n):
    out = []
    i = 2
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            while n % i == 0:
                n //= i
        i += 1
    if n > 1:
        out.append(n)
    return out


def _factor_within_budget(n, budget):
    """Factor n by trial division; certify any oversized cofactor or fail.

    Returns a list of (p, exponent). Raises DiscTooLarge when the remaining
    cofactor cannot be certified as prime or prime-squared, since an unknown
    repeated prime factor would silently skip the Dedekind test.
    """
    n0 = n
    out = []
    p = 2
    while p <= budget and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        if is_prime(n):
            out.append((n, 1))
        else:
            s = math.isqrt(n)
            if s * s == n and is_prime(s):
                out.append((s, 2))
            else:
                raise DiscTooLarge(n0, budget)
    return out


def _divisors_up_to(n, cap=10 ** 12):
    """All positive divisors of n, or None when n is too large to scan."""
    n = abs(n)
    if n == 0 or n > cap:
        return None
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


_FACTOR_SCAN_CAP = 2 * 10 ** 6


def _divides_exactly(f, g):
    """Whether monic integer g divides f in Z[x]."""
    rem = list(f)
    dg = len(g) - 1
    for i in range(len(f) - 1, dg - 1, -1):
        c = rem[i]
        if c:
            off = i - dg
            for j in range(dg + 1):
                rem[off + j] -= c * g[j]
    return not any(rem[:dg])


def _factor_search(coeffs, d):
    """Scan for a monic integer factor of degree d.

    Returns the factor as a coefficient tuple, None when the full
    Landau-Mignotte box contains no divisor, or "overflow" when the box
    is too large to scan exhaustively.
    """
    l2 = math.sqrt(sum(c * c for c in coeffs))
    bounds = []
    total = 1
    for i in range(d):
        b = math.comb(d - 1, i) * l2 + (math.comb(d - 1, i - 1) if i else 0)
        bi = int(math.ceil(b))
        bounds.append(bi)
        total *= 2 * bi + 1
        if total > _FACTOR_SCAN_CAP:
            return "overflow"
    c0 = coeffs[0]
    f1 = _poly.evaluate(coeffs, 1)
    fm1 = _poly.evaluate(coeffs, -1)
    for tail in itertools.product(*(range(-b, b + 1) for b in bounds)):
        # constant terms of the two factors multiply to c0, and g(t)
        # divides f(t) at any integer t; both prune cheaply
        if tail[0] == 0 or c0 % tail[0] != 0:
            continue
        g = tail + (1,)
        g1 = sum(g)
        if g1 == 0 or f1 % g1 != 0:
            continue
        gm1 = _poly.evaluate(g, -1)
        if gm1 == 0 or fm1 % gm1 != 0:
            continue
        if _divides_exactly(coeffs, g):
            return g
    return None


def _prove_irreducible(coeffs, disc):
    """Raise Reducible/ReducibleUndetermined unless irreducibility is proved.

    Strategy: exhaustive rational-root test when the constant term is small
    enough to enumerate divisors, then intersection of achievable proper
    factor-degree sums across the first 25 primes not dividing disc(f),
    then exhaustive Landau-Mignotte factor scan for any degrees left over.
    An empty survivor set proves irreducibility over Q.
    """
    n = len(coeffs) - 1
    c0 = coeffs[0]
    if c0 == 0:
        raise Reducible(coeffs, witness=0)
    divisors = _divisors_up_to(c0)
    roots_exhaustive = divisors is not None
    candidates = divisors if roots_exhaustive else [1, abs(c0)]
    for a in candidates:
        for root in (a, -a):
            if _poly.evaluate(coeffs, root) == 0:
                raise Reducible(coeffs, witness=root)
    if n <= 3 and roots_exhaustive:
        # a monic cubic or quadratic with no integer root is irreducible
        return
    possible = set(range(1, n))
    tested = 0
    p = 2
    while tested < 25 and possible:
        if is_prime(p) and disc % p != 0:
            census = _poly.gf_distinct_degree(
                [c % p for c in coeffs], p
            )
            degs = []
            for d, count in census:
                degs.extend([d] * count)
            sums = {0}
            for d in degs:
                sums |= {s + d for s in sums}
            possible &= {s for s in sums if 0 < s < n}
            tested += 1
        p += 1
    if roots_exhaustive:
        possible.discard(1)
        possible.discard(n - 1)
    for d in sorted({min(k, n - k) for k in possible}):
        found = _factor_search(coeffs, d)
        if found is None:
            possible.discard(d)
            possible.discard(n - d)
        elif found != "overflow":
            raise Reducible(coeffs, witness=found)
    if possible:
        raise ReducibleUndetermined(coeffs)


def make_monogenic(coeffs, disc_budget: int = DISC_FACTOR_BUDGET) -> FieldDescriptor:
    """Field Z[theta] for monic irreducible f, theta a root of f.

    Args:
        coeffs: integer coefficients of f, constant term first, leading 1.
        disc_budget: trial-division bound for factoring disc(f).

    Raises:
        Reducible / ReducibleUndetermined: f is not certified irreducible.
        NotMonogenic: the Dedekind index test fails at some prime, so Z[theta]
            is not the maximal order and exact splitting is unavailable.
        DiscTooLarge: disc(f) cannot be factored within budget.
    """
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) < 3:
        raise UsageError("monogenic constructor needs degree >= 2")
    if coeffs[-1] != 1:
        raise UsageError("polynomial must be monic")
    n = len(coeffs) - 1
    disc = _poly.discriminant_monic(list(coeffs))
    if disc == 0:
        raise Reducible(coeffs, witness="repeated root")
    _prove_irreducible(coeffs, disc)
    factors = _factor_within_budget(abs(disc), disc_budget)
    for p, e in factors:
        if e >= 2 and not _poly.dedekind_index_test(list(coeffs), p):
            raise NotMonogenic(p)
    r1 = _poly.sturm_real_root_count(list(coeffs))
    r2 = (n - r1) // 2
    assert (1 if disc > 0 else -1) == (-1) ** r2, "signature/disc sign mismatch"
    return FieldDescriptor(
        kind="monogenic",
        degree=n,
        r1=r1,
        r2=r2,
        disc_abs=abs(disc),
        disc_signed=disc,
        poly=coeffs,
        ramified_primes=tuple(p for p, _e in factors),
    )


def splitting_type(K: FieldDescriptor, p: int) -> SplittingType:
    """Splitting type of the rational prime p in O_K.

    Pure function of (K, p): rational and quadratic kinds use closed-form
    rules, the monogenic kind factors f mod p (squarefree decomposition, then
    distinct-degree factorization; only degrees and multiplicities are needed,
    so no equal-degree splitting is involved and the result is deterministic).
    """
    if p < 2 or not is_prime(p):
        raise UsageError(f"p = {p} is not prime")
    if K.kind == "rational":
        return SplittingType(((1, 1),))
    if K.kind == "quadratic":
        chi = kronecker(K.disc_signed, p)
        if chi == 1:
            return SplittingType(((1, 1), (1, 1)))
        if chi == -1:
            return SplittingType(((1, 2),))
        return SplittingType(((2, 1),))
    entries = []
    fbar = [c % p for c in K.poly]
    for g, mult in _poly.gf_squarefree_decomposition(fbar, p):
        for d, count in _poly.gf_distinct_degree(g, p):
            entries.extend([(mult, d)] * count)
    st = SplittingType(_sorted_by_f(entries))
    assert st.efsum == K.degree
    return st


def parse_field_spec(spec: str) -> FieldDescriptor:
    """Parse `rational`, `quad:<d>`, or `poly:<c0,c1,...,1>`."""
    spec = spec.strip()
    if spec == "rational":
        return make_rational()
    if spec.startswith("quad:"):
        try:
            d = int(spec[5:])
        except ValueError:
            raise UsageError(f"bad quadratic spec {spec!r}") from None
        return make_quadratic(d)
    if spec.startswith("poly:"):
        try:
            coeffs = tuple(int(c) for c in spec[5:].split(","))
        except ValueError:
            raise UsageError(f"bad polynomial spec {spec!r}") from None
        return make_monogenic(coeffs)
    raise UsageError(
        f"unrecognized field spec {spec!r}; expected rational, quad:<d> "
        f"or poly:<coeffs>"
    )
