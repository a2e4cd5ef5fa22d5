"""Exception hierarchy.

Everything raised on purpose derives from RPrimeError so the CLI can map
domain failures to one exit code. Exceptions carry enough context to print
a one-line diagnosis without a traceback.
"""


class RPrimeError(Exception):
    """Base class for all intentional failures."""


class UsageError(RPrimeError):
    """Bad configuration or argument combination (CLI exit code 1)."""


# --- numberfield ---

class NonSquarefree(RPrimeError):
    def __init__(self, d):
        super().__init__(f"d = {d} has a square factor")
        self.d = d


class InvalidD(RPrimeError):
    def __init__(self, d):
        super().__init__(f"d = {d} does not define a quadratic field")
        self.d = d


class Reducible(RPrimeError):
    def __init__(self, poly, witness=None):
        msg = f"polynomial {poly} is reducible over Q"
        if isinstance(witness, tuple):
            msg += f" (factor {witness})"
        elif witness is not None:
            msg += f" (root {witness})"
        super().__init__(msg)
        self.poly = poly
        self.witness = witness


class ReducibleUndetermined(RPrimeError):
    def __init__(self, poly):
        super().__init__(
            f"could not certify irreducibility of {poly}; refusing to guess"
        )
        self.poly = poly


class NotMonogenic(RPrimeError):
    def __init__(self, p):
        super().__init__(
            f"Dedekind index test fails at p = {p}: Z[theta] is not the "
            f"maximal order, field unsupported"
        )
        self.p = p


class DiscTooLarge(RPrimeError):
    def __init__(self, disc, budget):
        super().__init__(
            f"cannot certify the factorization of disc = {disc} within the "
            f"trial-division budget {budget}"
        )
        self.disc = disc
        self.budget = budget


# --- multsieve ---

class CapacityError(RPrimeError):
    def __init__(self, n, budget):
        super().__init__(f"sieve bound N = {n} exceeds memory budget {budget}")
        self.n = n
        self.budget = budget


class CacheCorrupt(RPrimeError):
    def __init__(self, path, reason):
        super().__init__(f"cache file {path} unusable: {reason}")
        self.path = path
        self.reason = reason


# --- counting ---

class OutOfRange(RPrimeError):
    def __init__(self, x, n):
        super().__init__(f"x = {x} outside table bound N = {n}")
        self.x = x
        self.n = n


class OracleBoundExceeded(RPrimeError):
    def __init__(self, detail):
        super().__init__(f"brute-force oracle bound exceeded: {detail}")


# --- analytic ---

class NotFundamental(RPrimeError):
    def __init__(self, d):
        super().__init__(f"D = {d} is not a fundamental discriminant")
        self.d = d


class RoundingUnsafe(RPrimeError):
    def __init__(self, d, value):
        super().__init__(
            f"class number for D = {d} computed as {value}, too far from an "
            f"integer to round safely"
        )


class SNotGreaterThanOne(RPrimeError):
    def __init__(self, s):
        super().__init__(f"Euler product requires s > 1, got s = {s}")


class InsufficientTable(RPrimeError):
    def __init__(self, need, have):
        super().__init__(
            f"regression estimate needs a coefficient table with N >= {need}"
            + ("" if have is None else f", got N = {have}")
        )


# --- analysis ---

class TooFewPoints(RPrimeError):
    def __init__(self, have, need):
        super().__init__(f"need at least {need} usable points, have {have}")
        self.have = have
        self.need = need


class InvalidCase(RPrimeError):
    pass


class VerificationFailure(RPrimeError):
    """Oracle disagreement (CLI exit code 3)."""

    def __init__(self, x, expected, got):
        super().__init__(
            f"mismatch at x = {x}: sieve path {got}, oracle {expected}"
        )
        self.x = x
        self.expected = expected
        self.got = got
