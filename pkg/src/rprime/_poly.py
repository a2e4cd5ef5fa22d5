"""Exact polynomial arithmetic over Z and GF(p).

Polynomials are lists/tuples of coefficients, constant term first, so
x^3 - x - 1 is (-1, -1, 0, 1). No leading-zero canonicalization is assumed
on input; functions trim as needed. Everything here is exact integer
arithmetic: no floats.
"""

from __future__ import annotations

from fractions import Fraction


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f):
    f = trim(f)
    return len(f) - 1 if f else -1


def evaluate(f, x):
    y = 0
    for c in reversed(list(f)):
        y = y * x + c
    return y


def derivative(f):
    return [i * c for i, c in enumerate(f)][1:]


def _bareiss_det(mat):
    # Fraction-free Gaussian elimination; exact integer determinant.
    m = [row[:] for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def resultant(f, g):
    """Res(f, g) via the Sylvester matrix, exact."""
    f, g = trim(f), trim(g)
    df, dg = len(f) - 1, len(g) - 1
    if df < 0 or dg < 0:
        return 0
    if df == 0:
        return f[0] ** dg
    if dg == 0:
        return g[0] ** df
    n = df + dg
    rows = []
    frev = f[::-1]
    grev = g[::-1]
    for i in range(dg):
        rows.append([0] * i + frev + [0] * (n - df - 1 - i))
    for i in range(df):
        rows.append([0] * i + grev + [0] * (n - dg - 1 - i))
    return _bareiss_det(rows)


def discriminant_monic(f):
    """disc(f) for monic f: (-1)^(n(n-1)/2) * Res(f, f')."""
    n = degree(f)
    res = resultant(f, derivative(f))
    return -res if (n * (n - 1) // 2) % 2 else res


def sturm_real_root_count(f):
    """Number of distinct real roots of a squarefree integer polynomial."""
    chain = [[Fraction(c) for c in trim(f)]]
    chain.append([Fraction(c) for c in derivative(chain[0])])
    while degree(chain[-1]) > 0:
        rem = _frac_poly_rem(chain[-2], chain[-1])
        rem = [-c for c in rem]
        if not trim(rem):
            break
        chain.append(trim(rem))

    def variations(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)

    at_pos = []
    at_neg = []
    for g in chain:
        g = trim(g)
        if not g:
            continue
        lead = 1 if g[-1] > 0 else -1
        at_pos.append(lead)
        at_neg.append(lead if (len(g) - 1) % 2 == 0 else -lead)
    return variations(at_neg) - variations(at_pos)


def _frac_poly_rem(a, b):
    a = list(a)
    b = trim(b)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and trim(a):
        a = trim(a)
        if len(a) - 1 < db:
            break
        q = a[-1] / lead
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
    return a


# --- GF(p) arithmetic; coefficient lists with entries reduced mod p ---

def gf_trim(f):
    f = [c for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def gf_monic(f, p):
    f = gf_trim(f)
    if not f or f[-1] == 1:
        return f
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def gf_mul(a, b, p):
    a, b = gf_trim(a), gf_trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return gf_trim(out)


def gf_divmod(a, b, p):
    a = [c % p for c in gf_trim(a)]
    b = gf_trim(b)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - c * b[i]) % p
        a = gf_trim(a)
    return q, a


def gf_mod(a, b, p):
    return gf_divmod(a, b, p)[1]


def gf_gcd(a, b, p):
    a, b = gf_trim(a), gf_trim(b)
    while b:
        a, b = b, gf_mod(a, b, p)
    return gf_monic(a, p)


def gf_pow_mod(base, e, mod, p):
    result = [1]
    base = gf_mod(base, mod, p)
    while e:
        if e & 1:
            result = gf_mod(gf_mul(result, base, p), mod, p)
        base = gf_mod(gf_mul(base, base, p), mod, p)
        e >>= 1
    return result


def gf_deriv(f, p):
    return gf_trim([i * c % p for i, c in enumerate(f)][1:])


def _gf_pth_root(f, p):
    # f is a p-th power in GF(p)[x], i.e. a polynomial in x^p; Frobenius is
    # the identity on GF(p) so the root just subsamples coefficients.
    return gf_trim([f[i] for i in range(0, len(f), p)])


def gf_squarefree_decomposition(f, p):
    """[(g, k)] with f/lc = prod g^k, the g squarefree, monic, coprime."""
    f = gf_monic(f, p)
    out = []
    deriv = gf_deriv(f, p)
    if not deriv:
        for g, k in gf_squarefree_decomposition(_gf_pth_root(f, p), p):
            out.append((g, k * p))
        return out
    c = gf_gcd(f, deriv, p)
    w = gf_divmod(f, c, p)[0]
    k = 1
    while len(w) > 1:
        y = gf_gcd(w, c, p)
        fac = gf_divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((gf_monic(fac, p), k))
        w = y
        c = gf_divmod(c, y, p)[0]
        k += 1
    if len(c) > 1:
        for g, j in gf_squarefree_decomposition(_gf_pth_root(c, p), p):
            out.append((g, j * p))
    return out


def gf_distinct_degree(g, p):
    """[(d, count)] factor-degree census of a squarefree monic g."""
    g = gf_monic(g, p)
    out = []
    x = [0, 1]
    h = gf_mod(x, g, p)
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = gf_pow_mod(h, p, g, p)
        diff = gf_trim([(a - b) % p for a, b in
                        zip(h + [0] * len(x), x + [0] * len(h))])
        common = gf_gcd(diff, g, p)
        if len(common) > 1:
            deg_c = len(common) - 1
            out.append((d, deg_c // d))
            g = gf_divmod(g, common, p)[0]
            h = gf_mod(h, g, p)
    if len(g) > 1:
        out.append((len(g) - 1, 1))
    return out


def dedekind_index_test(f, p):
    """True iff p does not divide the index [O_K : Z[theta]].

    f must be monic and irreducible over Q. Uses the classical criterion:
    with fbar = prod gbar_i^{e_i} mod p, g = prod gbar_i lifted, h a lift of
    fbar/gbar, and T = (g*h - f)/p, the test passes iff
    gcd(Tbar, gbar, hbar) = 1 in GF(p)[x].
    """
    fbar = gf_trim([c % p for c in f])
    parts = gf_squarefree_decomposition(fbar, p)
    radical = [1]
    for g, _k in parts:
        radical = gf_mul(radical, g, p)
    hbar = gf_divmod(fbar, radical, p)[0]
    g_lift = [c % p for c in radical]
    h_lift = [c % p for c in hbar]
    prod = _int_poly_mul(g_lift, h_lift)
    diff = [a - b for a, b in
            zip(prod + [0] * len(f), list(f) + [0] * len(prod))]
    t = [c // p for c in diff]
    assert all(c % p == 0 for c in diff), "lift mismatch"
    tbar = gf_trim([c % p for c in t])
    d = gf_gcd(gf_gcd(tbar, radical, p), hbar, p)
    return len(d) == 1


def _int_poly_mul(a, b):
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out
