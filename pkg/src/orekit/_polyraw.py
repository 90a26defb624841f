"""Low-level univariate polynomial arithmetic on raw coefficient lists.

Coefficients are raw field values (ints for prime fields, nested tuples for
extensions) in ascending order, with no trailing zeros; [] is the zero
polynomial. Every function takes the owning field as first argument so this
module stays import-free of the field classes (fields.py itself needs these
routines to validate and search moduli).
"""

from .errors import ZeroDivisorError


def strip(F, c):
    c = list(c)
    while c and c[-1] == F.zero:
        c.pop()
    return c


def deg(c):
    return len(c) - 1


def add(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y))
    return strip(F, out)


def neg(F, a):
    return [F.neg(x) for x in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return strip(F, out)


def mul_ground(F, a, c):
    if c == F.zero:
        return []
    return strip(F, [F.mul(x, c) for x in a])


def shift(F, a, k):
    if not a:
        return []
    return [F.zero] * k + list(a)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisorError("polynomial division by zero")
    r = list(a)
    q = [F.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = F.inv(b[-1])
    while len(r) >= len(b):
        if r[-1] == F.zero:
            r.pop()
            continue
        k = len(r) - len(b)
        c = F.mul(r[-1], inv_lead)
        q[k] = c
        for i, x in enumerate(b):
            r[k + i] = F.sub(r[k + i], F.mul(c, x))
        r = strip(F, r)
    return strip(F, q), strip(F, r)


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return []
    if a[-1] == F.one:
        return list(a)
    return mul_ground(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def mul_mod(F, a, b, m):
    return rem(F, mul(F, a, b), m)


def pow_mod(F, b, e, m):
    out = [F.one]
    b = rem(F, b, m)
    while e:
        if e & 1:
            out = mul_mod(F, out, b, m)
        b = mul_mod(F, b, b, m)
        e >>= 1
    return out


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F, a):
    out = []
    for i in range(1, len(a)):
        c = a[i]
        s = F.zero
        for _ in range(i % F.p):
            s = F.add(s, c)
        out.append(s)
    return strip(F, out)


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, f):
    """Rabin's test over the field F (|F| = q): f irreducible iff
    Y^(q^n) = Y mod f and gcd(Y^(q^(n/l)) - Y, f) = 1 for prime l | n."""
    n = deg(f)
    if n < 1:
        return False
    q = F.order
    y = [F.zero, F.one]
    for ell in _prime_divisors(n):
        t = pow_mod(F, y, q ** (n // ell), f)
        g = gcd(F, sub(F, t, y), f)
        if deg(g) != 0:
            return False
    t = pow_mod(F, y, q ** n, f)
    return not sub(F, t, rem(F, y, f))


def first_irreducible(F, n):
    """Deterministic lexicographically-smallest monic irreducible of degree n:
    scan non-leading coefficient vectors in ascending packed-index order."""
    q = F.order
    for idx in range(q ** n):
        coeffs = []
        k = idx
        for _ in range(n):
            coeffs.append(F.from_index(k % q))
            k //= q
        f = coeffs + [F.one]
        if is_irreducible(F, f):
            return f
    raise RuntimeError("no irreducible polynomial found (unreachable)")
