"""The twisted polynomial ring F_{q^r}[X, sigma] with X*a = sigma(a)*X.

Implements both-sided Euclidean division (left division uses sigma^(r-1) as
the inverse of sigma, finite fields being perfect), the extended right
Euclidean algorithm for rgcd with Bezout cofactors, llcm, the linearized
polynomial correspondence, and central lifts Y -> X^r.
"""

from .errors import (DomainError, NotMonicError, TowerMismatchError,
                     ZeroDivisorError)
from .fields import FieldElem


class SkewPoly:
    """Skew polynomial: ascending coefficient tuple over F_{q^r}."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs=()):
        K = tower.K
        raws = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                if c.field.signature != K.signature:
                    raise TowerMismatchError("coefficient outside the tower")
                raws.append(c.raw)
            elif isinstance(c, int):
                raws.append(K.from_int(c))
            else:
                raws.append(c)
        while raws and raws[-1] == K.zero:
            raws.pop()
        self.tower = tower
        self.coeffs = tuple(raws)

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zero(cls, tower):
        return cls(tower, ())

    @classmethod
    def one(cls, tower):
        return cls(tower, (tower.K.one,))

    @classmethod
    def x(cls, tower):
        return cls(tower, (tower.K.zero, tower.K.one))

    @classmethod
    def x_power(cls, tower, k):
        return cls(tower, (tower.K.zero,) * k + (tower.K.one,))

    @classmethod
    def constant(cls, tower, c):
        return cls(tower, (c,))

    def _wrap(self, raws):
        return SkewPoly(self.tower, tuple(raws))

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            raise TypeError("expected SkewPoly")
        if other.tower.signature != self.tower.signature:
            raise TowerMismatchError("skew polynomials over different towers")
        return other

    # -- queries -------------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.tower.K.one

    def leading(self):
        return FieldElem(self.tower.K, self.coeffs[-1])

    def constant_term(self):
        K = self.tower.K
        return FieldElem(K, self.coeffs[0] if self.coeffs else K.zero)

    def __getitem__(self, i):
        K = self.tower.K
        c = self.coeffs[i] if 0 <= i < len(self.coeffs) else K.zero
        return FieldElem(K, c)

    def key(self):
        K = self.tower.K
        return (len(self.coeffs), tuple(K.index(c) for c in self.coeffs))

    # -- ring operations --------------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        K = self.tower.K
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else K.zero
            b = other.coeffs[i] if i < len(other.coeffs) else K.zero
            out.append(K.add(a, b))
        return self._wrap(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        K = self.tower.K
        return self._wrap([K.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        other = self._check(other)
        K = self.tower.K
        if not self.coeffs or not other.coeffs:
            return SkewPoly.zero(self.tower)
        out = [K.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        # twisted convolution: (a X^i)(b X^j) = a sigma^i(b) X^(i+j)
        twisted = [other.coeffs]
        for i, a in enumerate(self.coeffs):
            if a == K.zero:
                continue
            while len(twisted) <= i:
                twisted.append([K.frobenius(b, 1) for b in twisted[-1]])
            row = twisted[i]
            for j, b in enumerate(row):
                if b != K.zero:
                    out[i + j] = K.add(out[i + j], K.mul(a, b))
        return self._wrap(out)

    def scale_left(self, c):
        """c * P for a field element c."""
        K = self.tower.K
        raw = c.raw if isinstance(c, FieldElem) else K.from_int(c)
        return self._wrap([K.mul(raw, x) for x in self.coeffs])

    def shift(self, k):
        """P * X^k (right multiplication by X^k just shifts coefficients)."""
        if not self.coeffs:
            return self
        K = self.tower.K
        return self._wrap([K.zero] * k + list(self.coeffs))

    def monic(self):
        if self.is_zero():
            return self
        K = self.tower.K
        inv = K.inv(self.coeffs[-1])
        return self._wrap([K.mul(inv, c) for c in self.coeffs])

    # -- Euclidean structure ------------------------------------------------------------

    def divmod(self, D, side="right"):
        """Right: P = U*D + R; left: P = D*U + R; deg R < deg D, both unique."""
        D = self._check(D)
        if D.is_zero():
            raise ZeroDivisorError("skew division by zero")
        if side == "right":
            return self._divmod_right(D)
        if side == "left":
            return self._divmod_left(D)
        raise DomainError(f"unknown division side {side!r}")

    def _divmod_right(self, D):
        K = self.tower.K
        m = D.degree
        lead_inv = K.inv(D.coeffs[-1])
        r = list(self.coeffs)
        q = [K.zero] * max(0, len(r) - m)
        while len(r) - 1 >= m:
            if r[-1] == K.zero:
                r.pop()
                continue
            k = len(r) - 1 - m
            c = K.mul(r[-1], K.frobenius(lead_inv, k))
            q[k] = c
            # subtract (c X^k) * D
            for j, d in enumerate(D.coeffs):
                if d != K.zero:
                    r[k + j] = K.sub(r[k + j], K.mul(c, K.frobenius(d, k)))
            while r and r[-1] == K.zero:
                r.pop()
        return self._wrap(q), self._wrap(r)

    def _divmod_left(self, D):
        K = self.tower.K
        rdeg = self.tower.r
        m = D.degree
        lead_inv = K.inv(D.coeffs[-1])
        r = list(self.coeffs)
        q = [K.zero] * max(0, len(r) - m)
        while len(r) - 1 >= m:
            if r[-1] == K.zero:
                r.pop()
                continue
            k = len(r) - 1 - m
            # leading term of D * (c X^k) is lead(D) * sigma^m(c) X^(m+k)
            c = K.frobenius(K.mul(lead_inv, r[-1]), (-m) % rdeg)
            q[k] = c
            for j, d in enumerate(D.coeffs):
                if d != K.zero:
                    r[k + j] = K.sub(r[k + j], K.mul(d, K.frobenius(c, j)))
            while r and r[-1] == K.zero:
                r.pop()
        return self._wrap(q), self._wrap(r)

    def right_divides(self, other):
        return other.divmod(self, "right")[1].is_zero()

    # -- identity ------------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return (self.tower.signature == other.tower.signature
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.tower.signature, self.coeffs))

    def __str__(self):
        K = self.tower.K
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == K.zero:
                continue
            cs = K.fmt(c)
            if any(op in cs for op in "+-*"):
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                head = f"X^{k}" if k > 1 else "X"
                terms.append(head if cs == "1" else f"{cs}*{head}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"SkewPoly({self})"

    def to_json(self):
        K = self.tower.K
        return [K.fmt(c) for c in self.coeffs]


def skew_mul(P, Q):
    return P * Q


def rgcd(P, Q):
    """Monic right gcd with Bezout pair: returns (g, A, B) with A*P + B*Q = g."""
    if P.is_zero() and Q.is_zero():
        raise ZeroDivisorError("rgcd(0, 0) is undefined")
    tower = P.tower
    one = SkewPoly.one(tower)
    zero = SkewPoly.zero(tower)
    r0, r1 = P, Q
    a0, a1 = one, zero
    b0, b1 = zero, one
    while not r1.is_zero():
        u, rem = r0.divmod(r1, "right")
        r0, r1 = r1, rem
        a0, a1 = a1, a0 - u * a1
        b0, b1 = b1, b0 - u * b1
    lead_inv = FieldElem(tower.K, tower.K.inv(r0.coeffs[-1]))
    return (r0.scale_left(lead_inv), a0.scale_left(lead_inv),
            b0.scale_left(lead_inv))


def llcm(P, Q):
    """Monic left least common multiple (extended right Euclid)."""
    if P.is_zero() or Q.is_zero():
        raise ZeroDivisorError("llcm of the zero polynomial is undefined")
    tower = P.tower
    one = SkewPoly.one(tower)
    zero = SkewPoly.zero(tower)
    r0, r1 = P, Q
    a0, a1 = one, zero
    while not r1.is_zero():
        u, rem = r0.divmod(r1, "right")
        r0, r1 = r1, rem
        a0, a1 = a1, a0 - u * a1
    # a1 * P = -b1 * Q is the minimal common left multiple
    return (a1 * P).monic()


class LinearizedPoly:
    """L = sum a_i X^(q^i): the q-linearized counterpart of a skew polynomial."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        self.tower = tower
        self.coeffs = tuple(coeffs)

    def __eq__(self, other):
        if not isinstance(other, LinearizedPoly):
            return NotImplemented
        return (self.tower.signature == other.tower.signature
                and self.coeffs == other.coeffs)

    def __str__(self):
        K = self.tower.K
        q = self.tower.q
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == K.zero:
                continue
            cs = K.fmt(c)
            if any(op in cs for op in "+-*"):
                cs = f"({cs})"
            head = f"Z^{q ** k}" if k > 0 else "Z"
            terms.append(head if cs == "1" else f"{cs}*{head}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"LinearizedPoly({self})"


def to_linearized(P):
    """Degree-preserving bijection SkewPoly -> LinearizedPoly."""
    return LinearizedPoly(P.tower, P.coeffs)


def from_linearized(L):
    return SkewPoly(L.tower, L.coeffs)


def linearized_eval(L, z, embed=None):
    """Evaluate L at z. z may live in the tower itself or in any extension
    of F_q reached through `embed` (a map on raw coefficient values)."""
    tower = L.tower
    if isinstance(z, FieldElem):
        E = z.field
        zraw = z.raw
    else:
        raise DomainError("evaluation point must be a field element")
    if embed is None:
        if E.signature != tower.K.signature:
            raise TowerMismatchError("evaluation point outside the tower; "
                                     "supply an embedding")
        embed = lambda c: c
    acc = E.zero
    power = zraw  # z^(q^i), advanced by the q-power Frobenius of E
    for i, c in enumerate(L.coeffs):
        if c != tower.K.zero:
            acc = E.add(acc, E.mul(embed(c), power))
        if i + 1 < len(L.coeffs):
            power = E.frobenius(power, 1)
    return FieldElem(E, acc)


def central_lift(tower, Q):
    """Substitute Y -> X^r in a commutative polynomial over F_q, producing a
    central skew polynomial."""
    if Q.field.signature != tower.Fq.signature:
        raise DomainError("central lift needs coefficients in F_q")
    K = tower.K
    r = tower.r
    out = [K.zero] * (r * Q.degree + 1) if not Q.is_zero() else []
    for i, c in enumerate(Q.coeffs):
        out[r * i] = K.embed(c)
    return SkewPoly(tower, out)
