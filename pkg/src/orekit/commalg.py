"""Commutative univariate polynomials over fields in a tower.

Provides exact arithmetic, factorization (squarefree split, distinct-degree,
then Cantor-Zassenhaus equal-degree with seeded randomness and a re-expansion
check), irreducibility, and multiplicative root orders.
"""

import random

from sympy import factorint

from . import _polyraw as pr
from .errors import DomainError, TowerMismatchError, ZeroDivisorError
from .fields import FieldElem


class CommPoly:
    """Polynomial with ascending coefficient tuple; degree of 0 is -1."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field, coeffs=(), var="Y"):
        raws = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                if c.field.signature != field.signature:
                    raise TowerMismatchError("coefficient from a different field")
                raws.append(c.raw)
            elif isinstance(c, int):
                raws.append(field.from_int(c))
            else:
                raws.append(c)
        self.field = field
        self.coeffs = tuple(pr.strip(field, raws))
        self.var = var

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, field, var="Y"):
        return cls(field, (), var)

    @classmethod
    def one(cls, field, var="Y"):
        return cls(field, (field.one,), var)

    @classmethod
    def gen(cls, field, var="Y"):
        return cls(field, (field.zero, field.one), var)

    def _wrap(self, raws):
        return CommPoly(self.field, tuple(raws), self.var)

    def _check(self, other):
        if not isinstance(other, CommPoly):
            raise TypeError("expected CommPoly")
        if other.field.signature != self.field.signature:
            raise TowerMismatchError("polynomials over different fields")
        return other

    # -- basic queries ---------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def leading(self):
        return FieldElem(self.field, self.coeffs[-1])

    def constant(self):
        c = self.coeffs[0] if self.coeffs else self.field.zero
        return FieldElem(self.field, c)

    def __getitem__(self, i):
        c = self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero
        return FieldElem(self.field, c)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        return self._wrap(pr.add(self.field, self.coeffs, other.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        return self._wrap(pr.sub(self.field, self.coeffs, other.coeffs))

    def __neg__(self):
        return self._wrap(pr.neg(self.field, self.coeffs))

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return self._wrap(pr.mul_ground(self.field, self.coeffs, other.raw))
        other = self._check(other)
        return self._wrap(pr.mul(self.field, self.coeffs, other.coeffs))

    def __rmul__(self, other):
        if isinstance(other, FieldElem):
            return self._wrap(pr.mul_ground(self.field, self.coeffs, other.raw))
        return NotImplemented

    def __pow__(self, e):
        out = CommPoly.one(self.field, self.var)
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def __divmod__(self, other):
        other = self._check(other)
        q, r = pr.divmod_(self.field, self.coeffs, other.coeffs)
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        return (other % self).is_zero()

    def monic(self):
        return self._wrap(pr.monic(self.field, self.coeffs))

    def derivative(self):
        return self._wrap(pr.derivative(self.field, self.coeffs))

    def shift(self, k):
        return self._wrap(pr.shift(self.field, self.coeffs, k))

    def evaluate(self, x):
        if isinstance(x, int):
            x = FieldElem(self.field, self.field.from_int(x))
        if x.field.signature != self.field.signature:
            raise TowerMismatchError("evaluation point in a different field")
        return FieldElem(self.field, pr.evaluate(self.field, self.coeffs, x.raw))

    def map_coeffs(self, target_field, fn):
        """New polynomial over target_field with coefficients fn(raw)."""
        return CommPoly(target_field, [fn(c) for c in self.coeffs], self.var)

    # -- identity / ordering -------------------------------------------------------

    def key(self):
        """Canonical total-order key: (degree, ascending coefficient indexes)."""
        F = self.field
        return (len(self.coeffs), tuple(F.index(c) for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, CommPoly):
            return NotImplemented
        return (self.field.signature == other.field.signature
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.signature, self.coeffs))

    def __str__(self):
        F = self.field
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == F.zero:
                continue
            cs = F.fmt(c)
            if any(op in cs for op in "+-*"):
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                head = f"{self.var}^{k}" if k > 1 else self.var
                terms.append(head if cs == "1" else f"{cs}*{head}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"CommPoly({self})"

    def to_json(self):
        F = self.field
        if F.base is None:
            return [c for c in self.coeffs]
        return [F.fmt(c) for c in self.coeffs]


def gcd(a, b):
    a._check(b)
    return a._wrap(pr.gcd(a.field, a.coeffs, b.coeffs))


def pow_mod(base, e, modulus):
    base._check(modulus)
    return base._wrap(pr.pow_mod(base.field, base.coeffs, e, modulus.coeffs))


def _pth_root(F, f):
    """Inverse of Y -> Y^p on a polynomial with zero derivative."""
    p = F.p
    e = 1
    order = F.order
    while p ** e < order:
        e += 1
    root_exp = p ** (e - 1)  # c -> c^(p^(e-1)) inverts c -> c^p in F_{p^e}
    out = []
    for i in range(0, len(f), p):
        out.append(F.pow(f[i], root_exp))
    return pr.strip(F, out)


def _random_poly(F, max_deg, rng):
    return pr.strip(F, [F.rand(rng) for _ in range(max_deg + 1)])


def _edf(F, f, k, rng):
    """Split a monic squarefree product of degree-k irreducibles (Cantor-
    Zassenhaus; trace construction in characteristic 2)."""
    n = pr.deg(f)
    if n == k:
        return [f]
    q = F.order
    while True:
        rho = _random_poly(F, n - 1, rng)
        if pr.deg(rho) < 1:
            continue
        if F.p == 2:
            # absolute trace of rho into F_2, computed mod f
            e = 1
            while 2 ** e < q ** k:
                e += 1
            t = rho
            sq = rho
            for _ in range(e - 1):
                sq = pr.mul_mod(F, sq, sq, f)
                t = pr.add(F, t, sq)
        else:
            t = pr.sub(F, pr.pow_mod(F, rho, (q ** k - 1) // 2, f), [F.one])
        g = pr.gcd(F, t, f)
        if 0 < pr.deg(g) < n:
            other = pr.divmod_(F, f, g)[0]
            return _edf(F, g, k, rng) + _edf(F, other, k, rng)


def _factor_squarefree(F, f, rng):
    """Distinct-degree split of a monic squarefree f, then equal-degree."""
    out = []
    k = 1
    y = [F.zero, F.one]
    power = pr.rem(F, y, f)
    q = F.order
    while pr.deg(f) >= 2 * k:
        power = pr.pow_mod(F, power, q, f)
        g = pr.gcd(F, pr.sub(F, power, y), f)
        if pr.deg(g) > 0:
            out.extend(_edf(F, g, k, rng))
            f = pr.divmod_(F, f, g)[0]
            power = pr.rem(F, power, f)
        k += 1
    if pr.deg(f) > 0:
        out.append(f)
    return out


def _factor_raw(F, f, rng):
    """Monic f -> dict key -> [poly, multiplicity]."""
    if pr.deg(f) == 0:
        return {}
    df = pr.derivative(F, f)
    if not df:
        sub = _factor_raw(F, _pth_root(F, f), rng)
        return {k: [g, m * F.p] for k, (g, m) in sub.items()}
    sqfree = pr.divmod_(F, f, pr.gcd(F, f, df))[0]
    out = {}
    rest = f
    for g in _factor_squarefree(F, sqfree, rng):
        m = 0
        while True:
            quo, r = pr.divmod_(F, rest, g)
            if r:
                break
            rest = quo
            m += 1
        out[tuple(g)] = [g, m]
    if pr.deg(rest) > 0:
        for k, (g, m) in _factor_raw(F, rest, rng).items():
            if k in out:
                out[k][1] += m
            else:
                out[k] = [g, m]
    return out


def factor(Q, rng=None):
    """Full factorization of a nonzero polynomial into monic irreducibles.

    Returns [(factor, multiplicity)] sorted by the factors' canonical keys;
    the re-expansion (times the leading coefficient) is verified to equal Q.
    """
    if Q.is_zero():
        raise ZeroDivisorError("cannot factor the zero polynomial")
    rng = rng if rng is not None else random.Random(0xC2)
    F = Q.field
    lead = Q.leading()
    parts = _factor_raw(F, pr.monic(F, Q.coeffs), rng)
    out = [(Q._wrap(g), m) for g, m in parts.values()]
    out.sort(key=lambda t: t[0].key())
    check = CommPoly.one(F, Q.var) * lead
    for g, m in out:
        check = check * g ** m
    if check != Q:
        raise RuntimeError("factorization failed verification")
    return out


def is_irreducible(Q):
    """Irreducibility over Q's own field (Rabin gcd ladder)."""
    if Q.degree < 1:
        raise DomainError("irreducibility is defined for degree >= 1")
    return pr.is_irreducible(Q.field, list(Q.coeffs))


def poly_order(Q):
    """Smallest e with Q | Y^e - 1, for Q irreducible with Q(0) != 0.

    This is the common multiplicative order of the roots of Q; it divides
    q^deg(Q) - 1 and is computed by descending from that bound through the
    prime factorization of the exponent."""
    if Q.degree < 1 or not is_irreducible(Q):
        raise DomainError("poly_order requires an irreducible polynomial")
    if not Q.constant():
        raise DomainError("poly_order requires a nonzero constant term")
    F = Q.field
    e = F.order ** Q.degree - 1
    y = [F.zero, F.one]
    for ell in factorint(e):
        while e % ell == 0:
            if pr.pow_mod(F, y, e // ell, list(Q.coeffs)) != [F.one]:
                break
            e //= ell
    return e
