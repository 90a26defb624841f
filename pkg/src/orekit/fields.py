"""Finite field towers F_p < F_q = F_p[Y]/(f) < F_{q^r} = F_q[Z]/(h).

Raw element values are ints (prime fields) or fixed-length tuples of base
raws (extensions); FieldElem wraps a raw together with its field for
operator-style arithmetic. The q-power Frobenius sigma acts on F_{q^r}
through precomputed F_q-linear tables. Fields of order <= ZECH_LIMIT
additionally carry discrete log/exp tables so that multiplication in the
enumeration-heavy small fields is a pair of table lookups.
"""

import random

from sympy import factorint, isprime

from . import _polyraw as pr
from .errors import DomainError, TowerMismatchError, ZeroDivisorError

# Largest field order for which log/exp multiplication tables are built.
ZECH_LIMIT = 4096

# Extensions of degree <= this precompute all sigma^t tables eagerly.
_FROB_EAGER_LIMIT = 16


class PrimeField:
    """F_p with raw values the ints 0..p-1."""

    def __init__(self, p):
        self.p = p
        self.order = p
        self.degree = 1
        self.base = None
        self.zero = 0
        self.one = 1
        self.signature = ("prime", p)

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisorError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e):
        if e < 0:
            return pow(self.inv(x), -e, self.p)
        return pow(x, e, self.p)

    def from_int(self, n):
        return n % self.p

    def index(self, x):
        return x

    def from_index(self, i):
        return i

    def rand(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return (i for i in range(self.p))

    def frobenius(self, x, t=1):
        return x

    def fmt(self, x):
        return str(x)

    def __repr__(self):
        return f"PrimeField({self.p})"


class ExtensionField:
    """Degree-n extension base[Z]/(modulus); raws are length-n tuples."""

    def __init__(self, base, modulus, gen_symbol="w"):
        modulus = pr.strip(base, list(modulus))
        n = pr.deg(modulus)
        if n < 1:
            raise DomainError("extension modulus must have degree >= 1")
        if modulus[-1] != base.one:
            raise DomainError("extension modulus must be monic")
        self.base = base
        self.deg_over_base = n
        self.modulus = tuple(modulus)
        self.p = base.p
        self.order = base.order ** n
        self.degree = base.degree * n
        self.gen_symbol = gen_symbol
        self.zero = tuple([base.zero] * n)
        self.one = self._from_list([base.one])
        if n >= 2:
            self.gen = self._from_list([base.zero, base.one])
        else:
            self.gen = (base.neg(modulus[0]),)
        self.signature = ("ext", base.signature, self.modulus)
        # Z^(n+k) mod modulus for k = 0..n-2, used by schoolbook reduction.
        self._red = []
        red = [base.neg(c) for c in modulus[:-1]]
        for _ in range(max(0, n - 1)):
            self._red.append(list(red))
            red = [base.zero] + red
            if len(red) > n:
                lead = red.pop()
                if lead != base.zero:
                    red = [base.add(red[i], base.mul(lead, self._red[0][i]))
                           for i in range(n)]
        self._log = None
        self._exp = None
        if self.order <= ZECH_LIMIT:
            self._build_log_tables()
        self._frob = None

    # -- raw conversions ----------------------------------------------------

    def _from_list(self, coeffs):
        n = self.deg_over_base
        coeffs = list(coeffs)[:n]
        return tuple(coeffs + [self.base.zero] * (n - len(coeffs)))

    def from_int(self, n):
        return self._from_list([self.base.from_int(n)])

    def index(self, x):
        b = self.base.order
        out = 0
        for c in reversed(x):
            out = out * b + self.base.index(c)
        return out

    def from_index(self, i):
        b = self.base.order
        out = []
        for _ in range(self.deg_over_base):
            out.append(self.base.from_index(i % b))
            i //= b
        return tuple(out)

    def rand(self, rng):
        return tuple(self.base.rand(rng) for _ in range(self.deg_over_base))

    def elements(self):
        return (self.from_index(i) for i in range(self.order))

    def embed(self, c):
        """Embed a base-field raw as a constant."""
        return self._from_list([c])

    def project(self, x):
        """Inverse of embed; raises if x is not a base-field constant."""
        if any(c != self.base.zero for c in x[1:]):
            raise DomainError("element does not lie in the base field")
        return x[0]

    def in_base(self, x):
        return all(c == self.base.zero for c in x[1:])

    # -- arithmetic ----------------------------------------------------------

    def add(self, x, y):
        B = self.base
        return tuple(B.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        B = self.base
        return tuple(B.sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        B = self.base
        return tuple(B.neg(a) for a in x)

    def _mul_poly(self, x, y):
        B = self.base
        n = self.deg_over_base
        conv = [B.zero] * (2 * n - 1)
        for i, a in enumerate(x):
            if a == B.zero:
                continue
            for j, b in enumerate(y):
                conv[i + j] = B.add(conv[i + j], B.mul(a, b))
        out = conv[:n]
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c == B.zero:
                continue
            row = self._red[k - n]
            out = [B.add(out[i], B.mul(c, row[i])) for i in range(n)]
        return tuple(out)

    def mul(self, x, y):
        if self._log is not None:
            if x == self.zero or y == self.zero:
                return self.zero
            n = self.order - 1
            return self._exp[(self._log[x] + self._log[y]) % n]
        return self._mul_poly(x, y)

    def inv(self, x):
        if x == self.zero:
            raise ZeroDivisorError("inverse of zero")
        if self._log is not None:
            n = self.order - 1
            return self._exp[(-self._log[x]) % n]
        return self._pow_generic(x, self.order - 2)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def _pow_generic(self, x, e):
        out = self.one
        b = x
        while e:
            if e & 1:
                out = self._mul_poly(out, b)
            b = self._mul_poly(b, b)
            e >>= 1
        return out

    def pow(self, x, e):
        if e < 0:
            x, e = self.inv(x), -e
        if x == self.zero:
            return self.one if e == 0 else self.zero
        if self._log is not None:
            n = self.order - 1
            return self._exp[(self._log[x] * e) % n]
        return self._pow_generic(x, e % (self.order - 1)) if e else self.one

    # -- discrete log tables ---------------------------------------------------

    def _build_log_tables(self):
        n = self.order - 1
        prime_parts = list(factorint(n)) if n > 1 else []
        g = None
        for i in range(1, self.order):
            cand = self.from_index(i)
            if all(self._pow_generic(cand, n // ell) != self.one
                   for ell in prime_parts):
                g = cand
                break
        exp = [self.one]
        for _ in range(n - 1):
            exp.append(self._mul_poly(exp[-1], g))
        self._exp = exp
        self._log = {x: i for i, x in enumerate(exp)}

    # -- Frobenius (|base|-power map, base-linear) -----------------------------

    def _frob_matrix(self):
        """Images of the power basis under x -> x^|base|, as coefficient tuples."""
        q = self.base.order
        gq = self.pow(self.gen, q)
        cols = [self.one]
        for _ in range(self.deg_over_base - 1):
            cols.append(self.mul(cols[-1], gq))
        return cols

    def _apply_frob_cols(self, cols, x):
        B = self.base
        acc = self.zero
        for c, col in zip(x, cols):
            if c == B.zero:
                continue
            acc = tuple(B.add(a, B.mul(c, v)) for a, v in zip(acc, col))
        return acc

    def _ensure_frob(self):
        if self._frob is None:
            first = self._frob_matrix()
            tables = [None, first]
            if self.deg_over_base <= _FROB_EAGER_LIMIT:
                prev = first
                for _ in range(2, self.deg_over_base):
                    prev = [self._apply_frob_cols(first, col) for col in prev]
                    tables.append(prev)
            self._frob = tables

    def frobenius(self, x, t=1):
        """x^(|base|^t); t is reduced mod the extension degree."""
        n = self.deg_over_base
        t %= n
        if t == 0:
            return x
        self._ensure_frob()
        if t < len(self._frob):
            return self._apply_frob_cols(self._frob[t], x)
        out = x
        for _ in range(t):
            out = self._apply_frob_cols(self._frob[1], out)
        return out

    # -- printing ----------------------------------------------------------------

    def fmt(self, x):
        B = self.base
        sym = self.gen_symbol
        terms = []
        for k in range(self.deg_over_base - 1, -1, -1):
            c = x[k]
            if c == B.zero:
                continue
            cs = B.fmt(c)
            wrap = any(op in cs for op in "+-")
            if wrap:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                head = f"{sym}^{k}" if k > 1 else sym
                terms.append(head if cs == "1" else f"{cs}*{head}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"ExtensionField(order={self.order})"


class FieldElem:
    """A field element: raw value plus owning field, with exact arithmetic."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field.signature != self.field.signature:
                raise TowerMismatchError("elements of different fields")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.add(self.raw, raw))

    __radd__ = __add__

    def __sub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.sub(self.raw, raw))

    def __rsub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.sub(raw, self.raw))

    def __mul__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.mul(self.raw, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.div(self.raw, raw))

    def __rtruediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.field, self.field.div(raw, self.raw))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.raw))

    def __pow__(self, e):
        return FieldElem(self.field, self.field.pow(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return (self.field.signature == other.field.signature
                    and self.raw == other.raw)
        if isinstance(other, int):
            return self.raw == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.signature, self.raw))

    def __bool__(self):
        return self.raw != self.field.zero

    def __str__(self):
        return self.field.fmt(self.raw)

    def __repr__(self):
        return f"<{self}>"


class FieldTower:
    """The chain F_p < F_q < F_{q^r} with explicit moduli and sigma tables."""

    def __init__(self, p, a, r, f=None, h=None):
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise DomainError(f"p = {p} is not prime")
        if a < 1 or r < 1:
            raise DomainError("extension degrees must be >= 1")
        self.p = p
        self.a = a
        self.r = r
        self.q = p ** a
        self.Fp = PrimeField(p)

        if f is None:
            f = pr.first_irreducible(self.Fp, a)
        else:
            f = pr.strip(self.Fp, [self.Fp.from_int(c) for c in f])
            if pr.deg(f) != a:
                raise DomainError(f"modulus f must have degree a = {a}")
            if f[-1] != self.Fp.one:
                raise DomainError("modulus f must be monic")
            if not pr.is_irreducible(self.Fp, f):
                raise DomainError("modulus f is reducible over F_p")
        self.f = tuple(f)

        if a == 1:
            self.Fq = self.Fp
        else:
            self.Fq = ExtensionField(self.Fp, f, gen_symbol="v")

        if h is None:
            h = pr.first_irreducible(self.Fq, r)
        else:
            h = pr.strip(self.Fq, [self._coerce_fq(c) for c in h])
            if pr.deg(h) != r:
                raise DomainError(f"modulus h must have degree r = {r}")
            if h[-1] != self.Fq.one:
                raise DomainError("modulus h must be monic")
            if not pr.is_irreducible(self.Fq, h):
                raise DomainError("modulus h is reducible over F_q")
        self.h = tuple(h)
        self.K = ExtensionField(self.Fq, h, gen_symbol="w")
        self.signature = (p, a, r, self.f, self.h)

        # sigma = q-power Frobenius; spot-check the structural invariants.
        w = self.K.gen
        assert self.K.frobenius(w, r) == w, "sigma^r != id"
        c = self.K.embed(self.Fq.from_int(1) if a == 1 else self.Fq.gen)
        assert self.K.frobenius(c, 1) == c, "sigma moves the embedded F_q"

    def _coerce_fq(self, c):
        if isinstance(c, int):
            return self.Fq.from_int(c)
        if isinstance(c, FieldElem):
            if c.field.signature != self.Fq.signature:
                raise TowerMismatchError("coefficient not in F_q")
            return c.raw
        if self.a > 1 and isinstance(c, (list, tuple)):
            return self.Fq._from_list([self.Fp.from_int(x) for x in c])
        raise DomainError(f"cannot interpret {c!r} as an F_q element")

    # -- elements -------------------------------------------------------------

    def zero(self):
        return FieldElem(self.K, self.K.zero)

    def one(self):
        return FieldElem(self.K, self.K.one)

    def omega(self):
        """The class of the top modulus variable: generator of F_{q^r} over F_q."""
        return FieldElem(self.K, self.K.gen)

    def from_int(self, n):
        return FieldElem(self.K, self.K.from_int(n))

    def element(self, coeffs):
        """Build an element from its length-r coefficient sequence over F_q."""
        raws = [self._coerce_fq(c) for c in coeffs]
        if len(raws) > self.r:
            raise DomainError("too many coefficients")
        return FieldElem(self.K, self.K._from_list(raws))

    def elements(self):
        return (FieldElem(self.K, raw) for raw in self.K.elements())

    def embed_fq(self, c):
        return FieldElem(self.K, self.K.embed(self._coerce_fq(c)))

    def to_json(self):
        def fq_list(c):
            if self.a == 1:
                return [c]
            return list(c)
        return {
            "p": self.p,
            "a": self.a,
            "r": self.r,
            "f": list(self.f),
            "h": [fq_list(c) for c in self.h],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["p"], obj["a"], obj["r"], f=obj.get("f"), h=obj.get("h"))

    def __repr__(self):
        return f"FieldTower(p={self.p}, a={self.a}, r={self.r})"


def make_tower(p, a, r, f=None, h=None):
    """Construct the tower F_p < F_{p^a} < F_{p^(a r)}; moduli default to the
    lexicographically smallest monic irreducibles."""
    return FieldTower(p, a, r, f=f, h=h)


def arithmetic(x, y, kind):
    """Combine two elements of the same tower: kind in add|sub|mul|div."""
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    raise DomainError(f"unknown arithmetic kind {kind!r}")


def frobenius_power(x, t):
    """sigma^t(x) = x^(q^(t mod r)) via the precomputed sigma tables."""
    if t < 0:
        raise DomainError("Frobenius power must be >= 0")
    return FieldElem(x.field, x.field.frobenius(x.raw, t))


def is_in_Fq(x):
    """True iff sigma(x) = x, i.e. x lies in the embedded F_q."""
    return x.field.frobenius(x.raw, 1) == x.raw


def random_element(tower, seed):
    """Deterministic uniform draw; seed may be an int or a random.Random."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return FieldElem(tower.K, tower.K.rand(rng))
