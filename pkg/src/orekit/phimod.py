"""phi-modules over F_{q^r}: companion construction, semi-characteristic
polynomials, the twisted product E(G, r), the Psi map, optimal central
bounds, similarity testing, and irreducible right-divisor enumeration.
"""

import os

from . import linalg
from .commalg import CommPoly
from .errors import (BudgetExceededError, DomainError, NotMonicError,
                     ZeroConstantTermError)
from .fields import FieldElem
from .linalg import Matrix
from .skewpoly import SkewPoly, central_lift, rgcd

DEFAULT_ENUM_BUDGET = 10 ** 6


def enum_budget(budget=None):
    if budget is not None:
        return budget
    env = os.environ.get("OREKIT_BUDGET")
    return int(env) if env else DEFAULT_ENUM_BUDGET


class PhiModule:
    """Finite-dimensional F_{q^r}-space with a sigma-semi-linear map phi,
    stored as the matrix G of phi in a distinguished basis."""

    __slots__ = ("tower", "matrix", "dim")

    def __init__(self, tower, matrix):
        if not matrix.is_square():
            raise DomainError("phi-module matrix must be square")
        if matrix.field.signature != tower.K.signature:
            raise DomainError("phi-module matrix must live over F_{q^r}")
        self.tower = tower
        self.matrix = matrix
        self.dim = matrix.nrows

    def is_etale(self):
        return linalg.is_invertible(self.matrix)

    def coerce_vector(self, x):
        K = self.tower.K
        out = []
        for c in x:
            if isinstance(c, FieldElem):
                out.append(c.raw)
            elif isinstance(c, int):
                out.append(K.from_int(c))
            else:
                out.append(c)
        if len(out) != self.dim:
            raise DomainError("vector length does not match the dimension")
        return out

    def apply(self, vec):
        """phi(x) = G * sigma(x)."""
        K = self.tower.K
        return self.matrix.mat_vec([K.frobenius(c, 1) for c in vec])

    def __repr__(self):
        return f"PhiModule(dim={self.dim}, tower={self.tower!r})"


class Submodule:
    """A phi-stable subspace: echelonized basis plus the induced matrices on
    the subspace and on the quotient."""

    __slots__ = ("module", "basis", "sub_matrix", "quot_matrix")

    def __init__(self, module, basis, sub_matrix, quot_matrix):
        self.module = module
        self.basis = basis
        self.sub_matrix = sub_matrix
        self.quot_matrix = quot_matrix

    @property
    def dim(self):
        return len(self.basis)


def companion(P):
    """The phi-module D_P: phi(e_i) = e_(i+1), phi(e_(d-1)) = sum a_i e_i
    where P = X^d - sum a_i X^i."""
    if not P.is_monic():
        raise NotMonicError("companion module needs a monic polynomial")
    if P.degree < 1:
        raise DomainError("companion module needs degree >= 1")
    tower = P.tower
    K = tower.K
    d = P.degree
    rows = [[K.zero] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = K.one
    for i in range(d):
        rows[i][d - 1] = K.neg(P.coeffs[i])
    return PhiModule(tower, Matrix(K, rows))


def phi_apply(M, x, k):
    """phi^k(x) by k semi-linear applications."""
    if k < 0:
        raise DomainError("phi power must be >= 0")
    vec = M.coerce_vector(x)
    for _ in range(k):
        vec = M.apply(vec)
    return [FieldElem(M.tower.K, c) for c in vec]


def _span_solve(K, vectors, target):
    """Coefficients expressing target in the span of vectors, or None."""
    if not vectors:
        return [] if all(c == K.zero for c in target) else None
    cols = Matrix(K, [list(row) for row in zip(*vectors)])
    return linalg.solve(cols, target)


def semi_char(M, x):
    """The monic degree-d skew polynomial annihilating x: solved from the
    iterate sequence; for non-generators the semi-characteristic polynomial
    of the generated submodule times X^(d - dim)."""
    tower = M.tower
    K = tower.K
    d = M.dim
    vec = M.coerce_vector(x)
    iterates = []
    cur = vec
    while True:
        coeffs = _span_solve(K, iterates, cur)
        if coeffs is not None:
            s = len(iterates)
            inner = [K.neg(c) for c in coeffs] + [K.one]
            return SkewPoly(tower, inner).shift(d - s)
        iterates.append(cur)
        cur = M.apply(cur)


def submodule_generated(M, x):
    """Smallest phi-stable subspace containing x, with induced matrices."""
    tower = M.tower
    K = tower.K
    vec = M.coerce_vector(x)
    iterates = []
    cur = vec
    while _span_solve(K, iterates, cur) is None:
        iterates.append(cur)
        cur = M.apply(cur)
    if not iterates:
        basis = []
    else:
        rows = [row[:] for row in iterates]
        linalg._rref(K, rows)
        basis = [r for r in rows if any(c != K.zero for c in r)]
    s = len(basis)
    d = M.dim
    # complement spanned by standard vectors at non-pivot coordinates
    pivots = []
    for r in basis:
        pivots.append(next(i for i, c in enumerate(r) if c != K.zero))
    frees = [i for i in range(d) if i not in pivots]
    full = [list(b) for b in basis]
    for i in frees:
        e = [K.zero] * d
        e[i] = K.one
        full.append(e)
    cols = Matrix(K, [list(row) for row in zip(*full)]) if full else None
    sub_cols, quot_cols = [], []
    for b in basis:
        img = M.apply(b)
        sol = linalg.solve(cols, img)
        if sol is None or any(c != K.zero for c in sol[s:]):
            raise RuntimeError("submodule is not phi-stable")
        sub_cols.append(sol[:s])
    for i in frees:
        e = [K.zero] * d
        e[i] = K.one
        img = M.apply(e)
        sol = linalg.solve(cols, img)
        quot_cols.append(sol[s:])
    sub_matrix = (Matrix(K, [list(r) for r in zip(*sub_cols)])
                  if sub_cols else Matrix(K, []))
    quot_matrix = (Matrix(K, [list(r) for r in zip(*quot_cols)])
                   if quot_cols else Matrix(K, []))
    return Submodule(M, basis, sub_matrix, quot_matrix)


def sigma_matrix(M, t):
    """Entrywise sigma^t."""
    K = M.field
    return M.map_entries(lambda c: K.frobenius(c, t))


def twisted_product(G, r):
    """E(G, r) = G sigma(G) ... sigma^(r-1)(G), by divide and conquer."""
    if r < 1:
        raise DomainError("twisted product needs r >= 1")
    if r == 1:
        return G
    if r % 2 == 0:
        half = twisted_product(G, r // 2)
        return half * sigma_matrix(half, r // 2)
    half = twisted_product(G, (r - 1) // 2)
    return G * sigma_matrix(half * sigma_matrix(half, (r - 1) // 2), 1)


def gamma0(P):
    """The matrix of phi^r on D_P."""
    return twisted_product(companion(P).matrix, P.tower.r)


def _to_fq_poly(tower, poly_over_K):
    K = tower.K
    return poly_over_K.map_coeffs(tower.Fq, K.project)


def psi(P):
    """Psi(P): the characteristic polynomial of phi^r on D_P, an element of
    F_q[Y] of the same degree as P."""
    if not P.is_monic():
        raise NotMonicError("Psi is defined for monic polynomials")
    tower = P.tower
    if P.degree == 0:
        return CommPoly.one(tower.Fq)
    cp = linalg.char_poly(gamma0(P))
    return _to_fq_poly(tower, cp)


def min_poly_gamma0(P):
    """Minimal polynomial of phi^r on D_P, coerced into F_q[Y]."""
    return _to_fq_poly(P.tower, linalg.min_poly(gamma0(P)))


def _require_etale(P):
    if not P.constant_term():
        raise ZeroConstantTermError(
            "operation requires a nonzero constant term (etale phi-module)")


def optimal_bound(P):
    """The lowest-degree central multiple of P: min poly of phi^r, lifted
    through Y -> X^r."""
    if not P.is_monic():
        raise NotMonicError("optimal bound is defined for monic polynomials")
    _require_etale(P)
    bound = central_lift(P.tower, min_poly_gamma0(P))
    assert P.right_divides(bound), "optimal bound failed divisibility check"
    return bound


def bound(P):
    """The central multiple Psi(P)(X^r) (not necessarily optimal)."""
    if not P.is_monic():
        raise NotMonicError("bound is defined for monic polynomials")
    _require_etale(P)
    return central_lift(P.tower, psi(P))


def similarity_key(P):
    """Canonical invariant: the invariant factors of phi^r over F_q."""
    factors = linalg.invariant_factors(gamma0(P))
    return tuple(_to_fq_poly(P.tower, f).key() for f in factors)


def is_similar(P, Q):
    """Similarity test through conjugacy of the twisted products."""
    if P.degree != Q.degree:
        raise DomainError("similarity test needs equal degrees")
    if not (P.is_monic() and Q.is_monic()):
        raise NotMonicError("similarity test needs monic polynomials")
    _require_etale(P)
    _require_etale(Q)
    return similarity_key(P) == similarity_key(Q)


def irreducible_right_divisors(P, Qi, budget=None):
    """All monic irreducible right-divisors of P whose Psi-class is Qi.

    Every such divisor right-divides rgcd(P, Qi(X^r)); when that rgcd has
    degree deg Qi it is itself the unique divisor, otherwise the monic
    degree-deg(Qi) candidates are swept by exhaustive trial division."""
    if not P.is_monic():
        raise NotMonicError("divisor enumeration needs a monic polynomial")
    _require_etale(P)
    tower = P.tower
    K = tower.K
    if Qi.field.signature != tower.Fq.signature:
        raise DomainError("class polynomial must live in F_q[Y]")
    if not Qi.divides(psi(P)):
        raise DomainError("class polynomial does not divide Psi(P)")
    delta = Qi.degree
    core = rgcd(P, central_lift(tower, Qi))[0]
    if core.degree == delta:
        return [core]
    qr = K.order
    n_candidates = (qr - 1) * qr ** (delta - 1)
    cap = enum_budget(budget)
    if n_candidates > cap:
        raise BudgetExceededError(
            f"divisor enumeration needs {n_candidates} candidates "
            f"(budget {cap})")
    out = []
    for idx in range(n_candidates):
        c0 = 1 + idx % (qr - 1)
        rest = idx // (qr - 1)
        coeffs = [K.from_index(c0)]
        for _ in range(delta - 1):
            coeffs.append(K.from_index(rest % qr))
            rest //= qr
        coeffs.append(K.one)
        cand = SkewPoly(tower, coeffs)
        if cand.right_divides(core):
            out.append(cand)
    out.sort(key=lambda D: D.key())
    return out
