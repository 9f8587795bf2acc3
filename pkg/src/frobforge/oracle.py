"""Brute-force oracle on Artinian algebras: independent ground truth.

Everything here is exhaustive or pure linear algebra over F_p, built from a
standard-monomial basis and a multiplication table.  The oracle ships with
the library as test infrastructure; engine predicates never fall back to it
unless their contract names it explicitly.

The enumeration cap is dim <= 16 (65 536 elements at p = 2).
"""

from __future__ import annotations

import itertools

import numpy as np

from . import linalg
from .algebra import AlgebraMap, FPAlgebra
from .errors import EnumerationError
from .groebner import GREVLEX, Ideal
from .polyring import Monomial, Polynomial

DIM_CAP = 16
ELEMENT_CAP = 600_000


class FiniteAlgebraTable:
    """Standard-monomial basis and multiplication table of an Artinian algebra."""

    def __init__(self, algebra: FPAlgebra, basis, table: np.ndarray):
        self.algebra = algebra
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self.element_count = algebra.field.p ** self.dim
        self.table = table  # table[i, j] = coefficient vector of basis[i] * basis[j]
        self._index = {m: i for i, m in enumerate(self.basis)}

    def expand(self, f: Polynomial) -> np.ndarray:
        """Coefficient vector of f's residue class in the basis."""
        nf = self.algebra.nf(f)
        v = np.zeros(self.dim, dtype=np.int64)
        for m, c in nf.terms.items():
            v[self._index[m]] = c
        return v

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.algebra.field.p
        return np.einsum("i,j,ijk->k", a % p, b % p, self.table) % p

    def elements(self) -> np.ndarray:
        """All p^dim coefficient vectors, one per row."""
        p = self.algebra.field.p
        if self.dim == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices((p,) * self.dim).reshape(self.dim, -1).T
        return grids.astype(np.int64)


def enumerate_algebra(A: FPAlgebra, dim_cap: int = DIM_CAP) -> FiniteAlgebraTable:
    """Basis and multiplication table; errors on infinite-dimensional input."""
    basis = standard_monomials(A, dim_cap)
    dim = len(basis)
    table = np.zeros((dim, dim, dim), dtype=np.int64)
    index = {m: i for i, m in enumerate(basis)}
    ring = A.ring
    for i, mi in enumerate(basis):
        for j in range(i, dim):
            mj = basis[j]
            prod = A.nf(Polynomial(ring, {mi.mul(mj): 1}))
            for m, c in prod.terms.items():
                table[i, j, index[m]] = c
                table[j, i, index[m]] = c
    return FiniteAlgebraTable(A, basis, table)


def standard_monomials(A: FPAlgebra, dim_cap: int = DIM_CAP):
    """Monomials outside the leading-term ideal of the reduced basis."""
    basis = A.relations.groebner(GREVLEX)
    ring = A.ring
    if any(g.is_constant() and not g.is_zero() for g in basis):
        return ()  # zero ring
    leads = [g.leading(GREVLEX)[0] for g in basis]
    bounds = []
    for i in range(ring.nvars):
        pure = [m[i] for m in leads if m[i] > 0 and sum(m) == m[i]]
        if not pure:
            raise EnumerationError(
                f"infinite-dimensional: variable {ring.names[i]} has no pure-power leading term")
        bounds.append(min(pure))
    out = []
    for exps in itertools.product(*[range(b) for b in bounds]):
        m = Monomial(exps)
        if not any(lm.divides(m) for lm in leads):
            out.append(m)
            if len(out) > dim_cap:
                raise EnumerationError(f"dimension exceeds oracle cap {dim_cap}")
    out.sort(key=GREVLEX.key)
    return tuple(out)


def oracle_subring_closure(f: AlgebraMap) -> bool:
    """Does S^p together with the image of f generate all of S?

    The p-th power map is F_p-linear, so the closure is computed as a
    subspace fixed point: start from span{1, basis^p, f(basis of R)} and
    close under products; the cardinality comparison p^dim against p^dim(S)
    is the dimension comparison.
    """
    S = f.codomain
    tabS = enumerate_algebra(S)
    p = S.field.p
    if tabS.dim == 0:
        return True  # zero ring: vacuously closed
    rows = [tabS.expand(S.ring.one())]
    ring = S.ring
    for m in tabS.basis:
        rows.append(tabS.expand(Polynomial(ring, {m: 1}).frobenius_power(1)))
    for img in f.images:  # the image subring is generated by these
        rows.append(tabS.expand(img))
    V = np.array(rows, dtype=np.int64)
    Vr, piv = linalg.rref(V, p)
    V = Vr[: len(piv)]
    while True:
        dim_before = V.shape[0]
        products = [tabS.multiply(a, b) for a in V for b in V]
        stacked = np.vstack([V] + [pr.reshape(1, -1) for pr in products])
        Vr, piv = linalg.rref(stacked, p)
        V = Vr[: len(piv)]
        if V.shape[0] == dim_before:
            break
    return V.shape[0] == tabS.dim


def oracle_map_bijective(psi: AlgebraMap) -> bool:
    """Evaluate psi on every element of the domain and count images."""
    tabD = enumerate_algebra(psi.domain)
    tabC = enumerate_algebra(psi.codomain)
    if tabD.element_count > ELEMENT_CAP or tabC.element_count > ELEMENT_CAP:
        raise EnumerationError("element count exceeds oracle cap")
    p = psi.domain.field.p
    if tabD.dim == 0:
        return tabC.dim == 0
    # psi is additive, so images of all elements come from basis images.
    M = np.array(
        [tabC.expand(psi.apply(Polynomial(psi.domain.ring, {m: 1}))) for m in tabD.basis],
        dtype=np.int64,
    )
    elements = tabD.elements()
    images = (elements @ M) % p
    distinct = np.unique(images, axis=0).shape[0]
    injective = distinct == tabD.element_count
    surjective = distinct == tabC.element_count
    return injective and surjective


def oracle_ideal_membership(f: Polynomial, I: Ideal, max_degree: int = 24) -> bool:
    """Linear-algebra ideal membership for Artinian ideals, Buchberger-free.

    A Macaulay span of generator multiples yields, for each variable, a
    monic univariate polynomial h_i(x_i) inside the ideal (it exists exactly
    when the quotient is finite-dimensional).  Division by the triangular
    set {h_i} is canonical because the leading terms are pairwise coprime
    pure powers, so the quotient by (h_1, ..., h_n) is an explicit
    finite-dimensional space; inside it the ideal becomes the subspace
    closure of the reduced generators under multiplication by variables,
    and membership is a row-span test.
    """
    ring = f.ring
    p = ring.field.p
    gens = [g for g in I.gens if not g.is_zero()]
    if not gens:
        return f.is_zero()
    if ring.nvars == 0:
        return True  # a nonzero constant generates everything
    maxg = max(g.degree() for g in gens)

    triangular = None
    D = maxg + 2
    while D <= max_degree:
        found = _univariate_members(gens, ring, D)
        if found is not None:
            triangular = found
            break
        D += 2
    if triangular is None:
        raise EnumerationError(
            "could not locate univariate ideal members; quotient may be infinite-dimensional")

    from .groebner import _divide  # plain multivariate division, confluent here

    def red(g):
        return _divide(g, triangular, GREVLEX)

    degrees = [h.leading(GREVLEX)[0].degree() for h in triangular]
    box = [Monomial(e) for e in itertools.product(*[range(d) for d in degrees])]
    index = {m: i for i, m in enumerate(box)}

    def expand(g):
        v = np.zeros(len(box), dtype=np.int64)
        for m, c in g.terms.items():
            v[index[m]] = c
        return v

    K = np.array([expand(red(g)) for g in gens], dtype=np.int64)
    while True:
        Kr, piv = linalg.rref(K, p)
        K = Kr[: len(piv)]
        before = K.shape[0]
        extra = []
        for row in K:
            poly = ring.from_terms({box[i]: int(c) for i, c in enumerate(row) if c})
            for i in range(ring.nvars):
                extra.append(expand(red(ring.var(i) * poly)))
        K2 = np.vstack([K] + [e.reshape(1, -1) for e in extra]) if extra else K
        if linalg.rank(K2, p) == before:
            break
        K = K2
    return linalg.in_row_span(K, expand(red(f)), p)


def _univariate_members(gens, ring, D):
    """For each variable, a monic univariate member of (gens) found by
    linear algebra on the degree-D Macaulay span; None if any is missing."""
    p = ring.field.p
    monos = _monomials_upto(ring.nvars, D)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        for m in _monomials_upto(ring.nvars, D - g.degree()):
            mg = Polynomial(ring, {m: 1}) * g
            row = np.zeros(len(monos), dtype=np.int64)
            for mm, c in mg.terms.items():
                row[index[mm]] = c
            rows.append(row)
    V = np.array(rows, dtype=np.int64)
    out = []
    for i in range(ring.nvars):
        powers = [Monomial(tuple(e if j == i else 0 for j in range(ring.nvars)))
                  for e in range(D + 1)]
        h = None
        for e in range(1, D + 1):
            lower = np.zeros((e, len(monos)), dtype=np.int64)
            for j in range(e):
                lower[j, index[powers[j]]] = 1
            target = np.zeros(len(monos), dtype=np.int64)
            target[index[powers[e]]] = 1
            sol = linalg.solve_row_combination(np.vstack([lower, V]), target, p)
            if sol is None:
                continue
            coeffs = sol[:e]
            h = ring.var(i) ** e - sum(
                (int(c) * ring.var(i) ** j for j, c in enumerate(coeffs) if c),
                ring.zero(),
            )
            break
        if h is None:
            return None
        out.append(h)
    return out


def _monomials_upto(nvars: int, d: int):
    out = []
    if d < 0:
        return out
    for exps in itertools.product(range(d + 1), repeat=nvars):
        if sum(exps) <= d:
            out.append(Monomial(exps))
    out.sort(key=GREVLEX.key)
    return out
