"""Buchberger Gröbner engine: canonical ideal arithmetic over F_p.

Reduced Gröbner bases (unique per monomial order) back every ideal test in
the workbench: normal forms, membership, containment, elimination, bracket
powers, and minor ideals.  The engine is the plain Buchberger algorithm with
the two standard criteria (coprime leading terms, chain criterion), a hard
S-pair budget, and full tail reduction.  No signature-based shortcuts.

Quotient-ring computation happens in the ambient polynomial ring by
adjoining the defining ideal; there is no separate quotient arithmetic layer.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

from .errors import PreconditionError, ResourceBudgetError
from .polyring import GREVLEX, Monomial, MonomialOrder, Polynomial, PolyRing

DEFAULT_SPAIR_BUDGET = 200_000

# Deterministic cumulative S-pair counter, surfaced in workbench reports.
_spair_steps = 0


def spair_steps() -> int:
    return _spair_steps


def set_default_spair_budget(n: int) -> None:
    global DEFAULT_SPAIR_BUDGET
    if n < 1:
        raise PreconditionError("budget must be positive")
    DEFAULT_SPAIR_BUDGET = n


class Ideal:
    """Ideal in a named ambient ring, with cached reduced bases per order."""

    __slots__ = ("ring", "gens", "_gb_cache")

    def __init__(self, ring: PolyRing, gens=()):
        self.ring = ring
        cleaned = []
        for g in gens:
            if g.ring != ring:
                raise PreconditionError("generator from mismatched ambient ring")
            if not g.is_zero():
                cleaned.append(g)
        self.gens = tuple(cleaned)
        self._gb_cache: dict = {}

    def groebner(self, order: MonomialOrder = GREVLEX, budget: int | None = None):
        cached = self._gb_cache.get(order)
        if cached is not None:
            return cached
        basis = _reduced_groebner(self.gens, self.ring, order, budget)
        # Idempotent write of a canonical value; benign under concurrency.
        self._gb_cache[order] = basis
        return basis

    def normal_form(self, f: Polynomial, order: MonomialOrder = GREVLEX,
                    budget: int | None = None) -> Polynomial:
        if f.ring != self.ring:
            raise PreconditionError("polynomial from mismatched ambient ring")
        return _divide(f, self.groebner(order, budget), order)

    def contains_poly(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return self.normal_form(f, order).is_zero()

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"


# ---------------------------------------------------------------------------
# division and Buchberger


def _divide(f: Polynomial, basis, order: MonomialOrder) -> Polynomial:
    """Full (tail-reduced) remainder of f on division by `basis`."""
    if not basis:
        return f
    ring = f.ring
    p = ring.field.p
    divisors = [(g.leading(order)[0], ring.field.inv(g.leading(order)[1]), g) for g in basis]
    work = dict(f.terms)
    remainder: dict = {}
    key = order.key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = None
        for lm, lcinv, g in divisors:
            if lm.divides(m):
                hit = (lm, lcinv, g)
                break
        if hit is None:
            remainder[m] = c
            continue
        lm, lcinv, g = hit
        q = m.quotient(lm)
        scale = (c * lcinv) % p
        for mg, cg in g.terms.items():
            if mg == lm:
                continue
            mm = mg.mul(q)
            cc = (work.get(mm, 0) - scale * cg) % p
            if cc:
                work[mm] = cc
            else:
                work.pop(mm, None)
    return Polynomial(ring, remainder)


def _monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    _, c = f.leading(order)
    if c == 1:
        return f
    return f * f.ring.field.inv(c)


def _spoly(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    ring = f.ring
    lmf, lcf = f.leading(order)
    lmg, lcg = g.leading(order)
    lcm = lmf.lcm(lmg)
    mf = Polynomial(ring, {lcm.quotient(lmf): ring.field.inv(lcf)})
    mg = Polynomial(ring, {lcm.quotient(lmg): ring.field.inv(lcg)})
    return mf * f - mg * g


def _reduced_groebner(gens, ring: PolyRing, order: MonomialOrder,
                      budget: int | None):
    global _spair_steps
    if budget is None:
        budget = DEFAULT_SPAIR_BUDGET
    basis = [_monic(g, order) for g in gens if not g.is_zero()]
    if basis:
        lead = [g.leading(order)[0] for g in basis]
        heap: list = []
        pending: set = set()
        for i, j in itertools.combinations(range(len(basis)), 2):
            lcm = lead[i].lcm(lead[j])
            heapq.heappush(heap, (order.key(lcm), i, j))
            pending.add((i, j))
        steps = 0
        while heap:
            _, i, j = heapq.heappop(heap)
            if (i, j) not in pending:
                continue
            pending.discard((i, j))
            lcm = lead[i].lcm(lead[j])
            if lead[i].is_coprime(lead[j]):
                continue
            skip = False
            for k in range(len(basis)):
                if k in (i, j) or not lead[k].divides(lcm):
                    continue
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
            if skip:
                continue
            steps += 1
            _spair_steps += 1
            if steps > budget:
                raise ResourceBudgetError(budget)
            r = _divide(_spoly(basis[i], basis[j], order), basis, order)
            if r.is_zero():
                continue
            r = _monic(r, order)
            new = len(basis)
            basis.append(r)
            lead.append(r.leading(order)[0])
            for k in range(new):
                lcm = lead[k].lcm(lead[new])
                heapq.heappush(heap, (order.key(lcm), k, new))
                pending.add((k, new))

    # Minimalize: drop elements whose lead is divisible by another lead.
    basis.sort(key=lambda g: order.key(g.leading(order)[0]))
    minimal: list = []
    for g in basis:
        lm = g.leading(order)[0]
        if any(h.leading(order)[0].divides(lm) for h in minimal):
            continue
        minimal.append(g)
    # Tail-reduce each element against the others.
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = _divide(g, others, order) if others else g
        reduced.append(_monic(r, order))
    reduced.sort(key=lambda g: order.key(g.leading(order)[0]), reverse=True)
    return tuple(reduced)


# ---------------------------------------------------------------------------
# public operations


def reduced_groebner(I: Ideal, order: MonomialOrder = GREVLEX,
                     budget: int | None = None):
    """The unique reduced Gröbner basis of I under `order` (cached)."""
    return I.groebner(order, budget)


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX,
                budget: int | None = None) -> Polynomial:
    """Remainder of f modulo I; zero iff f lies in I.  Idempotent, F_p-linear."""
    return I.normal_form(f, order, budget)


def ideal_contains(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    """True iff J is a subset of I (every generator of J reduces to zero)."""
    if I.ring != J.ring:
        raise PreconditionError("ideals from mismatched ambient rings")
    return all(I.normal_form(g, order).is_zero() for g in J.gens)


def ideal_equal(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    return ideal_contains(I, J, order) and ideal_contains(J, I, order)


def frobenius_power_ideal(I: Ideal, k: int) -> Ideal:
    """The bracket power generated by the p^k-th powers of the generators."""
    if k < 0:
        raise PreconditionError("frobenius power needs k >= 0")
    return Ideal(I.ring, tuple(g.frobenius_power(k) for g in I.gens))


def eliminate(I: Ideal, keep, budget: int | None = None) -> Ideal:
    """Intersection of I with F_p[keep], presented in the smaller ring.

    Computed with a block elimination order placing the dropped variables in
    the leading block; `keep` is a subset of the ambient variable names.
    """
    ring = I.ring
    keep = [k if isinstance(k, str) else ring.names[k] for k in keep]
    keep_set = set(keep)
    if not keep_set <= set(ring.names):
        raise PreconditionError(f"keep set {keep} not a subset of {ring.names}")
    drop_idx = [i for i, n in enumerate(ring.names) if n not in keep_set]
    keep_idx = [i for i, n in enumerate(ring.names) if n in keep_set]
    target = PolyRing(ring.field, tuple(ring.names[i] for i in keep_idx))
    if not drop_idx:
        return Ideal(target, tuple(
            target.from_terms({Monomial(tuple(m[i] for i in keep_idx)): c
                               for m, c in g.terms.items()})
            for g in I.gens))
    order = MonomialOrder("block", perm=tuple(drop_idx + keep_idx), split=len(drop_idx))
    basis = I.groebner(order, budget)
    out = []
    for g in basis:
        if any(any(m[i] for i in drop_idx) for m in g.terms):
            continue
        out.append(target.from_terms(
            {Monomial(tuple(m[i] for i in keep_idx)): c for m, c in g.terms.items()}))
    return Ideal(target, tuple(out))


def _det(rows) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    ring = rows[0][0].ring
    out = ring.zero()
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def minors_ideal(matrix, t: int, ring: PolyRing | None = None) -> Ideal:
    """Ideal of all t x t minors of a polynomial matrix; t = 0 gives (1)."""
    rows = [list(r) for r in matrix]
    if ring is None:
        if not rows or not rows[0]:
            raise PreconditionError("empty matrix needs an explicit ring")
        ring = rows[0][0].ring
    nrows, ncols = len(rows), (len(rows[0]) if rows else 0)
    if t == 0:
        return Ideal(ring, (ring.one(),))
    if t < 0 or t > min(nrows, ncols):
        raise PreconditionError(
            f"minor size {t} outside 0..min({nrows}, {ncols})")
    gens = []
    for ri in itertools.combinations(range(nrows), t):
        for ci in itertools.combinations(range(ncols), t):
            d = _det([[rows[i][j] for j in ci] for i in ri])
            if not d.is_zero():
                gens.append(d)
    return Ideal(ring, tuple(gens))


@dataclass(frozen=True)
class ModuleElement:
    """Element of a free module over an ambient ring: a vector of polynomials."""

    components: tuple

    def __post_init__(self):
        if not self.components:
            raise PreconditionError("module element needs at least one component")
        ring = self.components[0].ring
        if any(c.ring != ring for c in self.components):
            raise PreconditionError("components from mismatched ambient rings")

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"
