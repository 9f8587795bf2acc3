"""Finitely presented F_p-algebras and their maps.

Every ring in the workbench is an FPAlgebra: a named polynomial ring modulo
a finitely generated ideal.  Maps are given by generator images and are
checked for well-definedness at construction.  Pushouts, Frobenius twists
S (x)_{R,F^k} R, relative Frobenius maps, kernels, image membership,
surjectivity, and isomorphism tests all reduce to block-order Gröbner
computations on graph ideals; there is no subalgebra-basis machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MapNotWellDefinedError, PreconditionError
from .groebner import (
    GREVLEX,
    Ideal,
    eliminate,
    ideal_contains,
    normal_form,
)
from .polyring import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolyRing,
    PrimeField,
    fresh_name,
)


class FPAlgebra:
    """F_p[vars]/relations.  The zero ring is allowed everywhere."""

    __slots__ = ("ring", "relations", "_is_zero")

    def __init__(self, ring: PolyRing, relations=None):
        self.ring = ring
        if relations is None:
            relations = Ideal(ring, ())
        elif not isinstance(relations, Ideal):
            relations = Ideal(ring, tuple(relations))
        if relations.ring != ring:
            raise PreconditionError("relations live in a different ambient ring")
        self.relations = relations
        self._is_zero = None

    @classmethod
    def free(cls, field: PrimeField, names) -> "FPAlgebra":
        """Polynomial algebra F_p[names] with no relations."""
        return cls(PolyRing(field, tuple(names)))

    @property
    def field(self) -> PrimeField:
        return self.ring.field

    @property
    def names(self):
        return self.ring.names

    def gens(self):
        return self.ring.gens()

    def nf(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        return self.relations.normal_form(f, order)

    def is_zero_ring(self) -> bool:
        if self._is_zero is None:
            self._is_zero = self.nf(self.ring.one()).is_zero()
        return self._is_zero

    def is_polynomial(self) -> bool:
        return self.relations.groebner() == ()

    def quotient_by(self, extra) -> "FPAlgebra":
        return FPAlgebra(self.ring, self.relations.gens + tuple(extra))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FPAlgebra)
            and other.ring == self.ring
            and other.relations.gens == self.relations.gens
        )

    __hash__ = None

    def __repr__(self) -> str:
        rel = ", ".join(str(g) for g in self.relations.gens)
        base = f"F_{self.field.p}[{', '.join(self.names)}]"
        return f"{base}/({rel})" if rel else base


class AlgebraMap:
    """Map of FPAlgebras given by one codomain polynomial per domain variable.

    Well-definedness (each domain relation maps to zero) is verified when the
    map is built; invalid images raise MapNotWellDefinedError.
    """

    __slots__ = ("domain", "codomain", "images", "_graph")

    def __init__(self, domain: FPAlgebra, codomain: FPAlgebra, images, check: bool = True):
        images = tuple(images)
        if len(images) != domain.ring.nvars:
            raise PreconditionError("one image per domain variable required")
        if any(f.ring != codomain.ring for f in images):
            raise PreconditionError("images live outside the codomain ambient ring")
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(codomain.nf(f) for f in images)
        self._graph = None
        if check:
            for g in domain.relations.gens:
                image = self.apply_raw(g)
                if not codomain.nf(image).is_zero():
                    raise MapNotWellDefinedError(g, image)

    @classmethod
    def identity(cls, A: FPAlgebra) -> "AlgebraMap":
        return cls(A, A, A.gens(), check=False)

    def apply_raw(self, f: Polynomial) -> Polynomial:
        return f.substitute(self.codomain.ring, list(self.images))

    def apply(self, f: Polynomial) -> Polynomial:
        """Image of f, normal-formed in the codomain."""
        if f.ring != self.domain.ring:
            raise PreconditionError("argument outside the domain ambient ring")
        return self.codomain.nf(self.apply_raw(f))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraMap)
            and other.domain == self.domain
            and other.codomain == self.codomain
            and other.images == self.images
        )

    __hash__ = None

    def __repr__(self) -> str:
        arrows = ", ".join(f"{n} -> {img}" for n, img in zip(self.domain.names, self.images))
        return f"AlgebraMap({{{arrows}}})"

    # -- graph ideal -------------------------------------------------------

    def graph(self):
        """Graph data: combined ring with codomain variables first.

        Returns (ring, ideal, split, dom_positions) where `split` is the
        codomain block size and dom_positions[i] locates domain variable i in
        the combined ring.  Eliminating the leading block computes kernels
        and preimages.
        """
        if self._graph is not None:
            return self._graph
        cod, dom = self.codomain.ring, self.domain.ring
        names = list(cod.names)
        dom_names = []
        for n in dom.names:
            nn = fresh_name(n if n not in names else n + "_d", set(names) | set(dom_names))
            dom_names.append(nn)
        combined = PolyRing(cod.field, tuple(names + dom_names))
        split = cod.nvars

        def lift_cod(f):
            return combined.from_terms(
                {Monomial(tuple(m) + (0,) * dom.nvars): c for m, c in f.terms.items()})

        def lift_dom(f):
            return combined.from_terms(
                {Monomial((0,) * split + tuple(m)): c for m, c in f.terms.items()})

        gens = [lift_cod(g) for g in self.codomain.relations.gens]
        for i in range(dom.nvars):
            gens.append(lift_dom(dom.var(i)) - lift_cod(self.images[i]))
        gens.extend(lift_dom(g) for g in self.domain.relations.gens)
        ideal = Ideal(combined, tuple(g for g in gens if not g.is_zero()))
        self._graph = (combined, ideal, split, list(range(split, combined.nvars)))
        return self._graph


@dataclass
class GraphIdeal:
    """Materialized graph of a map: combined ambient and its defining ideal."""

    ring: PolyRing
    ideal: Ideal
    codomain_block: int


def graph_ideal(psi: AlgebraMap) -> GraphIdeal:
    ring, ideal, split, _ = psi.graph()
    return GraphIdeal(ring, ideal, split)


def compose(g: AlgebraMap, f: AlgebraMap) -> AlgebraMap:
    """g after f; images substituted, normal-formed, and re-verified."""
    if f.codomain != g.domain:
        raise PreconditionError("composition of maps over mismatched algebras")
    return AlgebraMap(f.domain, g.codomain, tuple(g.apply(img) for img in f.images))


def _lift_into(combined: PolyRing, offset: int, total: int, f: Polynomial) -> Polynomial:
    terms = {}
    for m, c in f.terms.items():
        e = [0] * total
        for i, x in enumerate(m):
            e[offset + i] = x
        terms[Monomial(tuple(e))] = c
    return combined.from_terms(terms)


def pushout(f: AlgebraMap, g: AlgebraMap):
    """Pushout S (x)_R T of S <- R -> T along f and g.

    Returns (P, S -> P, T -> P).  P is presented on the disjoint union of
    the variables of S and T with the relations of both sides plus the
    identifications f(x) = g(x) for each variable x of R.
    """
    if f.domain != g.domain:
        raise PreconditionError("pushout needs a common domain")
    S, T = f.codomain, g.codomain
    field = S.field
    names = list(S.names)
    t_names = []
    for n in T.names:
        t_names.append(fresh_name(n, set(names) | set(t_names)))
    combined = PolyRing(field, tuple(names + t_names))
    total = combined.nvars

    def from_s(h):
        return _lift_into(combined, 0, total, h)

    def from_t(h):
        return _lift_into(combined, S.ring.nvars, total, h)

    gens = [from_s(h) for h in S.relations.gens]
    gens += [from_t(h) for h in T.relations.gens]
    for img_f, img_g in zip(f.images, g.images):
        gens.append(from_s(img_f) - from_t(img_g))
    P = FPAlgebra(combined, tuple(h for h in gens if not h.is_zero()))
    s_in = AlgebraMap(S, P, tuple(from_s(S.ring.var(i)) for i in range(S.ring.nvars)), check=False)
    t_in = AlgebraMap(T, P, tuple(from_t(T.ring.var(i)) for i in range(T.ring.nvars)), check=False)
    return P, s_in, t_in


def frobenius_twist(f: AlgebraMap, k: int):
    """The twist T_k = S (x)_{R,F^k} R of f: R -> S.

    Presented on vars(S) plus a fresh copy of vars(R), with the relations of
    both sides and f(x_j) = x_j'^(p^k).  Returns (T_k, S -> T_k, R -> T_k);
    the first map is the left coprojection, the second the structure map of
    the twisted copy.
    """
    if k < 1:
        raise PreconditionError("frobenius twist needs k >= 1")
    R, S = f.domain, f.codomain
    field = S.field
    names = list(S.names)
    r_names = []
    for n in R.names:
        r_names.append(fresh_name(n + "_r" if n in names else n, set(names) | set(r_names)))
    combined = PolyRing(field, tuple(names + r_names))
    total = combined.nvars
    q = field.p ** k

    def from_s(h):
        return _lift_into(combined, 0, total, h)

    def from_r(h):
        return _lift_into(combined, S.ring.nvars, total, h)

    gens = [from_s(h) for h in S.relations.gens]
    gens += [from_r(h) for h in R.relations.gens]
    for j in range(R.ring.nvars):
        gens.append(from_s(f.images[j]) - from_r(R.ring.var(j)) ** q)
    T = FPAlgebra(combined, tuple(h for h in gens if not h.is_zero()))
    s_map = AlgebraMap(S, T, tuple(from_s(S.ring.var(i)) for i in range(S.ring.nvars)), check=False)
    r_map = AlgebraMap(R, T, tuple(from_r(R.ring.var(j)) for j in range(R.ring.nvars)), check=False)
    return T, s_map, r_map


def relative_frobenius(f: AlgebraMap) -> AlgebraMap:
    """The relative Frobenius S (x)_{R,F} R -> S, s (x) r -> s^p r.

    On the twist presentation every S-variable goes to its p-th power and
    every twisted R-variable to its image under f.  Composing with the left
    coprojection recovers the absolute Frobenius of S.
    """
    T, s_map, r_map = frobenius_twist(f, 1)
    S = f.codomain
    p = S.field.p
    nS = S.ring.nvars
    images = [S.ring.var(i) ** p for i in range(nS)]
    images += list(f.images)
    return AlgebraMap(T, S, tuple(images))


def absolute_frobenius(A: FPAlgebra, k: int = 1) -> AlgebraMap:
    """The k-fold absolute Frobenius endomorphism x -> x^(p^k)."""
    q = A.field.p ** k
    return AlgebraMap(A, A, tuple(g ** q for g in A.gens()), check=False)


def map_kernel(psi: AlgebraMap, budget: int | None = None) -> Ideal:
    """Kernel of psi as an ideal of the domain ambient ring.

    Eliminates the codomain block of the graph ideal.  The result always
    contains the domain relations; the kernel in the quotient is its image.
    """
    combined, ideal, split, dom_pos = psi.graph()
    keep = [combined.names[i] for i in dom_pos]
    J = eliminate(ideal, keep, budget)
    dom = psi.domain.ring
    return Ideal(dom, tuple(
        dom.from_terms(dict(g.terms)) for g in J.gens))


def in_image(psi: AlgebraMap, b: Polynomial, budget: int | None = None):
    """Membership of b in the image of psi, with a preimage witness.

    Reduces b by the graph basis under an order eliminating the codomain
    block; b is hit exactly when the normal form involves only domain
    variables, and that normal form (read in the domain) is a preimage.
    """
    if b.ring != psi.codomain.ring:
        raise PreconditionError("element outside the codomain ambient ring")
    combined, ideal, split, dom_pos = psi.graph()
    order = MonomialOrder("block", perm=tuple(range(combined.nvars)), split=split)
    lifted = _lift_into(combined, 0, combined.nvars, b)
    nf = ideal.normal_form(lifted, order, budget)
    if any(any(m[i] for i in range(split)) for m in nf.terms):
        return False, None
    dom = psi.domain.ring
    witness = dom.from_terms(
        {Monomial(tuple(m[i] for i in dom_pos)): c for m, c in nf.terms.items()})
    return True, psi.domain.nf(witness)


def is_surjective(psi: AlgebraMap, budget: int | None = None) -> bool:
    """True iff every codomain variable lies in the image."""
    return all(in_image(psi, v, budget)[0] for v in psi.codomain.gens())


def is_isomorphism(psi: AlgebraMap, budget: int | None = None):
    """(verdict, inverse) — inverse assembled from preimage witnesses.

    An isomorphism must be surjective with kernel no larger than the domain
    relations (both containments are checked).
    """
    witnesses = []
    for v in psi.codomain.gens():
        ok, w = in_image(psi, v, budget)
        if not ok:
            return False, None
    ker = map_kernel(psi, budget)
    if not ideal_contains(psi.domain.relations, ker):
        return False, None
    if not ideal_contains(ker, psi.domain.relations):
        # cannot happen: the graph contains the domain relations
        return False, None
    for v in psi.codomain.gens():
        witnesses.append(in_image(psi, v, budget)[1])
    inverse = AlgebraMap(psi.codomain, psi.domain, tuple(witnesses))
    return True, inverse
