"""Finitely presented modules, syzygies, truncated resolutions, and Tor.

Modules over an FPAlgebra A are presented by generators and relation
vectors with entries in the ambient polynomial ring.  Syzygies are computed
in the ambient ring by tagging: the syzygies of (v_1, ..., v_t) over A are
the tag components of the kernel elements of the tagged system
(v_i + e_i-tag) together with untagged copies of the defining relations of
A in every coordinate.  The tag block is separated with a position-over-term
order, so elements whose lead lies in the tag block are entirely tagged.

The module engine runs Buchberger with no pair-skipping criteria: the
coprime-lead shortcut is invalid for submodules of free modules.

Resolutions are truncated at a caller bound; Tor dimensions are extracted
by F_p linear algebra when the tensored terms are finite-dimensional, and
otherwise symbolic presentations of the homology are returned and flagged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import AlgebraMap, FPAlgebra
from .errors import PreconditionError
from .groebner import GREVLEX, ModuleElement, _divide
from .polyring import Monomial, MonomialOrder, Polynomial, PolyRing


class ModulePresentation:
    """Cokernel presentation A^rank / <relations>, interreduced on input."""

    __slots__ = ("algebra", "rank", "relations")

    def __init__(self, algebra: FPAlgebra, rank: int, relations=()):
        self.algebra = algebra
        self.rank = rank
        cleaned = []
        seen = set()
        for rel in relations:
            if not isinstance(rel, ModuleElement):
                rel = ModuleElement(tuple(rel))
            if len(rel.components) != rank:
                raise PreconditionError("relation length differs from the generator count")
            reduced = ModuleElement(tuple(algebra.nf(c) for c in rel.components))
            if reduced.is_zero():
                continue
            key = str(reduced)
            if key in seen:
                continue
            seen.add(key)
            cleaned.append(reduced)
        self.relations = tuple(cleaned)

    def __repr__(self) -> str:
        return f"ModulePresentation(rank={self.rank}, relations={len(self.relations)})"


class Complex:
    """Chain of free modules A^{r_L} -> ... -> A^{r_0} with d∘d = 0."""

    __slots__ = ("algebra", "ranks", "mats")

    def __init__(self, algebra: FPAlgebra, ranks, mats, check: bool = True):
        self.algebra = algebra
        self.ranks = tuple(ranks)
        self.mats = tuple(tuple(cols) for cols in mats)  # mats[i]: columns of d_{i+1}
        if len(self.mats) != len(self.ranks) - 1:
            raise PreconditionError("rank/matrix count mismatch")
        for i, cols in enumerate(self.mats):
            if len(cols) != self.ranks[i + 1]:
                raise PreconditionError("column count differs from declared rank")
            for col in cols:
                if len(col.components) != self.ranks[i]:
                    raise PreconditionError("column height differs from declared rank")
        if check and not self.is_complex():
            raise PreconditionError("differentials do not compose to zero")

    def differential(self, i: int):
        """Columns of d_i : A^{r_i} -> A^{r_i - 1} (1-indexed)."""
        return self.mats[i - 1]

    def is_complex(self) -> bool:
        A = self.algebra
        for i in range(1, len(self.mats)):
            prev = self.mats[i - 1]
            for col in self.mats[i]:
                acc = [A.ring.zero() for _ in range(self.ranks[i - 1])]
                for j, coeff in enumerate(col.components):
                    if coeff.is_zero():
                        continue
                    for k, entry in enumerate(prev[j].components):
                        acc[k] = acc[k] + coeff * entry
                if any(not A.nf(v).is_zero() for v in acc):
                    return False
        return True


# ---------------------------------------------------------------------------
# free-module Buchberger over the ambient polynomial ring


def _mod_key(order: MonomialOrder):
    def key(cm):
        c, m = cm
        return (-c, order.key(m))
    return key


def _mod_lead(v, keyf):
    return max(v, key=keyf)


def _mod_divide(v, basis, ring, keyf, p):
    """Full reduction of the module vector v by `basis` (list of dicts)."""
    prepared = []
    for g in basis:
        (c, m) = _mod_lead(g, keyf)
        prepared.append((c, m, pow(g[(c, m)], p - 2, p), g))
    work = dict(v)
    remainder = {}
    while work:
        cm = max(work, key=keyf)
        coeff = work.pop(cm)
        c, m = cm
        hit = None
        for gc, gm, inv, g in prepared:
            if gc == c and gm.divides(m):
                hit = (gm, inv, g)
                break
        if hit is None:
            remainder[cm] = coeff
            continue
        gm, inv, g = hit
        q = m.quotient(gm)
        scale = (coeff * inv) % p
        for (c2, m2), c2coeff in g.items():
            if c2 == c and m2 == gm:
                continue
            key2 = (c2, m2.mul(q))
            val = (work.get(key2, 0) - scale * c2coeff) % p
            if val:
                work[key2] = val
            else:
                work.pop(key2, None)
    return remainder


def _module_groebner(vectors, ring: PolyRing, order: MonomialOrder = GREVLEX):
    """Buchberger for submodules of a free module; position-over-term order."""
    p = ring.field.p
    keyf = _mod_key(order)
    basis = []
    for v in vectors:
        v = {k: c % p for k, c in v.items() if c % p}
        if v:
            (c, m) = _mod_lead(v, keyf)
            inv = pow(v[(c, m)], p - 2, p)
            basis.append({k: (cc * inv) % p for k, cc in v.items()})
    pairs = list(itertools.combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop(0)
        gi, gj = basis[i], basis[j]
        (ci, mi) = _mod_lead(gi, keyf)
        (cj, mj) = _mod_lead(gj, keyf)
        if ci != cj:
            continue
        lcm = mi.lcm(mj)
        qi, qj = lcm.quotient(mi), lcm.quotient(mj)
        s = {}
        for (c2, m2), co in gi.items():
            key2 = (c2, m2.mul(qi))
            s[key2] = (s.get(key2, 0) + co) % p
        for (c2, m2), co in gj.items():
            key2 = (c2, m2.mul(qj))
            s[key2] = (s.get(key2, 0) - co) % p
        s = {k: c for k, c in s.items() if c}
        r = _mod_divide(s, basis, ring, keyf, p)
        if not r:
            continue
        (c, m) = _mod_lead(r, keyf)
        inv = pow(r[(c, m)], p - 2, p)
        r = {k: (cc * inv) % p for k, cc in r.items()}
        new = len(basis)
        basis.append(r)
        pairs.extend((k, new) for k in range(new))
    return basis


def _lift_vector(elem: ModuleElement, ncomp: int):
    v = {}
    for c, poly in enumerate(elem.components):
        for m, coeff in poly.terms.items():
            v[(c, m)] = coeff
    return v


def _vector_to_element(v, ring: PolyRing, ncomp: int, offset: int = 0) -> ModuleElement:
    comps = [dict() for _ in range(ncomp)]
    for (c, m), coeff in v.items():
        if offset <= c < offset + ncomp:
            comps[c - offset][m] = coeff
    return ModuleElement(tuple(ring.from_terms(d) for d in comps))


def syzygy_module(vectors, algebra: FPAlgebra | None = None) -> ModulePresentation:
    """Presentation of the submodule generated by `vectors` over A.

    The relations of the result are the generators of the kernel of
    A^t -> A^rank, t = len(vectors): syzygies are computed in the ambient
    polynomial ring on the tagged system (lifted vectors plus the defining
    relations of A in each coordinate), projected to the first t tags.
    """
    vectors = [v if isinstance(v, ModuleElement) else ModuleElement(tuple(v)) for v in vectors]
    if not vectors:
        raise PreconditionError("syzygy computation needs at least one vector")
    g = len(vectors[0].components)
    if any(len(v.components) != g for v in vectors):
        raise PreconditionError("vectors of mismatched rank")
    ring = vectors[0].ring
    if algebra is None:
        algebra = FPAlgebra(ring)
    if algebra.ring != ring:
        raise PreconditionError("vectors live outside the algebra's ambient ring")
    t = len(vectors)
    tagged = []
    one = Monomial.one(ring.nvars)
    for i, v in enumerate(vectors):
        vec = _lift_vector(v, g)
        vec[(g + i, one)] = 1
        tagged.append(vec)
    for h in algebra.relations.gens:
        for c in range(g):
            tagged.append({(c, m): coeff for m, coeff in h.terms.items()})
    basis = _module_groebner(tagged, ring)
    keyf = _mod_key(GREVLEX)
    syz = []
    for vec in basis:
        lead_c, _ = _mod_lead(vec, keyf)
        if lead_c < g:
            continue
        # position-over-term: lead in the tag block means no main support
        syz.append(_vector_to_element(vec, ring, t, offset=g))
    return ModulePresentation(algebra, t, syz)


def free_resolution(M: ModulePresentation, length: int = 3) -> Complex:
    """Truncated free resolution A^{r_L} -> ... -> A^{r_0} with H_0 = M.

    Built by iterated syzygies, exact in intermediate degrees; not
    necessarily minimal.
    """
    if length < 1:
        raise PreconditionError("resolution length bound must be >= 1")
    A = M.algebra
    ranks = [M.rank]
    mats = []
    current = list(M.relations)
    current_rank = M.rank
    for _ in range(length):
        if not current:
            ranks.append(0)
            mats.append(())
            current_rank = 0
            continue
        mats.append(tuple(current))
        ranks.append(len(current))
        current_rank = len(current)
        current = list(syzygy_module(current, A).relations)
    return Complex(A, ranks, mats)


# ---------------------------------------------------------------------------
# finite-dimensional expansion of modules


class _ModuleTable:
    """F_p basis (component, monomial) of a finitely presented module."""

    def __init__(self, M: ModulePresentation):
        self.module = M
        A = M.algebra
        ring = A.ring
        self.ring = ring
        self.p = ring.field.p
        vectors = [_lift_vector(rel, M.rank) for rel in M.relations]
        for h in A.relations.gens:
            for c in range(M.rank):
                vectors.append({(c, m): coeff for m, coeff in h.terms.items()})
        self.basis_gb = _module_groebner(vectors, ring)
        self.keyf = _mod_key(GREVLEX)
        leads = [ _mod_lead(v, self.keyf) for v in self.basis_gb ]
        self.finite = True
        monomials = []
        for c in range(M.rank):
            comp_leads = [m for (lc, m) in leads if lc == c]
            if any(m.is_one() for m in comp_leads):
                continue  # component annihilated by a unit
            bounds = []
            for i in range(ring.nvars):
                pure = [m[i] for m in comp_leads if m[i] > 0 and sum(m) == m[i]]
                if not pure:
                    self.finite = False
                    return
                bounds.append(min(pure))
            for exps in itertools.product(*[range(b) for b in bounds]):
                m = Monomial(exps)
                if not any(lm.divides(m) for lm in comp_leads):
                    monomials.append((c, m))
        monomials.sort(key=self.keyf, reverse=True)
        self.basis = monomials
        self.index = {cm: i for i, cm in enumerate(monomials)}
        self.dim = len(monomials)

    def expand_vec(self, v) -> np.ndarray:
        r = _mod_divide(v, self.basis_gb, self.ring, self.keyf, self.p) if self.basis_gb else v
        out = np.zeros(self.dim, dtype=np.int64)
        for cm, coeff in r.items():
            out[self.index[cm]] = coeff % self.p
        return out

    def expand_scaled_basis(self, poly: Polynomial, cm) -> np.ndarray:
        c, m = cm
        v = {(c, m.mul(mm)): coeff for mm, coeff in poly.terms.items()}
        return self.expand_vec(v)


@dataclass
class TorResult:
    """Tor dimensions (numeric=True) or symbolic homology presentations."""

    numeric: bool
    entries: list
    bound: int

    @property
    def dims(self):
        if not self.numeric:
            raise PreconditionError("symbolic Tor result carries no dimensions")
        return list(self.entries)


def tor(M: ModulePresentation, N: ModulePresentation, i_max: int) -> TorResult:
    """dim_Fp Tor_i(M, N) for i = 0..i_max, over the common algebra.

    A truncated free resolution of M is tensored with N; when every term
    N^{r_i} is finite-dimensional the homology dimensions come from F_p
    linear algebra, otherwise symbolic presentations are returned with the
    numeric flag cleared.
    """
    if M.algebra != N.algebra:
        raise PreconditionError("Tor needs modules over the same algebra")
    if i_max < 0:
        raise PreconditionError("i_max must be >= 0")
    A = M.algebra
    C = free_resolution(M, i_max + 1)
    table = _ModuleTable(N)
    if table.finite:
        n = table.dim
        ranks = []  # ranks[k] is the rank of d_{k+1} (x) id_N
        for i in range(1, i_max + 2):
            cols = C.differential(i)
            r_prev = C.ranks[i - 1]
            rows = []
            for col in cols:
                for cm in table.basis:
                    img = np.zeros(r_prev * n, dtype=np.int64)
                    for k, entry in enumerate(col.components):
                        if entry.is_zero():
                            continue
                        img[k * n:(k + 1) * n] = (
                            img[k * n:(k + 1) * n] + table.expand_scaled_basis(entry, cm)
                        ) % table.p
                    rows.append(img)
            mat = (np.array(rows, dtype=np.int64)
                   if rows else np.zeros((0, r_prev * n), dtype=np.int64))
            ranks.append(linalg.rank(mat, table.p))
        dims = []
        for i in range(i_max + 1):
            n_i = C.ranks[i] * n
            if i == 0:
                dims.append(n_i - ranks[0])
            else:
                dims.append((n_i - ranks[i - 1]) - ranks[i])
        return TorResult(True, dims, i_max)
    return TorResult(False, _symbolic_homology(C, N, i_max), i_max)


def _block_columns(cols, rank_prev, N: ModulePresentation):
    """Columns of d (x) id_N as vectors over A^{rank_prev * h}."""
    A = N.algebra
    h = N.rank
    out = []
    for col in cols:
        for slot in range(h):
            comps = [A.ring.zero()] * (rank_prev * h)
            for k, entry in enumerate(col.components):
                comps[k * h + slot] = entry
            out.append(ModuleElement(tuple(comps)))
    return out


def _relation_block(N: ModulePresentation, copies: int):
    A = N.algebra
    h = N.rank
    out = []
    for c in range(copies):
        for rel in N.relations:
            comps = [A.ring.zero()] * (copies * h)
            for k, entry in enumerate(rel.components):
                comps[c * h + k] = entry
            out.append(ModuleElement(tuple(comps)))
    return out


def _symbolic_homology(C: Complex, N: ModulePresentation, i_max: int):
    """Presentations of H_i of the tensored complex, degree by degree."""
    A = N.algebra
    h = N.rank
    entries = []
    for i in range(i_max + 1):
        free_rank = C.ranks[i] * h
        if free_rank == 0:
            entries.append(ModulePresentation(A, 0))
            continue
        boundaries = _block_columns(C.differential(i + 1), C.ranks[i], N)
        rel_block = _relation_block(N, C.ranks[i])
        if i == 0:
            entries.append(ModulePresentation(A, free_rank, boundaries + rel_block))
            continue
        up = _block_columns(C.differential(i), C.ranks[i - 1], N)
        up_rel = _relation_block(N, C.ranks[i - 1])
        # cycles: preimages of the relation submodule under d_i (x) id; each
        # syzygy head lists coefficients of the d_i columns, i.e. an element
        # of A^{free_rank}
        cycle_syz = syzygy_module(up + up_rel, A)
        gens = []
        k = len(up)
        for rel in cycle_syz.relations:
            head = rel.components[:k]
            if all(c.is_zero() for c in head):
                continue
            gens.append(ModuleElement(tuple(head)))
        if not gens:
            entries.append(ModulePresentation(A, 0))
            continue
        # relations among the cycle generators: combinations landing in
        # boundaries + relation block
        mixed = gens + boundaries + rel_block
        rel_syz = syzygy_module(mixed, A)
        t = len(gens)
        rels = []
        for rel in rel_syz.relations:
            head = rel.components[:t]
            if all(c.is_zero() for c in head):
                continue
            rels.append(ModuleElement(tuple(head)))
        entries.append(ModulePresentation(A, t, rels))
    return entries


# ---------------------------------------------------------------------------
# Frobenius pushforward and algebras as modules


def frobenius_pushforward(A: FPAlgebra) -> ModulePresentation:
    """A viewed as a module over itself through Frobenius (a * m = a^p m).

    Generators are the residue monomials x^a with 0 <= a_i < p; each
    defining relation of A times each such monomial is rewritten into the
    basis with p-th-root coefficients, giving the relation vectors.
    """
    ring = A.ring
    p = ring.field.p
    n = ring.nvars
    basis = [Monomial(e) for e in itertools.product(range(p), repeat=n)]
    index = {m: i for i, m in enumerate(basis)}

    def decompose(g: Polynomial):
        """g = sum_a c_a(x)^p x^a: returns the vector (c_a)."""
        comps = [dict() for _ in basis]
        for m, coeff in g.terms.items():
            a = Monomial(tuple(e % p for e in m))
            q = Monomial(tuple(e // p for e in m))
            d = comps[index[a]]
            d[q] = (d.get(q, 0) + coeff) % p
        return ModuleElement(tuple(ring.from_terms(d) for d in comps))

    relations = []
    for h in A.relations.gens:
        for b in basis:
            relations.append(decompose(h * Polynomial(ring, {b: 1})))
    return ModulePresentation(A, len(basis), relations)


def pushforward_basis(A: FPAlgebra):
    p = A.ring.field.p
    return [Monomial(e) for e in itertools.product(range(p), repeat=A.ring.nvars)]


def algebra_as_module(f: AlgebraMap) -> ModulePresentation | None:
    """The codomain of f as a module over the domain.

    Implemented for enumerable (Artinian) domain and codomain: generators
    are the residue monomials of the codomain, relations are an F_p basis
    of the kernel of the evaluation map domain^B -> codomain, found by
    linear algebra.  Returns None when either side is not enumerable.
    """
    from .errors import EnumerationError
    from .oracle import enumerate_algebra

    R, S = f.domain, f.codomain
    try:
        tabR = enumerate_algebra(R)
        tabS = enumerate_algebra(S)
    except EnumerationError:
        return None
    p = R.field.p
    B = tabS.basis
    if not B:
        return ModulePresentation(R, 0)
    image_rows = {}
    for b_idx, b in enumerate(B):
        rows = []
        for rm in tabR.basis:
            fr = f.apply(Polynomial(R.ring, {rm: 1}))
            rows.append(tabS.expand(S.nf(fr * Polynomial(S.ring, {b: 1}))))
        image_rows[b_idx] = np.array(rows, dtype=np.int64)

    def span_dim(indices):
        stacked = np.vstack([image_rows[i] for i in indices])
        return linalg.rank(stacked, p)

    # greedily drop generators whose multiples the others already span;
    # smaller presentations keep the resolutions downstream tractable
    kept = list(range(len(B)))
    for i in list(kept):
        trial = [j for j in kept if j != i]
        if trial and span_dim(trial) == tabS.dim:
            kept = trial
    cols = []
    labels = []
    for pos, b_idx in enumerate(kept):
        for r_idx, rm in enumerate(tabR.basis):
            cols.append(image_rows[b_idx][r_idx])
            labels.append((rm, pos))
    mat = np.array(cols, dtype=np.int64)  # rows: (generator, rm) pairs; columns: S basis
    null = linalg.nullspace(mat.T, p) if mat.size else np.zeros((0, 0), dtype=np.int64)
    relations = []
    for row in null:
        comps = [dict() for _ in kept]
        for val, (rm, pos) in zip(row, labels):
            if val % p:
                comps[pos][rm] = (comps[pos].get(rm, 0) + int(val)) % p
        relations.append(ModuleElement(tuple(R.ring.from_terms(d) for d in comps)))
    return ModulePresentation(R, len(kept), relations)
