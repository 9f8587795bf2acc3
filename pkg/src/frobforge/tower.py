"""Frobenius towers, explicit stage presentations, and stabilization.

A map f: R -> S induces the inverse system of twisted stages
S (x)_{R,F^n} R with transition maps raising the S-part to the p-th power.
Over a polynomial base the stages have the explicit presentation
S[x_1..x_m]/(x_i^{p^k} - s_i); for surjective f with kernel I they collapse
to the quotients R/I^{[p^n]}.  The inverse limit is never materialized as
an algebra: the artifact returns stage data plus a stabilization report,
and only a stabilized tower has an exact finitely presented limit (the
stage itself).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraMap,
    FPAlgebra,
    frobenius_twist,
    is_isomorphism,
    relative_frobenius,
)
from .errors import PreconditionError
from .groebner import Ideal, frobenius_power_ideal
from .polyring import Polynomial, PolyRing, fresh_name

DEFAULT_STAGE_BUDGET = 6


@dataclass
class TowerStage:
    """Stage n of the tower of f: the twist, its transition, and structure maps."""

    index: int
    stage: FPAlgebra
    transition: AlgebraMap | None  # stage(n) -> stage(n-1); None at n = 0
    base_map: AlgebraMap           # R -> stage
    coprojection: AlgebraMap       # S -> stage


def tower_stage(f: AlgebraMap, n: int) -> TowerStage:
    """The n-th tower stage of f with its transition map.

    The transition sends each S-variable to its p-th power and fixes the
    twisted copy of R; for n = 1 it is the relative Frobenius of f.
    """
    if n < 0:
        raise PreconditionError("tower stage index must be >= 0")
    S = f.codomain
    if n == 0:
        return TowerStage(0, S, None, f, AlgebraMap.identity(S))
    T, s_map, r_map = frobenius_twist(f, n)
    if n == 1:
        transition = relative_frobenius(f)
    else:
        prev, _, _ = frobenius_twist(f, n - 1)
        p = S.field.p
        nS = S.ring.nvars
        images = [prev.ring.var(i) ** p for i in range(nS)]
        images += [prev.ring.var(nS + j) for j in range(f.domain.ring.nvars)]
        transition = AlgebraMap(T, prev, tuple(images))
    return TowerStage(n, T, transition, r_map, s_map)


def gabber_stage(f: AlgebraMap, generators, k: int) -> FPAlgebra:
    """Explicit stage S[x_1..x_m]/(x_i^{p^k} - s_i) over a polynomial base.

    Requires the domain of f to be a polynomial ring and the s_i to witness
    that S is generated over p-th powers and the base image, i.e. the
    extension of f by the s_i must make S relatively semiperfect.
    """
    R, S = f.domain, f.codomain
    if k < 0:
        raise PreconditionError("stage index must be >= 0")
    if R.relations.groebner() != ():
        raise PreconditionError("gabber stage needs a polynomial base ring")
    generators = tuple(generators)
    if any(g.ring != S.ring for g in generators):
        raise PreconditionError("chosen generators outside the target algebra")
    from .pipeline import is_relatively_semiperfect  # cycle: pipeline builds on tower

    taken = set(R.names)
    ext_names = []
    for i in range(len(generators)):
        nn = fresh_name(f"y{i + 1}", taken)
        taken.add(nn)
        ext_names.append(nn)
    ext = FPAlgebra.free(R.field, tuple(R.names) + tuple(ext_names))
    ext_map = AlgebraMap(ext, S, tuple(f.images) + generators)
    if not is_relatively_semiperfect(ext_map):
        raise PreconditionError(
            "chosen generators do not witness relative semiperfectness")

    names = list(S.names)
    fresh = []
    for i in range(len(generators)):
        nn = fresh_name(f"w{i + 1}", set(names) | set(fresh))
        fresh.append(nn)
    ring = PolyRing(S.field, tuple(names + fresh))
    total = ring.nvars
    nS = S.ring.nvars

    def lift_s(h: Polynomial) -> Polynomial:
        return ring.from_terms({m + (0,) * len(fresh): c for m, c in h.terms.items()})

    q = S.field.p ** k
    gens = [lift_s(h) for h in S.relations.gens]
    for i, s in enumerate(generators):
        gens.append(ring.var(nS + i) ** q - lift_s(s))
    return FPAlgebra(ring, tuple(g for g in gens if not g.is_zero()))


def quotient_tower_stage(R: FPAlgebra, I: Ideal, n: int) -> FPAlgebra:
    """Stage n of the quotient tower: R modulo the p^n-th bracket power of I."""
    if I.ring != R.ring:
        raise PreconditionError("ideal lives outside the algebra's ambient ring")
    return FPAlgebra(R.ring, R.relations.gens + frobenius_power_ideal(I, n).gens)


@dataclass
class IsoWitness:
    """Verified transition isomorphism at the stabilization index."""

    transition: AlgebraMap
    inverse: AlgebraMap


@dataclass
class InequalityWitness:
    """A bracket-power generator separating consecutive stages."""

    stage: int
    generator: Polynomial
    remainder: Polynomial


@dataclass
class StabilizationReport:
    stabilized: bool
    index: int | None
    witness: object
    explored: int


def detect_stabilization(R: FPAlgebra, I: Ideal, n_max: int) -> StabilizationReport:
    """Smallest n0 <= n_max with I^[p^n0] = I^[p^(n0+1)] as ideals of R.

    Bracket powers are absorbing, so equality at one step pins the tower.
    The containment I^[p^(n+1)] <= I^[p^n] always holds; only the converse
    is tested, and on success the quotient transition is verified to be an
    isomorphism.
    """
    if n_max < 0:
        raise PreconditionError("n_max must be >= 0")
    if I.ring != R.ring:
        raise PreconditionError("ideal lives outside the algebra's ambient ring")
    witness = None
    for n in range(n_max + 1):
        low = Ideal(R.ring, R.relations.gens + frobenius_power_ideal(I, n).gens)
        high = Ideal(R.ring, R.relations.gens + frobenius_power_ideal(I, n + 1).gens)
        failing = None
        for g in frobenius_power_ideal(I, n).gens:
            r = high.normal_form(g)
            if not r.is_zero():
                failing = InequalityWitness(n, g, r)
                break
        if failing is None:
            stage_n = FPAlgebra(R.ring, high.gens)
            stage_prev = FPAlgebra(R.ring, low.gens)
            transition = AlgebraMap(stage_n, stage_prev, stage_prev.gens())
            ok, inverse = is_isomorphism(transition)
            if not ok:
                raise PreconditionError(
                    "ideal equality without transition isomorphism; engine defect")
            return StabilizationReport(True, n, IsoWitness(transition, inverse), n_max)
        witness = failing
    return StabilizationReport(False, None, witness, n_max)


def cofinality_bound(R: FPAlgebra, I: Ideal, n: int) -> int:
    """Minimal m with I^m inside I^[p^n]; capped at r(p^n - 1) + 1.

    The ordinary and bracket-power filtrations are cofinal over a polynomial
    ring: the pigeonhole cap always suffices, so the ascending search
    terminates.
    """
    import itertools

    if R.relations.groebner() != ():
        raise PreconditionError("cofinality bound needs a polynomial ring")
    if I.ring != R.ring:
        raise PreconditionError("ideal lives outside the algebra's ambient ring")
    if n < 0:
        raise PreconditionError("n must be >= 0")
    q = R.field.p ** n
    r = len(I.gens)
    cap = r * (q - 1) + 1
    target = frobenius_power_ideal(I, n)
    for m in range(cap + 1):
        if m == 0:
            ok = target.normal_form(R.ring.one()).is_zero()
        else:
            ok = True
            for combo in itertools.combinations_with_replacement(I.gens, m):
                g = R.ring.one()
                for h in combo:
                    g = g * h
                if not target.normal_form(g).is_zero():
                    ok = False
                    break
        if ok:
            return m
    raise PreconditionError("pigeonhole cap exceeded; engine defect")
