"""Top-level predicates and algorithms on algebra maps.

Semiperfectness is decided through the differential module: a finitely
presented map makes its target generated by p-th powers and the base image
exactly when the relative differential module vanishes, which is a unit
test on the maximal-minor ideal of its Jacobian presentation.  Relative
perfectness is the isomorphism test on the relative Frobenius (finitely
presented algebras over a prime field are Noetherian, so the isomorphism
alone decides), with a bounded Tor computation recorded as corroboration
where dimensions are computable.  The factorization routine produces a
machine-checkable certificate for base -> free cover -> middle -> target.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    AlgebraMap,
    FPAlgebra,
    compose,
    is_isomorphism,
    is_surjective,
    map_kernel,
    relative_frobenius,
)
from .errors import PreconditionError
from .groebner import Ideal, frobenius_power_ideal, minors_ideal
from .homology import ModulePresentation, algebra_as_module, frobenius_pushforward, tor
from .polyring import Monomial, PolyRing, fresh_name


# ---------------------------------------------------------------------------
# differentials


@dataclass
class KahlerPresentation:
    """Differential module of f, presented over the target algebra.

    rank counts the target variables of the relative presentation; the
    relations are the Jacobian rows of the relative relations with respect
    to those variables.  Rows coming from base-variable identifications
    x_j = f(x_j) enter as the negated derivatives of the images.
    """

    module: ModulePresentation
    rows: tuple

    @property
    def rank(self) -> int:
        return self.module.rank

    @property
    def algebra(self) -> FPAlgebra:
        return self.module.algebra


def kahler_presentation(f: AlgebraMap) -> KahlerPresentation:
    R, S = f.domain, f.codomain
    m = S.ring.nvars
    rows = []
    for g in S.relations.gens:
        rows.append(tuple(g.partial_derivative(i) for i in range(m)))
    for j in range(R.ring.nvars):
        rows.append(tuple(-f.images[j].partial_derivative(i) for i in range(m)))
    module = ModulePresentation(S, m, [r for r in rows if m])
    return KahlerPresentation(module, tuple(rows))


@dataclass
class SemiperfectResult:
    holds: bool
    obstruction: Ideal | None  # the maximal-minor ideal when the test fails

    def __bool__(self) -> bool:
        return self.holds


def is_relatively_semiperfect(f: AlgebraMap) -> SemiperfectResult:
    """Does the target equal its p-th powers together with the base image?

    Decided by the vanishing of the differential module: the cokernel of
    the Jacobian presentation is zero iff its maximal-minor ideal is the
    unit ideal in the target.
    """
    S = f.codomain
    kp = kahler_presentation(f)
    m = kp.rank
    if m == 0 or S.is_zero_ring():
        return SemiperfectResult(True, None)
    rows = [list(r) for r in kp.rows]
    if len(rows) < m:
        return SemiperfectResult(False, Ideal(S.ring, ()))
    minors = minors_ideal(rows, m, S.ring)
    probe = Ideal(S.ring, minors.gens + S.relations.gens)
    if probe.normal_form(S.ring.one()).is_zero():
        return SemiperfectResult(True, None)
    return SemiperfectResult(False, minors)


# ---------------------------------------------------------------------------
# covers


@dataclass
class CoverResult:
    base_inclusion: AlgebraMap   # R -> R' = R[t_1..t_n]
    cover: AlgebraMap            # R' -> S, relatively semiperfect
    adjoined: tuple              # fresh variable names, one per kept generator


def _extend_base(R: FPAlgebra, names):
    combined = PolyRing(R.field, tuple(R.names) + tuple(names))

    def lift(h):
        return combined.from_terms(
            {Monomial(tuple(m) + (0,) * len(names)): c for m, c in h.terms.items()})

    Rp = FPAlgebra(combined, tuple(lift(g) for g in R.relations.gens))
    incl = AlgebraMap(R, Rp, tuple(combined.var(i) for i in range(R.ring.nvars)), check=False)
    return Rp, incl


def semiperfect_cover(f: AlgebraMap) -> CoverResult:
    """Adjoin one variable per target generator, then prune greedily.

    The full cover is always relatively semiperfect (the target generators
    are hit on the nose); a variable is dropped whenever the pruned cover
    still passes the semiperfectness test.  Minimality of the count is not
    claimed.
    """
    R, S = f.domain, f.codomain
    taken = set(R.names)
    fresh = []
    for i in range(S.ring.nvars):
        nn = fresh_name(f"t{i + 1}", taken)
        taken.add(nn)
        fresh.append(nn)
    kept = list(range(S.ring.nvars))

    def build(indices):
        names = [fresh[i] for i in indices]
        Rp, incl = _extend_base(R, names)
        images = list(f.images) + [S.ring.var(i) for i in indices]
        cover = AlgebraMap(Rp, S, tuple(images))
        return Rp, incl, cover

    for i in list(kept):
        trial = [j for j in kept if j != i]
        _, _, cover = build(trial)
        if is_relatively_semiperfect(cover).holds:
            kept = trial
    Rp, incl, cover = build(kept)
    if not is_relatively_semiperfect(cover).holds:
        raise PreconditionError("cover construction failed the semiperfect test")
    return CoverResult(incl, cover, tuple(fresh[i] for i in kept))


# ---------------------------------------------------------------------------
# relative perfectness


@dataclass
class PerfectnessCertificate:
    holds: bool
    frobenius_iso: bool
    inverse: AlgebraMap | None
    tor_checked: bool
    tor_dims: list | None
    tor_vanishing: bool | None
    tor_bound: int

    def __bool__(self) -> bool:
        return self.holds


def is_relatively_perfect(f: AlgebraMap, tor_bound: int = 3) -> PerfectnessCertificate:
    """Is the relative Frobenius of f an isomorphism?

    Finitely presented algebras over a prime field are Noetherian, so the
    isomorphism decides the property outright; when both sides are
    enumerable a bounded Tor computation of the target against the
    Frobenius pushforward of the base is recorded as corroboration.
    """
    if tor_bound < 1:
        raise PreconditionError("tor bound must be >= 1")
    rf = relative_frobenius(f)
    iso, inverse = is_isomorphism(rf)
    tor_checked = False
    tor_dims = None
    tor_vanishing = None
    # the pushforward has p^nvars generators; beyond the oracle cap the
    # corroborating resolution is not desk-computable and is skipped
    R = f.domain
    if iso and R.field.p ** R.ring.nvars <= 16:
        M = algebra_as_module(f)
        if M is not None:
            N = frobenius_pushforward(R)
            result = tor(M, N, tor_bound)
            if result.numeric:
                tor_checked = True
                tor_dims = result.dims
                tor_vanishing = all(d == 0 for d in tor_dims[1:])
    return PerfectnessCertificate(iso, iso, inverse, tor_checked, tor_dims,
                                  tor_vanishing, tor_bound)


# ---------------------------------------------------------------------------
# factorization


@dataclass
class StageData:
    index: int
    algebra: FPAlgebra
    to_middle: AlgebraMap    # R' -> stage
    to_target: AlgebraMap    # stage -> S
    transition: AlgebraMap | None  # stage -> previous stage


@dataclass
class FactorizationCertificate:
    """Machine-checkable witness of base -> cover -> middle -> target."""

    input_map: AlgebraMap
    base_inclusion: AlgebraMap       # R -> R', free of finite type
    adjoined: tuple                  # adjoined variable names
    cover: AlgebraMap                # R' -> S
    cover_semiperfect: bool
    surjective_route: bool           # quotient presentations used for stages
    stages: tuple                    # StageData, indices 0..budget
    stabilized: bool
    middle_index: int
    middle: FPAlgebra
    to_middle: AlgebraMap            # R' -> T
    to_target: AlgebraMap            # T -> S
    middle_perfect: PerfectnessCertificate | None
    truncated: bool
    truncated_verified: bool | None
    target_surjective: bool
    composition_ok: bool
    stage_budget: int

    def validate(self) -> bool:
        """Re-run every verdict named in the certificate."""
        ok = True
        ok &= is_relatively_semiperfect(self.cover).holds == self.cover_semiperfect
        ok &= is_surjective(self.to_target) == self.target_surjective
        ok &= _composes_to(self.input_map, self.base_inclusion, self.to_middle,
                           self.to_target) == self.composition_ok
        if self.stabilized and self.middle_perfect is not None:
            ok &= is_relatively_perfect(self.to_middle,
                                        self.middle_perfect.tor_bound).holds \
                == self.middle_perfect.holds
        return bool(ok)


def _composes_to(f: AlgebraMap, incl: AlgebraMap, to_middle: AlgebraMap,
                 to_target: AlgebraMap) -> bool:
    chain = compose(to_target, compose(to_middle, incl))
    return all(
        f.codomain.nf(a) == f.codomain.nf(b)
        for a, b in zip(chain.images, f.images)
    )


def factorize(f: AlgebraMap, stage_budget: int, tor_bound: int = 3) -> FactorizationCertificate:
    """Factor f through a free extension and a tower middle object.

    The cover R' is the pruned semiperfect cover.  Stages of the middle
    tower are presented as quotients of the polynomial ring A on the
    cover's variables by ker(A -> R') + ker(A -> S)^{[p^k]} whenever the
    cover is surjective (then the two kernels control both towers), and as
    twisted stages of the cover otherwise; the two presentations are
    canonically isomorphic where both apply.  Stabilization is detected on
    consecutive transition maps from index 1; a stabilized tower yields an
    exact middle object verified relatively perfect, a non-stabilized one
    is flagged truncated and verified at truncation only.
    """
    if stage_budget < 1:
        raise PreconditionError("stage budget must be >= 1")
    cover_result = semiperfect_cover(f)
    incl, cover = cover_result.base_inclusion, cover_result.cover
    Rp, S = cover.domain, cover.codomain
    cover_semiperfect = is_relatively_semiperfect(cover).holds
    surjective_route = is_surjective(cover)

    A = FPAlgebra.free(Rp.field, Rp.names)
    a_to_s = AlgebraMap(A, S, cover.images, check=False)
    I_S = map_kernel(a_to_s)
    I_R = Rp.relations

    stages: list[StageData] = []
    if surjective_route:
        for k in range(stage_budget + 1):
            rels = I_R.gens + frobenius_power_ideal(I_S, k).gens
            Tk = FPAlgebra(A.ring, rels)
            to_middle = AlgebraMap(Rp, Tk, Tk.gens(), check=False)
            to_target = AlgebraMap(Tk, S, cover.images)
            transition = None
            if k >= 1:
                transition = AlgebraMap(Tk, stages[k - 1].algebra,
                                        stages[k - 1].algebra.gens(), check=False)
            stages.append(StageData(k, Tk, to_middle, to_target, transition))
    else:
        from .tower import tower_stage

        q = S.field.p
        for k in range(stage_budget + 1):
            ts = tower_stage(cover, k)
            Tk = ts.stage
            if k == 0:
                to_target = AlgebraMap.identity(S)
            else:
                images = [S.ring.var(i) ** (q ** k) for i in range(S.ring.nvars)]
                images += list(cover.images)
                to_target = AlgebraMap(Tk, S, tuple(images))
            stages.append(StageData(k, Tk, ts.base_map, to_target, ts.transition))

    stabilized = False
    middle_index = stage_budget
    for k in range(1, stage_budget):
        ok, _ = is_isomorphism(stages[k + 1].transition)
        if ok:
            stabilized = True
            middle_index = k
            break

    middle_stage = stages[middle_index]
    middle_perfect = None
    truncated = not stabilized
    truncated_verified = None
    if stabilized:
        middle_perfect = is_relatively_perfect(middle_stage.to_middle, tor_bound)
    else:
        truncated_verified = _verify_truncated(middle_stage, I_S, surjective_route)

    target_surjective = is_surjective(middle_stage.to_target)
    composition_ok = _composes_to(f, incl, middle_stage.to_middle,
                                  middle_stage.to_target)
    return FactorizationCertificate(
        input_map=f,
        base_inclusion=incl,
        adjoined=cover_result.adjoined,
        cover=cover,
        cover_semiperfect=cover_semiperfect,
        surjective_route=surjective_route,
        stages=tuple(stages),
        stabilized=stabilized,
        middle_index=middle_index,
        middle=middle_stage.algebra,
        to_middle=middle_stage.to_middle,
        to_target=middle_stage.to_target,
        middle_perfect=middle_perfect,
        truncated=truncated,
        truncated_verified=truncated_verified,
        target_surjective=target_surjective,
        composition_ok=composition_ok,
        stage_budget=stage_budget,
    )


def _verify_truncated(stage: StageData, I_S: Ideal, surjective_route: bool) -> bool:
    """Relative Frobenius isomorphism after quotienting by the stage ideal.

    The stage ideal ker(A -> S)^{[p^k]} is expressed in the twisted base
    copy on the domain side and at the base coprojection images on the
    codomain side; the induced map between the quotients must be an
    isomorphism (the transition kernel is bounded by the stage ideal).
    """
    Rp = stage.to_middle.domain
    Tk = stage.algebra
    k = stage.index
    sigma = frobenius_power_ideal(I_S, k)
    rf = relative_frobenius(stage.to_middle)
    D = rf.domain
    # the twisted copy of R' occupies the trailing variables of the twist
    offset = Tk.ring.nvars
    lift = [D.ring.var(offset + j) for j in range(Rp.ring.nvars)]
    sigma_dom = [g.substitute(D.ring, lift) for g in sigma.gens]
    # codomain: evaluate at the coprojection images of the base copy
    base_images = list(stage.to_middle.images)
    sigma_cod = [g.substitute(Tk.ring, base_images) for g in sigma.gens]
    D2 = FPAlgebra(D.ring, D.relations.gens + tuple(sigma_dom))
    C2 = FPAlgebra(Tk.ring, Tk.relations.gens + tuple(sigma_cod))
    induced = AlgebraMap(D2, C2, rf.images)
    ok_surjective = is_surjective(rf)
    ok_iso, _ = is_isomorphism(induced)
    return bool(ok_surjective and ok_iso)


# ---------------------------------------------------------------------------
# p-bases


@dataclass
class PBasisResult:
    success: bool
    basis_names: tuple | None
    basis: tuple | None              # the chosen target elements
    witness_map: AlgebraMap | None   # verified relatively perfect extension
    certificate: PerfectnessCertificate | None
    projective_rank: int | None
    obstruction: Ideal | None        # failing Fitting ideal
    obstruction_index: int | None
    reason: str

    def __bool__(self) -> bool:
        return self.success


def _fitting_ideal(kp: KahlerPresentation, j: int) -> Ideal:
    """Fitting ideal Fitt_j of the differential module (minor size rank - j)."""
    S = kp.algebra
    size = kp.rank - j
    rows = [list(r) for r in kp.rows]
    if size <= 0:
        return Ideal(S.ring, (S.ring.one(),))
    if size > len(rows) or size > kp.rank:
        return Ideal(S.ring, ())
    return minors_ideal(rows, size, S.ring)


def _is_unit_ideal(I: Ideal, S: FPAlgebra) -> bool:
    probe = Ideal(S.ring, I.gens + S.relations.gens)
    return probe.normal_form(S.ring.one()).is_zero()


def _is_zero_ideal(I: Ideal, S: FPAlgebra) -> bool:
    return all(S.nf(g).is_zero() for g in I.gens)


def find_p_basis(f: AlgebraMap) -> PBasisResult:
    """Search for target elements presenting f through a free extension.

    The differential module must be projective of constant rank n (Fitting
    test); candidates are target variables whose differentials generate,
    selected by greedy deletion with a unit-minor test.  A successful
    candidate map is returned only if it passes the relative perfectness
    check, so a projective-but-not-free module can only produce a reported
    failure, never a wrong answer.
    """
    R, S = f.domain, f.codomain
    kp = kahler_presentation(f)
    m = kp.rank
    if S.is_zero_ring():
        n = 0
    else:
        n = None
        for j in range(m + 1):
            Fj = _fitting_ideal(kp, j)
            if not _is_zero_ideal(Fj, S):
                n = j
                break
        if n is None:
            n = m
        Fn = _fitting_ideal(kp, n)
        if not _is_unit_ideal(Fn, S):
            return PBasisResult(False, None, None, None, None, None, Fn, n,
                                "differential module is not projective of constant rank")
    # greedy deletion over variable differentials
    kept = list(range(m))

    def generates(indices):
        """Do the differentials of `indices` generate the module?

        The quotient of the module by those differentials is the cokernel
        of the relation rows stacked with the unit rows e_i, i in indices;
        it vanishes iff the maximal minors of the stack are the unit ideal.
        """
        if S.is_zero_ring() or m == 0:
            return True
        rows = [list(r) for r in kp.rows]
        for i in indices:
            unit_row = [S.ring.zero()] * m
            unit_row[i] = S.ring.one()
            rows.append(unit_row)
        if len(rows) < m:
            return False
        return _is_unit_ideal(minors_ideal(rows, m, S.ring), S)

    for i in list(kept):
        trial = [j for j in kept if j != i]
        if generates(trial):
            kept = trial
    if len(kept) != n:
        return PBasisResult(False, None, None, None, None, n, None, None,
                            "no variable subset of the projective rank generates the differentials")
    taken = set(R.names)
    fresh = []
    for i in range(n):
        nn = fresh_name(f"b{i + 1}", taken)
        taken.add(nn)
        fresh.append(nn)
    Rp, incl = _extend_base(R, fresh)
    images = list(f.images) + [S.ring.var(i) for i in kept]
    candidate = AlgebraMap(Rp, S, tuple(images))
    cert = is_relatively_perfect(candidate)
    if not cert.holds:
        return PBasisResult(False, None, None, None, cert, n, None, None,
                            "candidate elements fail the relative perfectness check")
    basis_names = tuple(S.names[i] for i in kept)
    basis = tuple(S.ring.var(i) for i in kept)
    return PBasisResult(True, basis_names, basis, candidate, cert, n, None, None, "ok")
