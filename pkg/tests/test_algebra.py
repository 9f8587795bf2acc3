import pytest

from frobforge.algebra import (
    AlgebraMap,
    FPAlgebra,
    absolute_frobenius,
    compose,
    frobenius_twist,
    in_image,
    is_isomorphism,
    is_surjective,
    map_kernel,
    pushout,
    relative_frobenius,
)
from frobforge.errors import MapNotWellDefinedError
from frobforge.groebner import Ideal, ideal_contains, ideal_equal
from frobforge.oracle import oracle_map_bijective
from frobforge.polyring import PrimeField


def free(p, *names):
    return FPAlgebra.free(PrimeField(p), names)


def quot(p, names, rel_builder):
    A = free(p, *names)
    return FPAlgebra(A.ring, tuple(rel_builder(*A.gens())))


def f2x_mod_x2():
    return quot(2, ("x",), lambda x: [x**2])


def test_well_definedness_enforced():
    S = f2x_mod_x2()
    R = free(2, "t")
    with pytest.raises(MapNotWellDefinedError):
        # t -> x would need x^2 = 0 to hold for t^3... build a genuinely bad map:
        AlgebraMap(quot(2, ("t",), lambda t: [t**3 + 1]), S, [S.gens()[0]])


def test_compose_identity():
    S = f2x_mod_x2()
    f = AlgebraMap(free(2, "t"), S, [S.gens()[0]])
    assert compose(AlgebraMap.identity(S), f) == f
    assert compose(f, AlgebraMap.identity(f.domain)) == f


def test_compose_substitution():
    R = free(2, "s")
    T = free(2, "t")
    X = free(2, "x")
    f = AlgebraMap(R, T, [T.gens()[0]])          # s -> t
    g = AlgebraMap(T, X, [X.gens()[0] ** 2])     # t -> x^2
    assert compose(g, f).images == (X.gens()[0] ** 2,)


def test_pushout_coproduct_of_polynomial_rings():
    F = free(2)
    Rx = free(2, "x")
    Ry = free(2, "y")
    P, ix, iy = pushout(AlgebraMap(F, Rx, []), AlgebraMap(F, Ry, []))
    assert P.names == ("x", "y")
    assert P.relations.gens == ()


def test_pushout_unit_law():
    R = quot(2, ("e",), lambda e: [e**2 + e])
    T = f2x_mod_x2()
    g = AlgebraMap(R, T, [T.ring.zero()])
    P, _, t_in = pushout(AlgebraMap.identity(R), g)
    # comparison P -> T: left copy via g, right copy identity
    cmp_map = AlgebraMap(P, T, tuple(g.images) + tuple(T.gens()))
    ok, _ = is_isomorphism(cmp_map)
    assert ok


def test_pushout_derived_example():
    # p=2: pushout of (t -> t^2) and (t -> 0) is F_2[u]/(u^2)
    R = free(2, "t")
    S = free(2, "t")
    T = free(2)
    f = AlgebraMap(R, S, [S.gens()[0] ** 2])
    g = AlgebraMap(R, T, [T.ring.zero()])
    P, _, _ = pushout(f, g)
    from frobforge.oracle import enumerate_algebra

    assert enumerate_algebra(P).dim == 2
    U = f2x_mod_x2()
    cmp_map = AlgebraMap(P, U, [U.gens()[0]])
    ok, _ = is_isomorphism(cmp_map)
    assert ok


def test_twist_of_identity_is_identity():
    R = quot(2, ("x",), lambda x: [x**3 + x])
    rf = relative_frobenius(AlgebraMap.identity(R))
    ok, _ = is_isomorphism(rf)
    assert ok


def test_twist_of_quotient_is_bracket_power_quotient():
    # F_2[x] ->> F_2[x]/(x^2): twist_1 is F_2[x]/(x^4)
    R = free(2, "x")
    S = f2x_mod_x2()
    f = AlgebraMap(R, S, [S.gens()[0]])
    T, s_map, r_map = frobenius_twist(f, 1)
    Q = quot(2, ("x",), lambda x: [x**4])
    # comparison: S-part -> x^2 (left coprojection lands on p-th powers), twist copy -> x
    x = Q.gens()[0]
    cmp_map = AlgebraMap(T, Q, [x**2, x])
    ok, _ = is_isomorphism(cmp_map)
    assert ok


def test_twist_of_perfect_base_is_trivial():
    F = free(2)
    S = free(2, "x")
    T, _, _ = frobenius_twist(AlgebraMap(F, S, []), 1)
    cmp_map = AlgebraMap(T, S, [S.gens()[0]])
    ok, _ = is_isomorphism(cmp_map)
    assert ok


def test_relative_frobenius_of_polynomial_ring():
    F = free(2)
    S = free(2, "x")
    rf = relative_frobenius(AlgebraMap(F, S, []))
    assert rf.images == (S.gens()[0] ** 2,)
    assert not is_surjective(rf)


def test_relative_frobenius_of_quotient_projection():
    R = free(2, "x")
    S = f2x_mod_x2()
    f = AlgebraMap(R, S, [S.gens()[0]])
    rf = relative_frobenius(f)
    assert is_surjective(rf)
    ok, _ = is_isomorphism(rf)
    assert not ok
    # kernel is (x^2) of the x^4-quotient: the twisted copy squared is in the
    # kernel, the twisted copy itself is not
    ker = map_kernel(rf)
    xr = rf.domain.ring.var(1)
    assert ker.contains_poly(xr**2)
    assert not ker.contains_poly(xr)


def test_map_kernel_examples():
    R = free(2, "x")
    S = f2x_mod_x2()
    ker = map_kernel(AlgebraMap(R, S, [S.gens()[0]]))
    assert ideal_equal(ker, Ideal(R.ring, (R.gens()[0] ** 2,)))

    T = free(2, "t")
    X = free(2, "x")
    ker2 = map_kernel(AlgebraMap(T, X, [X.gens()[0] ** 2]))
    assert ker2.gens == ()

    UV = free(2, "u", "v")
    ker3 = map_kernel(AlgebraMap(UV, X, [X.gens()[0] ** 2, X.gens()[0] ** 3]))
    u, v = UV.gens()
    assert ideal_equal(ker3, Ideal(UV.ring, (u**3 + v**2,)))


def test_kernel_contains_domain_relations():
    R = quot(2, ("e",), lambda e: [e**2 + e])
    f = AlgebraMap(R, free(2), [free(2).ring.zero()])
    ker = map_kernel(f)
    assert ideal_contains(ker, R.relations)


def test_in_image_quotient_map_everything():
    R = free(2, "x")
    S = f2x_mod_x2()
    f = AlgebraMap(R, S, [S.gens()[0]])
    ok, w = in_image(f, S.gens()[0])
    assert ok and f.apply(w) == S.nf(S.gens()[0])


def test_in_image_odd_power_missing():
    T = free(2, "t")
    X = free(2, "x")
    f = AlgebraMap(T, X, [X.gens()[0] ** 2])
    ok, _ = in_image(f, X.gens()[0])
    assert not ok
    ok2, w2 = in_image(f, X.gens()[0] ** 4)
    assert ok2 and f.apply(w2) == X.gens()[0] ** 4


def test_in_image_artin_schreier_relative_frobenius():
    # S = F_2[x, y]/(y^2 + y + x) over R = F_2[x]: y is hit by F_{S/R}
    S = quot(2, ("x", "y"), lambda x, y: [y**2 + y + x])
    R = free(2, "x")
    f = AlgebraMap(R, S, [S.gens()[0]])
    rf = relative_frobenius(f)
    ok, w = in_image(rf, S.gens()[1])
    assert ok
    assert rf.apply(w) == S.nf(S.gens()[1])


def test_is_surjective_examples():
    S = f2x_mod_x2()
    assert is_surjective(AlgebraMap.identity(S))
    T = free(2, "t")
    X = free(2, "x")
    assert not is_surjective(AlgebraMap(T, X, [X.gens()[0] ** 2]))
    R = free(2, "x")
    assert is_surjective(AlgebraMap(R, S, [S.gens()[0]]))


def test_is_isomorphism_translation_involution():
    R = free(2, "x")
    x = R.gens()[0]
    f = AlgebraMap(R, R, [x + 1])
    ok, inv = is_isomorphism(f)
    assert ok
    assert inv.images == (x + 1,)
    assert compose(inv, f) == AlgebraMap.identity(R)


def test_is_isomorphism_frobenius_not_surjective():
    R = free(2, "x")
    ok, _ = is_isomorphism(absolute_frobenius(R))
    assert not ok


def test_zero_ring_predicates():
    Z = quot(2, ("x",), lambda x: [x, x + 1])
    assert Z.is_zero_ring()
    idz = AlgebraMap.identity(Z)
    assert is_surjective(idz)
    ok, _ = is_isomorphism(idz)
    assert ok


# -- structural invariants -------------------------------------------------


def test_twist_functoriality():
    # twist(f, a+b) agrees with twisting twice, via the canonical comparison
    R = free(2, "x")
    S = f2x_mod_x2()
    f = AlgebraMap(R, S, [S.gens()[0]])
    for a, b in [(1, 1), (1, 2)]:
        T_ab, s_ab, r_ab = frobenius_twist(f, a + b)
        T_a, s_a, r_a = frobenius_twist(f, a)
        T_2, s_2, r_2 = frobenius_twist(r_a, b)
        # comparison T_ab -> T_2: S-part through both left coprojections,
        # twisted copy to the innermost twisted copy
        images = [s_2.apply(s_a.images[i]) for i in range(S.ring.nvars)]
        images += list(r_2.images)
        cmp_map = AlgebraMap(T_ab, T_2, tuple(images))
        ok, _ = is_isomorphism(cmp_map)
        assert ok


def test_diagram_star_left_composite_is_absolute_frobenius():
    cases = []
    S1 = f2x_mod_x2()
    cases.append(AlgebraMap(free(2, "x"), S1, [S1.gens()[0]]))
    S2 = quot(2, ("x", "y"), lambda x, y: [y**2 + y + x])
    cases.append(AlgebraMap(free(2, "x"), S2, [S2.gens()[0]]))
    for f in cases:
        S = f.codomain
        T, s_map, _ = frobenius_twist(f, 1)
        rf = relative_frobenius(f)
        assert compose(rf, s_map) == absolute_frobenius(S)


def test_composition_law_through_intermediate():
    # R -> S -> T: F_{T/R} equals F_{T/S} composed with the induced map
    R = free(2, "x")
    S = quot(2, ("x", "u"), lambda x, u: [u**2 + x])
    T = quot(2, ("x", "u", "v"), lambda x, u, v: [u**2 + x, v**2 + v + u])
    f = AlgebraMap(R, S, [S.gens()[0]])
    g = AlgebraMap(S, T, [T.gens()[0], T.gens()[1]])
    h = compose(g, f)
    TwR, tmapR, rmapR = frobenius_twist(h, 1)
    rf_TR = relative_frobenius(h)
    TwS, tmapS, smapS = frobenius_twist(g, 1)
    rf_TS = relative_frobenius(g)
    # induced map T (x)_{R,F} R -> T (x)_{S,F} S: T-part identity, R-copy via f
    images = list(tmapS.images) + [smapS.apply(f.images[j]) for j in range(R.ring.nvars)]
    induced = AlgebraMap(TwR, TwS, tuple(images))
    assert compose(rf_TS, induced) == rf_TR


def test_base_change_square_cocartesian():
    # twist of a pushout agrees with pushout of the twist
    R = free(2, "x")
    S = quot(2, ("x", "u"), lambda x, u: [u**2 + x])
    f = AlgebraMap(R, S, [S.gens()[0]])
    R2 = quot(2, ("x",), lambda x: [x**3])
    g = AlgebraMap(R, R2, [R2.gens()[0]])
    S2, s_in, r2_in = pushout(f, g)
    lhs, lhs_s, lhs_r = frobenius_twist(r2_in, 1)  # S' (x)_{R2, F} R2
    TwF, twf_s, twf_r = frobenius_twist(f, 1)
    rhs, tw_in, r2b_in = pushout(twf_r, g)  # twist_1(f) (x)_R R2
    p = 2
    images = []
    for i in range(S.ring.nvars):  # S-part of S'
        images.append(tw_in.apply(twf_s.images[i]))
    for j in range(R2.ring.nvars):  # R2-part of S'
        images.append(r2b_in.images[j] ** p)
    for j in range(R2.ring.nvars):  # twisted R2 copy
        images.append(r2b_in.images[j])
    cmp_map = AlgebraMap(lhs, rhs, tuple(images))
    ok, _ = is_isomorphism(cmp_map)
    assert ok


def test_image_and_kernel_agree_with_linear_oracles_on_random_maps():
    import random

    import numpy as np

    from frobforge import linalg
    from frobforge.oracle import enumerate_algebra
    from frobforge.polyring import Polynomial

    from . import corpus

    rng = random.Random(424)
    for psi in corpus.random_artinian_maps(20, seed=616):
        D, C = psi.domain, psi.codomain
        tabD, tabC = enumerate_algebra(D), enumerate_algebra(C)
        p = D.field.p
        M = (np.array([tabC.expand(psi.apply(Polynomial(D.ring, {m: 1})))
                       for m in tabD.basis], dtype=np.int64)
             if tabD.dim else np.zeros((0, tabC.dim), dtype=np.int64))
        # the image of a ring map is the linear span of the basis images
        image_rank = linalg.rank(M, p)
        assert is_surjective(psi) == (image_rank == tabC.dim)
        ker = map_kernel(psi)
        Q = FPAlgebra(D.ring, ker.gens)
        assert enumerate_algebra(Q).dim == image_rank
        for _ in range(2):
            b = C.ring.from_terms(
                {tuple(rng.randint(0, 3) for _ in range(C.ring.nvars)): rng.randint(0, p - 1)
                 for _ in range(2)})
            hit, witness = in_image(psi, b)
            assert hit == linalg.in_row_span(M, tabC.expand(b), p)
            if hit:
                assert psi.apply(witness) == C.nf(b)


def test_iso_agrees_with_bijectivity_oracle():
    cases = []
    F4 = quot(2, ("x",), lambda x: [x**2 + x + 1])
    cases.append((absolute_frobenius(F4), True))
    S = f2x_mod_x2()
    cases.append((AlgebraMap(S, free(2), [free(2).ring.zero()]), False))
    cases.append((AlgebraMap.identity(S), True))
    R9 = quot(3, ("x",), lambda x: [x**2 + 1])
    cases.append((absolute_frobenius(R9), True))
    E = quot(2, ("e",), lambda e: [e**2 + e])
    cases.append((AlgebraMap(E, E, [E.gens()[0] + 1]), True))
    for psi, expected in cases:
        ok, _ = is_isomorphism(psi)
        assert ok == expected
        assert oracle_map_bijective(psi) == expected
