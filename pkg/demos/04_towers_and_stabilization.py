"""Frobenius towers: stages, explicit presentations, and stabilization.

The tower of f: R -> S is the inverse system of twists with transitions
raising the S-part to the p-th power.  For a surjection with kernel I the
stage n collapses to R/I^[p^n]; a fixed ideal (I^[p] = I) pins the whole
tower at stage zero, while (x) over a polynomial ring never stabilizes.
The limit is never materialized: stages plus a stabilization report are
the honest finite answer.
"""

from frobforge import (
    AlgebraMap,
    FPAlgebra,
    Ideal,
    PrimeField,
    detect_stabilization,
    gabber_stage,
    is_isomorphism,
    quotient_tower_stage,
    reduced_groebner,
    tower_stage,
)

F2 = PrimeField(2)

print("# stages of F_2[x] ->> F_2[x]/(x^2) are the x^(2^(n+1)) quotients")
R = FPAlgebra.free(F2, ("x",))
S = FPAlgebra(R.ring, (R.gens()[0] ** 2,))
f = AlgebraMap(R, S, [S.gens()[0]])
I = Ideal(R.ring, (R.gens()[0] ** 2,))
for n in (1, 2, 3):
    ts = tower_stage(f, n)
    q = quotient_tower_stage(R, I, n)
    print(f"  stage {n}: twist = {ts.stage}   quotient form = {q}")

print("\n# the explicit presentation over a polynomial base matches the twist")
G2 = gabber_stage(f, [S.gens()[0]], 2)
print("explicit stage 2:", G2)
twist2 = tower_stage(f, 2).stage
renamed = [g.substitute(twist2.ring, list(twist2.ring.gens())) for g in G2.relations.gens]
print("same reduced basis as the twist?",
      reduced_groebner(Ideal(twist2.ring, tuple(renamed))) == reduced_groebner(twist2.relations))

print("\n# a fixed ideal stabilizes immediately")
amb = FPAlgebra.free(F2, ("e",))
E = FPAlgebra(amb.ring, (amb.gens()[0] ** 2 + amb.gens()[0],))
rep = detect_stabilization(E, Ideal(E.ring, (E.gens()[0],)), 3)
print("stabilized:", rep.stabilized, " at index", rep.index)

print("\n# the maximal ideal of a polynomial ring never does")
rep2 = detect_stabilization(R, Ideal(R.ring, (R.gens()[0],)), 4)
print("stabilized:", rep2.stabilized,
      f" (stage {rep2.witness.stage}: {rep2.witness.generator} is not in the next bracket power)")

print("\n# transitions of a stabilized tower are isomorphisms")
tsE = tower_stage(AlgebraMap(E, FPAlgebra.free(F2, ()), [FPAlgebra.free(F2, ()).ring.zero()]), 1)
ok, _ = is_isomorphism(tsE.transition)
print("transition 1 -> 0 bijective?", ok)
