"""Semiperfectness via differentials, with the subring oracle as referee.

The target of a finitely presented map is generated by p-th powers and the
base image exactly when its relative differential module vanishes — a unit
test on the maximal minors of the Jacobian presentation.  On finite
algebras an exhaustive subring closure gives the same verdict from first
principles.
"""

from frobforge import (
    AlgebraMap,
    FPAlgebra,
    PrimeField,
    is_relatively_semiperfect,
    kahler_presentation,
    oracle_subring_closure,
    semiperfect_cover,
)

F2 = PrimeField(2)
F = FPAlgebra.free(F2, ())

print("# constants into dual numbers: squares collapse, not semiperfect")
amb = FPAlgebra.free(F2, ("x",))
D = FPAlgebra(amb.ring, (amb.gens()[0] ** 2,))
f = AlgebraMap(F, D, [])
res = is_relatively_semiperfect(f)
print("engine verdict:", res.holds)
print("oracle closure:", oracle_subring_closure(f))
print("obstruction (minors ideal):", [str(g) for g in res.obstruction.gens] or "(0)")

print("\n# constants into F_4: the Frobenius is onto, semiperfect")
amb4 = FPAlgebra.free(F2, ("x",))
F4 = FPAlgebra(amb4.ring, (amb4.gens()[0] ** 2 + amb4.gens()[0] + 1,))
g = AlgebraMap(F, F4, [])
print("engine verdict:", is_relatively_semiperfect(g).holds)
print("oracle closure:", oracle_subring_closure(g))

print("\n# the Artin-Schreier extension has a unit Jacobian")
amb_as = FPAlgebra.free(F2, ("x", "y"))
x, y = amb_as.gens()
AS = FPAlgebra(amb_as.ring, (y**2 + y + x,))
h = AlgebraMap(FPAlgebra.free(F2, ("x",)), AS, [AS.gens()[0]])
kp = kahler_presentation(h)
print("differential module rank:", kp.rank)
print("Jacobian rows:", [[str(e) for e in row] for row in kp.rows])
print("semiperfect?", is_relatively_semiperfect(h).holds)

print("\n# semiperfect covers: adjoin generators, then prune greedily")
P = FPAlgebra.free(F2, ("x",))
cover = semiperfect_cover(AlgebraMap(F, P, []))
print("cover of F_2 -> F_2[x]: adjoined", list(cover.adjoined))
cover4 = semiperfect_cover(g)
print("cover of F_2 -> F_4: adjoined", list(cover4.adjoined), "(pruned away: F_4 is perfect)")
