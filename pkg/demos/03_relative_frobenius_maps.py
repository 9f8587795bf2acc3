"""The relative Frobenius map of an algebra map, made explicit.

For f: R -> S the twist S (x)_{R,F} R is presented on the variables of S
plus a fresh copy of the variables of R, and the relative Frobenius sends
an S-variable to its p-th power and a twisted R-variable through f.  Its
surjectivity and bijectivity are decided by graph-ideal eliminations, and a
brute-force count on finite algebras confirms the verdicts.
"""

from frobforge import (
    AlgebraMap,
    FPAlgebra,
    PrimeField,
    in_image,
    is_isomorphism,
    is_surjective,
    map_kernel,
    oracle_map_bijective,
    relative_frobenius,
)

F2 = PrimeField(2)

print("# a quotient projection: F_2[x] ->> F_2[x]/(x^2)")
R = FPAlgebra.free(F2, ("x",))
S = FPAlgebra(R.ring, (R.gens()[0] ** 2,))
f = AlgebraMap(R, S, [S.gens()[0]])
rf = relative_frobenius(f)
print("twist presentation:", rf.domain)
print("map:", rf)
print("surjective?", is_surjective(rf))
ok, _ = is_isomorphism(rf)
print("isomorphism?", ok, " (the kernel is the square of the twisted copy)")
ker = map_kernel(rf)
print("kernel contains x_r^2?", ker.contains_poly(rf.domain.ring.var(1) ** 2))

print("\n# a separable field extension: F_2 -> F_4")
F4 = FPAlgebra(FPAlgebra.free(F2, ("x",)).ring,
               (FPAlgebra.free(F2, ("x",)).gens()[0] ** 2
                + FPAlgebra.free(F2, ("x",)).gens()[0] + 1,))
g = AlgebraMap(FPAlgebra.free(F2, ()), F4, [])
rg = relative_frobenius(g)
ok, inverse = is_isomorphism(rg)
print("relative Frobenius bijective?", ok)
print("oracle count agrees?", oracle_map_bijective(rg))

print("\n# image membership with witnesses: the Artin-Schreier line")
amb = FPAlgebra.free(F2, ("x", "y"))
x, y = amb.gens()
AS = FPAlgebra(amb.ring, (y**2 + y + x,))
h = AlgebraMap(FPAlgebra.free(F2, ("x",)), AS, [AS.gens()[0]])
rh = relative_frobenius(h)
hit, witness = in_image(rh, AS.gens()[1])
print("is y in the image of the relative Frobenius?", hit)
print("witness preimage:", witness)
print("check: witness maps to", rh.apply(witness))
