"""Truncated homology and the p-basis search.

Syzygies, free resolutions, and Tor dimensions over finitely presented
algebras; the Frobenius pushforward as an explicit module; and the search
for elements whose adjunction presents a map as relatively perfect over a
free extension (with honest Fitting-ideal obstructions when none exist).
"""

from frobforge import (
    AlgebraMap,
    FPAlgebra,
    ModuleElement,
    ModulePresentation,
    PrimeField,
    find_p_basis,
    free_resolution,
    frobenius_pushforward,
    syzygy_module,
    tor,
)

F2 = PrimeField(2)

print("# Koszul syzygy of (x, y) over F_2[x, y]")
A = FPAlgebra.free(F2, ("x", "y"))
x, y = A.gens()
pres = syzygy_module([ModuleElement((x,)), ModuleElement((y,))], A)
print("syzygies:", [str(r) for r in pres.relations])

print("\n# the periodic resolution over the dual numbers")
ambD = FPAlgebra.free(F2, ("x",))
D = FPAlgebra(ambD.ring, (ambD.gens()[0] ** 2,))
M = ModulePresentation(D, 1, [ModuleElement((D.gens()[0],))])
C = free_resolution(M, 4)
print("ranks:", C.ranks, " (multiplication by x forever)")
print("Tor dims of the residue field against itself:", tor(M, M, 3).dims)

print("\n# the Frobenius pushforward as a module presentation")
ambE = FPAlgebra.free(F2, ("e",))
E = FPAlgebra(ambE.ring, (ambE.gens()[0] ** 2 + ambE.gens()[0],))
FE = frobenius_pushforward(E)
print("generators:", FE.rank, " relations:", [str(r) for r in FE.relations])
print("(the relation (e, 1) says the second generator is redundant: free of rank 1)")

print("\n# p-basis search on the affine plane")
for p in (2, 3):
    plane = FPAlgebra.free(PrimeField(p), ("x", "y"))
    res = find_p_basis(AlgebraMap(FPAlgebra.free(PrimeField(p), ()), plane, []))
    print(f"p = {p}: basis {res.basis_names}, verified perfect over the free extension:",
          res.certificate.holds)

print("\n# the cuspidal curve over F_5 is obstructed")
amb5 = FPAlgebra.free(PrimeField(5), ("x", "y"))
x5, y5 = amb5.gens()
cusp = FPAlgebra(amb5.ring, (y5**2 - x5**3,))
res = find_p_basis(AlgebraMap(FPAlgebra.free(PrimeField(5), ()), cusp, []))
print("success:", res.success)
print("obstruction at Fitting index", res.obstruction_index, ":",
      [str(g) for g in res.obstruction.gens])
