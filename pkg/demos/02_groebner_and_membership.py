"""Reduced Gröbner bases: canonical ideal arithmetic and an independent check.

The engine is plain Buchberger with the two classical pair criteria and a
hard S-pair budget.  Reduced bases are unique per monomial order, which
turns ideal equality into a structural comparison, and normal forms decide
membership.  The oracle module re-decides membership with pure linear
algebra so the two routes can vouch for one another.
"""

from frobforge import (
    Ideal,
    LEX,
    PolyRing,
    PrimeField,
    eliminate,
    frobenius_power_ideal,
    ideal_equal,
    normal_form,
    oracle_ideal_membership,
    reduced_groebner,
)

R = PolyRing(PrimeField(2), ("x", "y"))
x, y = R.gens()

I = Ideal(R, (x**2 + y, y**2))
print("# reduced basis under lex x > y")
for g in reduced_groebner(I, LEX):
    print("  ", g)

print("\n# normal forms decide membership")
f = x**2 * y + y
print(f"normal_form({f}) =", normal_form(f, I, LEX))
print("is x^4 in I?", normal_form(x**4, I, LEX).is_zero())

print("\n# the linear-algebra oracle agrees (no Buchberger involved)")
for probe in (f, x**4, x**2 + y, x):
    engine = normal_form(probe, I).is_zero()
    oracle = oracle_ideal_membership(probe, I)
    print(f"  {str(probe):12s} engine={engine}  oracle={oracle}")
    assert engine == oracle

print("\n# elimination projects a parametrized curve onto its equation")
P = PolyRing(PrimeField(2), ("t", "u", "v"))
t, u, v = P.gens()
graph = Ideal(P, (u + t**2, v + t**3))
print("eliminating t from (u - t^2, v - t^3):",
      [str(g) for g in eliminate(graph, ["u", "v"]).gens])

print("\n# bracket powers: generated by p^k-th powers of any generating set")
J = Ideal(R, (x + y,))
print("(x + y)^[2] =", [str(g) for g in frobenius_power_ideal(J, 1).gens])
assert ideal_equal(
    frobenius_power_ideal(frobenius_power_ideal(J, 1), 1),
    frobenius_power_ideal(J, 2),
)
print("bracket powers compose: ((x+y)^[2])^[2] = (x+y)^[4]")
