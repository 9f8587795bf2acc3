"""Exact polynomial arithmetic over F_p and the Frobenius power map.

Every coefficient lives in a prime field F_p with p < 2^16, every value is
immutable, and equality is structural: two polynomials agree exactly when
their canonical term maps agree.
"""

from frobforge import GREVLEX, LEX, PolyRing, PrimeField, frobenius_power_poly, partial_derivative

# A ring is a prime plus named variables.
F2 = PrimeField(2)
R = PolyRing(F2, ("x", "y"))
x, y = R.gens()

print("# the freshman's dream is exact in characteristic p")
f = x + y
print(f"({f})^2      =", f * f)
print("frobenius^1 =", frobenius_power_poly(f, 1))
assert f * f == frobenius_power_poly(f, 1)

# The Frobenius power never multiplies polynomials: it scales exponents
# term by term, because coefficients in F_p are fixed by a -> a^p.
F3 = PolyRing(PrimeField(3), ("x", "y"))
u, v = F3.gens()
print("\n# term-wise cube over F_3")
print("(x*y + 1)^3 =", frobenius_power_poly(u * v + 1, 1))

print("\n# derivatives see p-th powers as constants")
print("d/dx x^3 over F_3 =", partial_derivative(u**3, 0))
print("d/dx (x*y)        =", partial_derivative(u * v, 0))

print("\n# monomial orders: grevlex weighs total degree first, lex does not")
g = x**2 + y**3
lead_grevlex = R.monomial(g.leading(GREVLEX)[0])
lead_lex = R.monomial(g.leading(LEX)[0])
print("leading term under grevlex:", lead_grevlex, "(total degree wins)")
print("leading term under lex:    ", lead_lex, "(x beats y)")
