"""Exact sparse multivariate polynomial arithmetic over prime fields F_p.

A polynomial is a map from exponent vectors (Monomial) to nonzero
coefficients in [1, p).  The representation is canonical: two polynomials
are equal exactly when their term maps are equal.  All values are immutable
after construction and safe to share across threads.

Coefficients are machine integers reduced into [0, p); p is restricted
below 2**16 so products fit a machine word before reduction.  Ambient rings
carry at most 64 named variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import PreconditionError

MAX_VARS = 64
MAX_PRIME = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The prime field F_p, 2 <= p < 2**16, with a deterministic primality check."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p < MAX_PRIME:
            raise PreconditionError(f"field characteristic must be in [2, 2^16): got {p}")
        if not _is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        self.p = p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class Monomial(tuple):
    """Exponent vector of a power product, one entry per ambient variable."""

    __slots__ = ()

    def degree(self) -> int:
        return sum(self)

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(a + b for a, b in zip(self, other))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self, other))

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; caller guarantees divisibility."""
        return Monomial(a - b for a, b in zip(self, other))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(max(a, b) for a, b in zip(self, other))

    def scaled(self, q: int) -> "Monomial":
        """Exponent scaling, the monomial raised to the q-th power."""
        return Monomial(a * q for a in self)

    def is_coprime(self, other: "Monomial") -> bool:
        return all(a == 0 or b == 0 for a, b in zip(self, other))

    def is_one(self) -> bool:
        return not any(self)

    @staticmethod
    def one(nvars: int) -> "Monomial":
        return Monomial((0,) * nvars)

    @staticmethod
    def unit(nvars: int, i: int) -> "Monomial":
        return Monomial(tuple(1 if j == i else 0 for j in range(nvars)))


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: one of lex, grevlex, or block elimination.

    `perm` lists variable indices in decreasing priority; None means the
    ambient order.  For `block`, the first `split` entries of the priority
    list form the eliminated block, compared grevlex-first, so any monomial
    meeting the block beats any monomial outside it.
    """

    kind: str
    perm: tuple | None = None
    split: int | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise PreconditionError(f"unknown monomial order kind {self.kind!r}")
        if self.kind == "block" and self.split is None:
            raise PreconditionError("block order needs a split index")

    def _permuted(self, m: Monomial):
        if self.perm is None:
            return tuple(m)
        return tuple(m[i] for i in self.perm)

    def key(self, m: Monomial):
        """Sort key; larger key means larger monomial."""
        e = self._permuted(m)
        if self.kind == "lex":
            return e
        if self.kind == "grevlex":
            return _grevlex_key(e)
        return (_grevlex_key(e[: self.split]), _grevlex_key(e[self.split:]))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def elimination_order(split: int, perm: tuple | None = None) -> MonomialOrder:
    """Block order eliminating the first `split` priority variables."""
    return MonomialOrder("block", perm=perm, split=split)


def monomial_compare(order: MonomialOrder, a: Monomial, b: Monomial) -> int:
    """Total-order comparison of two monomials in the same ambient ring."""
    if len(a) != len(b):
        raise PreconditionError("monomials from mismatched ambient rings")
    return order.compare(a, b)


class PolyRing:
    """An ambient polynomial ring F_p[names]; value semantics on (field, names)."""

    __slots__ = ("field", "names", "_index")

    def __init__(self, field: PrimeField, names: Iterable[str]):
        names = tuple(names)
        if len(names) > MAX_VARS:
            raise PreconditionError(f"at most {MAX_VARS} variables per ring")
        if len(set(names)) != len(names):
            raise PreconditionError(f"duplicate variable names in {names}")
        self.field = field
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c %= self.field.p
        if c == 0:
            return self.zero()
        return Polynomial(self, {Monomial.one(self.nvars): c})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self._index[i]
        if not 0 <= i < self.nvars:
            raise PreconditionError(f"variable index {i} out of range")
        return Polynomial(self, {Monomial.unit(self.nvars, i): 1})

    def gens(self) -> tuple:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> "Polynomial":
        m = Monomial(exps)
        if len(m) != self.nvars:
            raise PreconditionError("exponent vector length mismatch")
        if any(e < 0 for e in m):
            raise PreconditionError("negative exponent")
        c = coeff % self.field.p
        return Polynomial(self, {m: c} if c else {})

    def from_terms(self, terms: Mapping) -> "Polynomial":
        out: dict = {}
        for m, c in terms.items():
            m = Monomial(m)
            if len(m) != self.nvars:
                raise PreconditionError("exponent vector length mismatch")
            c = (out.get(m, 0) + c) % self.field.p
            if c:
                out[m] = c
            else:
                out.pop(m, None)
        return Polynomial(self, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.names == self.names
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.names))

    def __repr__(self) -> str:
        return f"PolyRing(F_{self.field.p}, {list(self.names)})"


class Polynomial:
    """Sparse polynomial in canonical form: no stored coefficient is zero."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m.is_one() for m in self.terms)

    def constant(self) -> int:
        return self.terms.get(Monomial.one(self.ring.nvars), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(m.degree() for m in self.terms)

    def leading(self, order: MonomialOrder = GREVLEX):
        """(monomial, coefficient) of the largest term under `order`."""
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def as_variable_index(self) -> int | None:
        """Index i if the polynomial is exactly the variable x_i, else None."""
        if len(self.terms) != 1:
            return None
        (m, c), = self.terms.items()
        if c != 1 or m.degree() != 1:
            return None
        return next(i for i, e in enumerate(m) if e)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise PreconditionError("polynomials from mismatched ambient rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        p = self.ring.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            c = (out.get(m, 0) + c) % p
            if c:
                out[m] = c
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.ring.field.p
            if c == 0:
                return self.ring.zero()
            return Polynomial(
                self.ring,
                {m: (a * c) % self.ring.field.p for m, a in self.terms.items()},
            )
        self._check(other)
        p = self.ring.field.p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.mul(m2)
                c = (out.get(m, 0) + c1 * c2) % p
                if c:
                    out[m] = c
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PreconditionError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    __hash__ = None  # mutable-dict carrier; use str(f) for hashable identity

    # -- characteristic-p structure ---------------------------------------

    def frobenius_power(self, k: int) -> "Polynomial":
        """f to the p^k-th power, computed term-wise by exponent scaling.

        Coefficients are fixed by Fermat (a^p = a in F_p), so the freshman's
        dream is exact: only the exponents scale.
        """
        if k < 0:
            raise PreconditionError("frobenius power needs k >= 0")
        if k == 0:
            return self
        q = self.ring.field.p ** k
        return Polynomial(self.ring, {m.scaled(q): c for m, c in self.terms.items()})

    def partial_derivative(self, i) -> "Polynomial":
        """Formal partial derivative with respect to variable i, reduced mod p."""
        if isinstance(i, str):
            i = self.ring.index(i)
        if not 0 <= i < self.ring.nvars:
            raise PreconditionError(f"variable index {i} out of range")
        p = self.ring.field.p
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            c2 = (c * e) % p
            if not c2:
                continue
            m2 = Monomial(tuple(x - 1 if j == i else x for j, x in enumerate(m)))
            c2 = (out.get(m2, 0) + c2) % p
            if c2:
                out[m2] = c2
            else:
                out.pop(m2, None)
        return Polynomial(self.ring, out)

    def substitute(self, target: PolyRing, images: list) -> "Polynomial":
        """Evaluate at `images` (one polynomial in `target` per variable)."""
        if len(images) != self.ring.nvars:
            raise PreconditionError("one image per variable required")
        out = target.zero()
        powers: dict = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cache = powers.setdefault(i, {})
                if e not in cache:
                    cache[e] = images[i] ** e
                term = term * cache[e]
            out = out + term
        return out

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=GREVLEX.key, reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(self.ring.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<{self} over F_{self.ring.field.p}[{', '.join(self.ring.names)}]>"


def frobenius_power_poly(f: Polynomial, k: int) -> Polynomial:
    """f^(p^k) by term-wise exponent scaling; exact in characteristic p."""
    return f.frobenius_power(k)


def partial_derivative(f: Polynomial, i) -> Polynomial:
    return f.partial_derivative(i)


def fresh_name(base: str, taken) -> str:
    """Deterministically pick a name not in `taken`, derived from `base`."""
    if base not in taken:
        return base
    i = 2
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"
