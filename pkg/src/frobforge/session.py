"""Session language: tokenizer, AST, parser, and printer.

The grammar is LL(1):

    session := {stmt ";"}
    stmt    := "p" INT
             | "ring" NAME "=" "[" [vars] "]" ["/" "(" polys ")"]
             | "map" NAME ":" NAME "->" NAME "=" "{" [images] "}"
             | cmd
    cmd     := "gb" NAME
             | "check" ("semiperfect" | "perfect" | "iso") NAME
             | "relfrob" NAME | "tower" NAME INT | "factorize" NAME INT
             | "pbasis" NAME | "tor" NAME NAME INT
             | "stab" NAME "(" polys ")" INT
             | "cofinal" NAME "(" polys ")" INT
    images  := var "->" poly {"," var "->" poly} [","]
    poly    := ["-"] term {("+" | "-") term}
    term    := factor {"*" factor}
    factor  := INT | NAME ["^" INT]

Coefficients are decimal integers reduced mod p.  `#` starts a line
comment.  Names resolve in declaration order and exactly one prime
declaration must precede the first ring.  Every parse error carries a line,
a column, and a one-line expectation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import FPAlgebra
from .errors import ParseError
from .polyring import Polynomial, PolyRing, PrimeField

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<arrow>->)|(?P<sym>[;=\[\]/(){},^*+:-])"
)

KEYWORDS = {
    "p", "ring", "map", "gb", "check", "relfrob", "tower", "factorize",
    "pbasis", "tor", "stab", "cofinal", "semiperfect", "perfect", "iso",
}


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "name" | "arrow" | one-character symbol | "eof"
    text: str
    line: int
    column: int


def tokenize(text: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            if kind == "sym":
                tokens.append(Token(chunk, chunk, line, col))
            else:
                tokens.append(Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


# -- AST ---------------------------------------------------------------------


@dataclass
class PrimeStmt:
    p: int
    loc: tuple = field(default=(0, 0), compare=False)


@dataclass
class RingStmt:
    name: str
    algebra: FPAlgebra
    loc: tuple = field(default=(0, 0), compare=False)


@dataclass
class MapStmt:
    name: str
    domain: str
    codomain: str
    images: tuple  # (variable name, Polynomial) per domain variable
    loc: tuple = field(default=(0, 0), compare=False)


@dataclass
class CommandStmt:
    command: str
    args: tuple  # names / ints / tuple-of-Polynomial, per command shape
    loc: tuple = field(default=(0, 0), compare=False)


@dataclass
class SessionAST:
    statements: tuple


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0
        self.prime: PrimeField | None = None
        self.rings: dict[str, FPAlgebra] = {}
        self.map_names: set[str] = set()
        self.map_sigs: dict[str, tuple] = {}

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, tok: Token, expected: str):
        raise ParseError(tok.line, tok.column, expected)

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.next()
        if tok.kind != kind:
            self.fail(tok, what or f"expected {kind!r}, found {tok.text!r}")
        return tok

    def expect_name(self, what="expected a name") -> Token:
        tok = self.next()
        if tok.kind != "name":
            self.fail(tok, f"{what}, found {tok.text!r}")
        return tok

    def expect_int(self, what="expected an integer") -> int:
        tok = self.next()
        if tok.kind != "int":
            self.fail(tok, f"{what}, found {tok.text!r}")
        return int(tok.text)

    # -- statements -----------------------------------------------------

    def parse_session(self) -> SessionAST:
        out = []
        while self.peek().kind != "eof":
            out.append(self.parse_stmt())
            self.expect(";", "expected ';' after the statement")
        return SessionAST(tuple(out))

    def parse_stmt(self):
        tok = self.peek()
        if tok.kind != "name":
            self.fail(tok, f"expected a statement keyword, found {tok.text!r}")
        word = tok.text
        if word == "p":
            return self.parse_prime()
        if word == "ring":
            return self.parse_ring()
        if word == "map":
            return self.parse_map()
        if word in ("gb", "check", "relfrob", "tower", "factorize", "pbasis",
                    "tor", "stab", "cofinal"):
            return self.parse_command()
        self.fail(tok, f"unknown statement {word!r}")

    def parse_prime(self):
        tok = self.next()
        if self.prime is not None:
            self.fail(tok, "prime p is already declared")
        value = self.expect_int("expected the prime after 'p'")
        try:
            self.prime = PrimeField(value)
        except Exception as exc:
            self.fail(tok, str(exc))
        return PrimeStmt(value, (tok.line, tok.column))

    def require_prime(self, tok: Token) -> PrimeField:
        if self.prime is None:
            self.fail(tok, "prime p must be declared first")
        return self.prime

    def fresh_decl_name(self, tok: Token):
        if tok.text in self.rings or tok.text in self.map_names:
            self.fail(tok, f"duplicate name {tok.text!r}")
        if tok.text in KEYWORDS:
            self.fail(tok, f"{tok.text!r} is a reserved word")

    def parse_ring(self):
        kw = self.next()
        field_ = self.require_prime(kw)
        name_tok = self.expect_name("expected the ring name")
        self.fresh_decl_name(name_tok)
        self.expect("=", "expected '=' in the ring declaration")
        self.expect("[", "expected '[' to open the variable list")
        names = []
        if self.peek().kind == "name":
            names.append(self.expect_name().text)
            while self.peek().kind == ",":
                self.next()
                names.append(self.expect_name("expected a variable name").text)
        close = self.expect("]", "expected ']' to close the variable list")
        if len(set(names)) != len(names):
            self.fail(close, "duplicate variable name in the ring declaration")
        ring = PolyRing(field_, tuple(names))
        rels = ()
        if self.peek().kind == "/":
            self.next()
            self.expect("(", "expected '(' before the relation list")
            rels = tuple(self.parse_polys(ring))
            self.expect(")", "expected ')' after the relation list")
        algebra = FPAlgebra(ring, rels)
        self.rings[name_tok.text] = algebra
        return RingStmt(name_tok.text, algebra, (kw.line, kw.column))

    def parse_map(self):
        kw = self.next()
        self.require_prime(kw)
        name_tok = self.expect_name("expected the map name")
        self.fresh_decl_name(name_tok)
        self.expect(":", "expected ':' after the map name")
        dom_tok = self.expect_name("expected the domain ring name")
        dom = self.lookup_ring(dom_tok)
        self.expect("arrow", "expected '->' between domain and codomain")
        cod_tok = self.expect_name("expected the codomain ring name")
        cod = self.lookup_ring(cod_tok)
        self.expect("=", "expected '=' before the image list")
        self.expect("{", "expected '{' to open the image list")
        images: dict[str, Polynomial] = {}
        while self.peek().kind == "name":
            var_tok = self.expect_name()
            if var_tok.text not in dom.ring.names:
                self.fail(var_tok, f"unknown domain variable {var_tok.text!r}")
            if var_tok.text in images:
                self.fail(var_tok, f"duplicate image for variable {var_tok.text!r}")
            self.expect("arrow", "expected '->' after the variable name")
            images[var_tok.text] = self.parse_poly(cod.ring)
            if self.peek().kind == ",":
                self.next()
            else:
                break
        close = self.expect("}", "expected '}' to close the image list")
        missing = [n for n in dom.ring.names if n not in images]
        if missing:
            self.fail(close, f"missing image for variable {missing[0]!r}")
        ordered = tuple((n, images[n]) for n in dom.ring.names)
        self.map_names.add(name_tok.text)
        self.map_sigs[name_tok.text] = (dom_tok.text, cod_tok.text)
        return MapStmt(name_tok.text, dom_tok.text, cod_tok.text, ordered,
                       (kw.line, kw.column))

    def lookup_ring(self, tok: Token) -> FPAlgebra:
        if tok.text not in self.rings:
            self.fail(tok, f"unknown ring name {tok.text!r}")
        return self.rings[tok.text]

    def lookup_map_name(self, tok: Token) -> str:
        if tok.text not in self.map_names:
            self.fail(tok, f"unknown map name {tok.text!r}")
        return tok.text

    def parse_command(self):
        kw = self.next()
        loc = (kw.line, kw.column)
        word = kw.text
        if word == "gb":
            ring_tok = self.expect_name("expected a ring name after 'gb'")
            self.lookup_ring(ring_tok)
            return CommandStmt("gb", (ring_tok.text,), loc)
        if word == "check":
            mode_tok = self.expect_name("expected one of semiperfect|perfect|iso")
            if mode_tok.text not in ("semiperfect", "perfect", "iso"):
                self.fail(mode_tok, "expected one of semiperfect|perfect|iso")
            map_tok = self.expect_name("expected a map name")
            self.lookup_map_name(map_tok)
            return CommandStmt("check", (mode_tok.text, map_tok.text), loc)
        if word == "relfrob":
            map_tok = self.expect_name("expected a map name after 'relfrob'")
            self.lookup_map_name(map_tok)
            return CommandStmt("relfrob", (map_tok.text,), loc)
        if word in ("tower", "factorize"):
            map_tok = self.expect_name(f"expected a map name after '{word}'")
            self.lookup_map_name(map_tok)
            n = self.expect_int("expected a stage count")
            return CommandStmt(word, (map_tok.text, n), loc)
        if word == "pbasis":
            map_tok = self.expect_name("expected a map name after 'pbasis'")
            self.lookup_map_name(map_tok)
            return CommandStmt("pbasis", (map_tok.text,), loc)
        if word == "tor":
            first = self.expect_name("expected a map name after 'tor'")
            self.lookup_map_name(first)
            second = self.expect_name("expected a second map name")
            self.lookup_map_name(second)
            if self.map_sigs[first.text][0] != self.map_sigs[second.text][0]:
                self.fail(second, "tor needs two maps with the same domain")
            bound = self.expect_int("expected the degree bound")
            return CommandStmt("tor", (first.text, second.text, bound), loc)
        if word in ("stab", "cofinal"):
            ring_tok = self.expect_name(f"expected a ring name after '{word}'")
            ring = self.lookup_ring(ring_tok)
            self.expect("(", "expected '(' before the ideal generators")
            polys = tuple(self.parse_polys(ring.ring))
            self.expect(")", "expected ')' after the ideal generators")
            n = self.expect_int("expected a stage count")
            return CommandStmt(word, (ring_tok.text, polys, n), loc)
        self.fail(kw, f"unknown command {word!r}")

    # -- polynomials ------------------------------------------------------

    def parse_polys(self, ring: PolyRing):
        out = [self.parse_poly(ring)]
        while self.peek().kind == ",":
            self.next()
            out.append(self.parse_poly(ring))
        return out

    def parse_poly(self, ring: PolyRing) -> Polynomial:
        negate = False
        if self.peek().kind == "-":
            self.next()
            negate = True
        acc = self.parse_term(ring)
        if negate:
            acc = -acc
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            term = self.parse_term(ring)
            acc = acc + term if op == "+" else acc - term
        return acc

    def parse_term(self, ring: PolyRing) -> Polynomial:
        acc = self.parse_factor(ring)
        while self.peek().kind == "*":
            self.next()
            acc = acc * self.parse_factor(ring)
        return acc

    def parse_factor(self, ring: PolyRing) -> Polynomial:
        tok = self.next()
        if tok.kind == "int":
            return ring.const(int(tok.text))
        if tok.kind == "name":
            if tok.text not in ring.names:
                self.fail(tok, f"unknown variable {tok.text!r}")
            base = ring.var(tok.text)
            if self.peek().kind == "^":
                self.next()
                e = self.expect_int("expected an exponent after '^'")
                return base**e
            return base
        self.fail(tok, f"expected a coefficient or variable, found {tok.text!r}")


def parse_session(text: str) -> SessionAST:
    """Parse a session; all errors carry line/column and an expectation."""
    return _Parser(tokenize(text)).parse_session()


# -- printing -----------------------------------------------------------------


def format_ring(algebra: FPAlgebra) -> str:
    head = "[" + ", ".join(algebra.ring.names) + "]"
    if algebra.relations.gens:
        return head + "/(" + ", ".join(str(g) for g in algebra.relations.gens) + ")"
    return head


def format_stmt(stmt) -> str:
    if isinstance(stmt, PrimeStmt):
        return f"p {stmt.p};"
    if isinstance(stmt, RingStmt):
        return f"ring {stmt.name} = {format_ring(stmt.algebra)};"
    if isinstance(stmt, MapStmt):
        body = ", ".join(f"{v} -> {img}" for v, img in stmt.images)
        return f"map {stmt.name} : {stmt.domain} -> {stmt.codomain} = {{ {body} }};"
    if isinstance(stmt, CommandStmt):
        parts = [stmt.command]
        if stmt.command == "check":
            parts.extend(stmt.args)
        elif stmt.command in ("stab", "cofinal"):
            name, polys, n = stmt.args
            parts.append(name)
            parts.append("(" + ", ".join(str(g) for g in polys) + ")")
            parts.append(str(n))
        else:
            parts.extend(str(a) for a in stmt.args)
        return " ".join(parts) + ";"
    raise TypeError(f"not a statement: {stmt!r}")


def format_session(ast: SessionAST) -> str:
    return "\n".join(format_stmt(s) for s in ast.statements) + "\n"
