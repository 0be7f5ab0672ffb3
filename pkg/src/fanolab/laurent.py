"""Exact sparse Laurent polynomial arithmetic in n variables.

Terms are stored as a map from integer exponent tuples to nonzero exact
rational coefficients (plain ints where possible).  All operations are pure;
polynomials are treated as immutable after construction.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd


class RankMismatchError(ValueError):
    pass


class ZeroPolynomialError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


def _norm_coeff(c):
    """Keep integer coefficients as plain ints."""
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return int(c)
        return c
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c)!r}")


class LaurentPolynomial:
    """A Laurent polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (length ``rank``) to nonzero coefficients.
    The zero polynomial is the empty term map.
    """

    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank, terms):
        if rank < 1:
            raise ValueError("rank must be a positive integer")
        clean = {}
        for e, c in terms.items():
            if len(e) != rank:
                raise RankMismatchError(
                    f"exponent {e} has length {len(e)}, expected {rank}")
            c = _norm_coeff(c)
            if c != 0:
                clean[tuple(int(x) for x in e)] = c
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, rank):
        return cls(rank, {})

    @classmethod
    def one(cls, rank):
        return cls(rank, {(0,) * rank: 1})

    @classmethod
    def monomial(cls, rank, exponent, coeff=1):
        return cls(rank, {tuple(exponent): coeff})

    @classmethod
    def from_terms(cls, rank, pairs):
        """Build from (exponent, coefficient) pairs, summing duplicates."""
        acc = {}
        for e, c in pairs:
            e = tuple(int(x) for x in e)
            acc[e] = acc.get(e, 0) + c
        return cls(rank, acc)

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coefficient(self, exponent):
        e = tuple(exponent)
        if len(e) != self.rank:
            raise RankMismatchError(
                f"exponent length {len(e)} does not match rank {self.rank}")
        return self.terms.get(e, 0)

    def constant_term(self):
        return self.terms.get((0,) * self.rank, 0)

    def support(self):
        return sorted(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations ---------------------------------------------------

    def _check_rank(self, other):
        if self.rank != other.rank:
            raise RankMismatchError(
                f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check_rank(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(self.rank, acc)

    def __sub__(self, other):
        self._check_rank(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, 0) - c
        return LaurentPolynomial(self.rank, acc)

    def __neg__(self):
        return LaurentPolynomial(self.rank,
                                 {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_rank(other)
        # sparse convolution; iterate the smaller factor on the outside
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                acc[e] = acc.get(e, 0) + ca * cb
        return LaurentPolynomial(self.rank, acc)

    __rmul__ = __mul__

    def scale(self, c):
        if c == 0:
            return LaurentPolynomial.zero(self.rank)
        return LaurentPolynomial(self.rank,
                                 {e: v * c for e, v in self.terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        # plain iterated multiplication: supports grow linearly, which is
        # what the streaming period computation relies on
        result = LaurentPolynomial.one(self.rank)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, exponent):
        """Multiply by the monomial x^exponent."""
        e0 = tuple(exponent)
        return LaurentPolynomial(
            self.rank,
            {tuple(x + y for x, y in zip(e, e0)): c
             for e, c in self.terms.items()})

    def apply_matrix(self, matrix):
        """Replace each exponent e by matrix @ e (rows of ints)."""
        acc = {}
        for e, c in self.terms.items():
            new = tuple(sum(row[i] * e[i] for i in range(self.rank))
                        for row in matrix)
            acc[new] = acc.get(new, 0) + c
        return LaurentPolynomial(self.rank, acc)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.rank, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"LaurentPolynomial({self.rank}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self):
        return {
            "n": self.rank,
            "terms": [{"e": list(e), "c": str(Fraction(c))}
                      for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json_dict(cls, data):
        rank = int(data["n"])
        terms = {}
        for t in data["terms"]:
            e = tuple(int(x) for x in t["e"])
            c = Fraction(t["c"])
            terms[e] = terms.get(e, 0) + c
        return cls(rank, terms)


# ---------------------------------------------------------------------------
# lattice-level change of variables


def determinant(matrix):
    """Exact integer determinant (expansion via fraction-free elimination)."""
    n = len(matrix)
    m = [list(row) for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class NotUnimodularError(ValueError):
    pass


def substitute_unimodular(f, matrix):
    """Apply the monomial change of variables given by a GL(n,Z) matrix."""
    matrix = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(matrix) != f.rank or any(len(r) != f.rank for r in matrix):
        raise RankMismatchError("matrix shape does not match rank")
    if determinant(matrix) not in (1, -1):
        raise NotUnimodularError("matrix determinant is not +-1")
    return f.apply_matrix(matrix)


def exponent_lattice_index(f):
    """Rank and index of the sublattice generated by the exponents of f.

    Returns ``(rank, index)`` where ``index`` is None when the sublattice is
    not of full rank (infinite index).  Index 1 means the exponents generate
    the whole lattice.
    """
    if f.is_zero():
        raise ZeroPolynomialError("zero polynomial has no exponent lattice")
    from .linalg import hnf_rows
    rows = [list(e) for e in f.support()]
    h, _, rk = hnf_rows(rows)
    if rk < f.rank:
        return rk, None
    index = 1
    # full rank: the HNF is square upper triangular on its pivot columns
    for i in range(rk):
        pivot = next(x for x in h[i] if x != 0)
        index *= abs(pivot)
    return rk, index


# ---------------------------------------------------------------------------
# text grammar


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[a-z]\d*)|(?P<op>[-+*/^()]))")
_VAR_RE = re.compile(r"[a-z]\d*")


def _variable_order(names):
    """Deterministic variable -> coordinate assignment.

    Indexed names (x1, x2, ...) are ordered by index; sets of single letters
    use the conventional x,y,z,w order when possible, otherwise alphabetical.
    """
    indexed = [n for n in names if len(n) > 1]
    if indexed:
        if len(indexed) != len(names):
            raise ParseError("inconsistent variable set: "
                             "cannot mix indexed and plain variables")
        if any(not n.startswith("x") for n in names):
            raise ParseError("indexed variables must be x1..xn")
        order = {}
        rank = 0
        for n in names:
            idx = int(n[1:])
            if idx < 1:
                raise ParseError(f"bad variable index in {n!r}")
            order[n] = idx - 1
            rank = max(rank, idx)
        return order, rank
    letters = sorted(names)
    if set(letters) <= set("xyzw"):
        # absolute slots, so e.g. "y" alone still means the second variable
        # and formatting round-trips
        order = {v: "xyzw".index(v) for v in letters}
        rank = 1 + max(order.values()) if order else 0
        return order, rank
    return {v: i for i, v in enumerate(letters)}, len(letters)


class _Parser:
    """Recursive-descent parser for the polynomial text grammar.

    Accepts a superset of the printed grammar: parenthesised subexpressions
    with integer powers and division by monomials, so inputs like
    ``(x+y+1)^3/(x*y*z) + z`` work.  ``format_polynomial`` only ever emits
    the flat grammar, and parse(format(f)) == f exactly.
    """

    def __init__(self, text, rank, var_index):
        self.text = text
        self.rank = rank
        self.var_index = var_index
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                if text[pos:].strip():
                    raise ParseError(f"unexpected character {text[pos]!r}",
                                     pos)
                break
            self.tokens.append((m.lastgroup, m.group(m.lastgroup), pos))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self):
        poly = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected token {val!r}", pos)
        return poly

    def expr(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        poly = self.term()
        if negate:
            poly = -poly
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                poly = poly - rhs if val == "-" else poly + rhs
            else:
                return poly

    def term(self):
        poly = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                if val == "*":
                    poly = poly * rhs
                else:
                    poly = poly * self._invert(rhs, pos)
            else:
                return poly

    def _invert(self, poly, pos):
        if len(poly) != 1:
            raise ParseError("division is only defined by monomials", pos)
        (e, c), = poly.terms.items()
        return LaurentPolynomial(self.rank,
                                 {tuple(-x for x in e): Fraction(1, 1) / c})

    def factor(self):
        base = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            k = self._signed_int()
            if k >= 0:
                return base ** k
            return self._invert(base, pos) ** (-k)
        return base

    def _signed_int(self):
        kind, val, pos = self.next()
        sign = 1
        if kind == "op" and val == "-":
            sign = -1
            kind, val, pos = self.next()
        if kind != "num":
            raise ParseError("expected integer exponent", pos)
        return sign * int(val)

    def base(self):
        kind, val, pos = self.next()
        if kind == "num":
            c = int(val)
            nxt_kind, nxt_val, _ = self.peek()
            # rational coefficient p/q followed by '*' or end-of-term
            if nxt_kind == "op" and nxt_val == "/":
                save = self.i
                self.next()
                k2, v2, _ = self.peek()
                if k2 == "num":
                    self.next()
                    k3, v3, _ = self.peek()
                    if not (k3 == "op" and v3 == "^"):
                        return LaurentPolynomial(
                            self.rank, {(0,) * self.rank: Fraction(c, int(v2))})
                self.i = save
            return LaurentPolynomial(self.rank, {(0,) * self.rank: c})
        if kind == "var":
            e = [0] * self.rank
            e[self.var_index[val]] = 1
            return LaurentPolynomial(self.rank, {tuple(e): 1})
        if kind == "op" and val == "(":
            poly = self.expr()
            self.expect_op(")")
            return poly
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_polynomial(text, rank_hint=None):
    """Parse a Laurent polynomial from text.

    The variable set determines the ambient rank unless ``rank_hint`` pads it
    (exponent vectors are extended with zeros).
    """
    names = sorted(set(_VAR_RE.findall(text)))
    var_index, rank = _variable_order(names)
    if rank_hint is not None:
        if rank_hint < rank:
            raise ParseError(
                f"rank hint {rank_hint} smaller than required rank {rank}")
        rank = rank_hint
    if rank == 0:
        if rank_hint is None:
            raise ParseError("constant polynomial needs a rank hint")
        rank = rank_hint
    parser = _Parser(text, rank, var_index)
    return parser.parse()


def _default_names(rank):
    if rank <= 4:
        return "xyzw"[:rank]
    return [f"x{i + 1}" for i in range(rank)]


def format_polynomial(f):
    """Canonical text form; round-trips bit-exactly through the parser."""
    if f.is_zero():
        return "0"
    names = _default_names(f.rank)
    parts = []
    for e in sorted(f.terms, reverse=True):
        c = f.terms[e]
        mono = []
        for i, k in enumerate(e):
            if k == 0:
                continue
            mono.append(names[i] if k == 1 else f"{names[i]}^{k}")
        mag = abs(Fraction(c))
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = "*".join(mono)
        else:
            body = "*".join([str(mag)] + mono)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
