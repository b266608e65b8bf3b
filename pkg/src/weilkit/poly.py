"""Sparse multivariate polynomial arithmetic with exact rational coefficients.

A polynomial in n variables is a map from exponent tuples (one non-negative
integer per variable) to ``Fraction`` coefficients:

    x0^2*x1 + 3  ->  {(2, 1): Fraction(1), (0, 0): Fraction(3)}

Zero coefficients are never stored; the zero polynomial is the empty map and
its degree is -1 by convention.  All term streams (iteration, printing) use
graded lexicographic order, so formatted output is deterministic.

Coefficients stay exact through every operation.  ``Polynomial.evaluate``
accepts any arguments supporting ``+`` and ``*`` together with an explicit
multiplicative unit, which is how polynomials are pushed through quotient
algebras and symbolic chart coordinates elsewhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Exponents = tuple[int, ...]

Scalar = Fraction | int


def grlex_key(exponents: Exponents) -> tuple:
    """Sort key for graded lexicographic order: degree first, then x0 > x1 > ..."""
    return (sum(exponents), tuple(-e for e in exponents))


class PolynomialParseError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset of the error."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Polynomial:
    """Immutable sparse polynomial over Fraction coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Scalar] | None = None):
        if nvars < 0:
            raise ValueError("variable count must be non-negative")
        clean: dict[Exponents, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(
                    f"term has {len(exp)} exponents, expected {nvars}"
                )
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent")
            coeff = Fraction(coeff)
            if coeff:
                clean[exp] = coeff
        self.nvars = nvars
        self._terms = clean  # never mutated after construction

    # ---------------------------------------------------------------- factories

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exponents: Iterable[int], coeff: Scalar = 1) -> "Polynomial":
        return cls(nvars, {tuple(exponents): Fraction(coeff)})

    # ------------------------------------------------------------------ queries

    def terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in ascending graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]))

    def coefficient(self, exponents: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # --------------------------------------------------------------- arithmetic

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"variable-count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return None

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + coeff
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Exponents, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                out[exp] = out.get(exp, Fraction(0)) + ca * cb
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        for _ in range(n):
            result = result * self
        return result

    def partial(self, var: int) -> "Polynomial":
        """Formal partial derivative with respect to variable ``var``."""
        if not 0 <= var < self.nvars:
            raise ValueError(f"variable index {var} out of range for {self.nvars} variables")
        out: dict[Exponents, Fraction] = {}
        for exp, coeff in self._terms.items():
            e = exp[var]
            if e == 0:
                continue
            new = list(exp)
            new[var] = e - 1
            out[tuple(new)] = coeff * e
        return Polynomial(self.nvars, out)

    def evaluate(self, args: Sequence, one=Fraction(1)):
        """Value under the ring homomorphism sending variable i to args[i].

        ``one`` must be the multiplicative unit of the target ring; constants
        are embedded as ``coeff * one``.  With the default unit and scalar
        arguments this is ordinary evaluation.
        """
        if len(args) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments, got {len(args)}")
        powers: list[dict[int, object]] = [{} for _ in range(self.nvars)]

        def power(i: int, e: int):
            cache = powers[i]
            if e in cache:
                return cache[e]
            value = args[i] if e == 1 else power(i, e - 1) * args[i]
            cache[e] = value
            return value

        total = None
        for exp, coeff in self.terms():
            term = coeff * one
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            total = term if total is None else total + term
        if total is None:
            return Fraction(0) * one
        return total

    def __repr__(self) -> str:
        names = [f"x{i + 1}" for i in range(self.nvars)]
        return f"Polynomial({self.to_str(names)!r})"

    # ---------------------------------------------------------------- formatting

    def to_str(self, variables: Sequence[str]) -> str:
        """Render in the same syntax ``parse_polynomial`` accepts."""
        if len(variables) != self.nvars:
            raise ValueError("variable-name count mismatch")
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for exp, coeff in reversed(self.terms()):
            mono = monomial_str(exp, variables)
            if mono == "1":
                body = _fraction_str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{_fraction_str(abs(coeff))}*{mono}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(pieces)


def monomial_str(exponents: Exponents, variables: Sequence[str]) -> str:
    parts = []
    for name, e in zip(variables, exponents):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ------------------------------------------------------------------- parsing

_OPERATORS = set("+-*^()/")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPERATORS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        start = i
        if ch.isdigit():
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(("int", text[start:i], start))
            continue
        while i < len(text) and not text[i].isspace() and text[i] not in _OPERATORS:
            i += 1
        tokens.append(("name", text[start:i], start))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.nvars = len(variables)
        self.index = {name: i for i, name in enumerate(variables)}

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> None:
        raise PolynomialParseError(message, self.peek()[2])

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise PolynomialParseError(f"unexpected {value!r}", pos)
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.advance()[0] == "-" else 1
        total = self.term() * sign
        while self.peek()[0] in "+-":
            op = self.advance()[0]
            nxt = self.term()
            total = total + nxt if op == "+" else total - nxt
        return total

    def term(self) -> Polynomial:
        total = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            total = total * self.factor()
        return total

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            kind, value, pos = self.peek()
            if kind != "int":
                raise PolynomialParseError("exponent must be a non-negative integer", pos)
            self.advance()
            return base ** int(value)
        return base

    def atom(self) -> Polynomial:
        kind, value, pos = self.peek()
        if kind == "int":
            self.advance()
            numerator = int(value)
            if self.peek()[0] == "/":
                self.advance()
                dkind, dvalue, dpos = self.peek()
                if dkind != "int":
                    raise PolynomialParseError("expected integer denominator", dpos)
                self.advance()
                if int(dvalue) == 0:
                    raise PolynomialParseError("zero denominator", dpos)
                return Polynomial.constant(self.nvars, Fraction(numerator, int(dvalue)))
            return Polynomial.constant(self.nvars, numerator)
        if kind == "name":
            self.advance()
            if value not in self.index:
                raise PolynomialParseError(f"unknown variable {value!r}", pos)
            return Polynomial.variable(self.nvars, self.index[value])
        if kind == "(":
            self.advance()
            inner = self.expr()
            ckind, _, cpos = self.peek()
            if ckind != ")":
                raise PolynomialParseError("expected ')'", cpos)
            self.advance()
            return inner
        raise PolynomialParseError(
            "expected a number, variable or '('" if kind != "end" else "unexpected end of input",
            pos,
        )


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` over the named variables.

    Syntax: ``+ - * ^`` with integer or rational (``p/q``) literals, e.g.
    ``x1^2*x2 - 3/2*x1``.  Raises :class:`PolynomialParseError` with the
    offending position on bad input.
    """
    return _Parser(text, variables).parse()
