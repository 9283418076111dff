"""Exact sparse multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero ``Fraction``
coefficients. Variables are written ``x0, x1, ...``. The monomial order used
for division and for canonical rendering is graded lexicographic with
``x0 > x1 > ... ``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError, ParseError

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


def grlex_key(monomial: Monomial) -> tuple[int, Monomial]:
    return (sum(monomial), monomial)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class SparsePolynomial:
    """A polynomial in ``nvars`` variables with exact rational coefficients."""

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], Scalar] | None = None):
        if not isinstance(nvars, int) or nvars < 1:
            raise DomainError(f"nvars must be a positive integer, got {nvars!r}")
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise DomainError(f"monomial {mono} has length {len(mono)}, expected {nvars}")
            if any(e < 0 for e in mono):
                raise DomainError(f"negative exponent in {mono}")
            c = as_fraction(coeff)
            total = clean.get(mono, Fraction(0)) + c
            if total:
                clean[mono] = total
            else:
                clean.pop(mono, None)
        self._nvars = nvars
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, nvars: int) -> "SparsePolynomial":
        return cls(nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "SparsePolynomial":
        if not 0 <= index < nvars:
            raise DomainError(f"variable index {index} out of range for {nvars} variables")
        mono = tuple(int(i == index) for i in range(nvars))
        return cls(nvars, {mono: 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: Scalar = 1) -> "SparsePolynomial":
        return cls(len(exponents), {tuple(exponents): coeff})

    @classmethod
    def linear(cls, coeffs: Sequence[Scalar]) -> "SparsePolynomial":
        """The linear form ``sum(coeffs[i] * x_i)``."""
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    # read access

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def support(self) -> frozenset[Monomial]:
        return frozenset(self._terms)

    def coefficient(self, monomial: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(monomial), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degrees = {sum(m) for m in self._terms}
        if len(degrees) > 1:
            return False
        if degree is None or not degrees:
            return True
        return degrees == {degree}

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in decreasing graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise DomainError("the zero polynomial has no leading term")
        mono = max(self._terms, key=grlex_key)
        return mono, self._terms[mono]

    # arithmetic

    def _check_compatible(self, other: "SparsePolynomial") -> None:
        if other.nvars != self.nvars:
            raise DomainError(f"mismatched variable counts: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial(self.nvars, {(0,) * self.nvars: other})
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return SparsePolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, SparsePolynomial)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial(self.nvars, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        self._check_compatible(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return SparsePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "SparsePolynomial":
        if exponent < 0:
            raise DomainError("negative powers are not polynomials")
        result = SparsePolynomial(self.nvars, {(0,) * self.nvars: 1})
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.nvars}, {render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    # serialization

    def to_records(self) -> list[dict]:
        return [{"exponents": list(m), "coeff": format_rational(c)} for m, c in self.sorted_terms()]

    @classmethod
    def from_records(cls, records: Iterable[Mapping], nvars: int | None = None) -> "SparsePolynomial":
        terms: dict[Monomial, Fraction] = {}
        records = list(records)
        for i, rec in enumerate(records):
            try:
                exps = tuple(int(e) for e in rec["exponents"])
                coeff = as_fraction(rec["coeff"])
            except (KeyError, TypeError) as exc:
                raise ParseError(f"malformed term record #{i}: {rec!r}") from exc
            if nvars is None:
                nvars = len(exps)
            if len(exps) != nvars:
                raise ParseError(f"term record #{i} has {len(exps)} exponents, expected {nvars}")
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        if nvars is None:
            raise ParseError("cannot infer the number of variables from an empty record list")
        return cls(nvars, terms)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _render_monomial(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def render(p: SparsePolynomial) -> str:
    """Canonical text form, inverse to :func:`parse_polynomial`."""
    if p.is_zero():
        return "0"
    out = []
    for mono, coeff in p.sorted_terms():
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = _render_monomial(mono)
        if not body:
            text = format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_rational(mag)}*{body}"
        out.append((sign, text))
    first_sign, first = out[0]
    pieces = [("-" if first_sign == "-" else "") + first]
    pieces.extend(f" {s} {t}" for s, t in out[1:])
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*/^]))")


def parse_polynomial(text: str, nvars: int) -> SparsePolynomial:
    """Parse a signed sum of terms such as ``"1/2*x0^3 - x1*x2 + 3"``."""
    if not isinstance(nvars, int) or nvars < 1:
        raise DomainError(f"nvars must be a positive integer, got {nvars!r}")
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    stripped_end = len(text.rstrip())
    while pos < stripped_end:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("var") is not None:
            tokens.append(("var", m.group("idx"), m.start("var")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", stripped_end))

    terms: dict[Monomial, Fraction] = {}
    i = 0

    def peek():
        return tokens[i]

    def expect_int() -> int:
        nonlocal i
        kind, val, at = tokens[i]
        if kind != "num":
            raise ParseError("expected an integer", at)
        i += 1
        return int(val)

    def parse_factor(exps: list[int]) -> Fraction:
        """One factor: a rational constant or ``x<i>[^e]``; returns its scalar part."""
        nonlocal i
        kind, val, at = peek()
        if kind == "num":
            i += 1
            num = int(val)
            if peek()[:2] == ("op", "/"):
                i += 1
                den = expect_int()
                if den == 0:
                    raise ParseError("zero denominator", tokens[i - 1][2])
                return Fraction(num, den)
            return Fraction(num)
        if kind == "var":
            i += 1
            idx = int(val)
            if idx >= nvars:
                raise ParseError(f"variable x{idx} out of range for {nvars} variables", at)
            power = 1
            if peek()[:2] == ("op", "^"):
                i += 1
                power = expect_int()
            exps[idx] += power
            return Fraction(1)
        raise ParseError("expected a number or a variable", at)

    expect_term = True
    sign = 1
    if peek()[0] == "end":
        raise ParseError("empty polynomial", 0)
    while True:
        kind, val, at = peek()
        if kind == "op" and val in "+-":
            i += 1
            sign = 1 if val == "+" else -1
            kind, val, at = peek()
        elif not expect_term:
            raise ParseError("expected '+' or '-' between terms", at)
        exps = [0] * nvars
        coeff = Fraction(sign) * parse_factor(exps)
        while peek()[:2] == ("op", "*"):
            i += 1
            coeff *= parse_factor(exps)
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
        expect_term = False
        sign = 1
        if peek()[0] == "end":
            break
        if peek()[0] != "op" or peek()[1] not in "+-":
            raise ParseError(f"unexpected token {peek()[1]!r}", peek()[2])
    return SparsePolynomial(nvars, terms)


def divide_by_linear(p: SparsePolynomial, l: SparsePolynomial) -> tuple[SparsePolynomial, SparsePolynomial]:
    """Quotient and remainder of ``p`` by the linear form ``l`` (grlex division)."""
    if l.nvars != p.nvars:
        raise DomainError(f"mismatched variable counts: {l.nvars} vs {p.nvars}")
    if l.is_zero():
        raise DomainError("division by the zero polynomial")
    if not l.is_homogeneous(1):
        raise DomainError("divisor must be a homogeneous linear form")
    lead_mono, lead_coeff = l.leading_term()
    lead_var = lead_mono.index(1)
    quotient: dict[Monomial, Fraction] = {}
    remainder: dict[Monomial, Fraction] = {}
    work = dict(p.terms)
    while work:
        mono = max(work, key=grlex_key)
        coeff = work.pop(mono)
        if mono[lead_var] == 0:
            remainder[mono] = coeff
            continue
        q_mono = tuple(e - (i == lead_var) for i, e in enumerate(mono))
        q_coeff = coeff / lead_coeff
        quotient[q_mono] = quotient.get(q_mono, Fraction(0)) + q_coeff
        for l_mono, l_coeff in l.terms.items():
            if l_mono == lead_mono:
                continue
            m = tuple(a + b for a, b in zip(q_mono, l_mono))
            new = work.get(m, Fraction(0)) - q_coeff * l_coeff
            if new:
                work[m] = new
            else:
                work.pop(m, None)
    return SparsePolynomial(p.nvars, quotient), SparsePolynomial(p.nvars, remainder)


def divides(l: SparsePolynomial, p: SparsePolynomial) -> bool:
    """True iff ``p = l * q`` for some polynomial ``q``; ``l`` must be linear."""
    return divide_by_linear(p, l)[1].is_zero()


def _check_permutation(sigma: Sequence[int], n: int) -> None:
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise DomainError(f"{list(sigma)} is not a permutation of range({n})")


def permute_monomial(mono: Sequence[int], sigma: Sequence[int]) -> Monomial:
    """Send ``x_i`` to ``x_sigma[i]``."""
    out = [0] * len(mono)
    for i, e in enumerate(mono):
        out[sigma[i]] = e
    return tuple(out)


def apply_permutation(p: SparsePolynomial, sigma: Sequence[int]) -> SparsePolynomial:
    """Relabel variables: ``x_i`` becomes ``x_sigma[i]``."""
    _check_permutation(sigma, p.nvars)
    return SparsePolynomial(p.nvars, {permute_monomial(m, sigma): c for m, c in p.terms.items()})


def monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    """All exponent vectors of the given total degree, in decreasing grlex order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out
