"""Exact sparse multivariate polynomials over the rationals.

Contains:
    - RingContext: ordered variables, each tagged as parameter (U) or unknown (X)
    - Monomial helpers: exponent tuples and their arithmetic
    - Polynomial: immutable term map ``Monomial -> Fraction``
    - arith, partial_derivative, evaluate, canonical_string

Terms are stored without any ordering; operations that need one (leading terms,
printing) take a BlockOrder from ``discvar.core.ordering``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import TYPE_CHECKING, Iterable, Iterator, Literal, Mapping, Sequence, Union

from discvar.core.errors import (
    BadPrimeError,
    DegreeOverflowError,
    IncompleteAssignmentError,
    InputError,
    RingMismatchError,
    UnknownVariableError,
)

if TYPE_CHECKING:
    from discvar.core.ordering import BlockOrder

Monomial = tuple[int, ...]
Rational = Union[int, Fraction]

# Exponents are kept within a signed 32-bit range
MAX_EXPONENT = 2**31 - 1

PARAMETER = "U"
UNKNOWN = "X"
AUXILIARY = "T"
_TAGS = (PARAMETER, UNKNOWN, AUXILIARY)


@dataclass(frozen=True)
class RingContext:
    """Ordered indeterminates of Q[U, X] with their parameter/unknown tags."""

    variables: tuple[str, ...]
    block_tags: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(self.variables) != len(self.block_tags):
            raise InputError("every variable needs exactly one block tag")
        if len(set(self.variables)) != len(self.variables):
            raise InputError(f"duplicate variable names in {list(self.variables)}")
        for tag in self.block_tags:
            if tag not in _TAGS:
                raise InputError(f"unknown block tag {tag!r}")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.variables)})

    @classmethod
    def from_blocks(cls, parameters: Sequence[str], unknowns: Sequence[str]) -> "RingContext":
        """Parameters first, then unknowns, each block in declaration order."""
        return cls(
            variables=tuple(parameters) + tuple(unknowns),
            block_tags=(PARAMETER,) * len(parameters) + (UNKNOWN,) * len(unknowns),
        )

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def parameters(self) -> tuple[str, ...]:
        return tuple(v for v, t in zip(self.variables, self.block_tags) if t == PARAMETER)

    @property
    def unknowns(self) -> tuple[str, ...]:
        return tuple(v for v, t in zip(self.variables, self.block_tags) if t == UNKNOWN)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}; ring has {list(self.variables)}") from None

    def indices(self, names: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.index(n) for n in names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def extend(self, name: str, tag: str = AUXILIARY) -> "RingContext":
        """Ring with one extra variable appended after the existing ones."""
        if name in self._index:
            raise InputError(f"variable {name!r} already exists")
        return RingContext(self.variables + (name,), self.block_tags + (tag,))

    def fresh_name(self, stem: str = "t") -> str:
        if stem not in self._index:
            return stem
        i = 1
        while f"{stem}_{i}" in self._index:
            i += 1
        return f"{stem}_{i}"

    @property
    def print_order(self) -> tuple[int, ...]:
        """Variable indices sorted by name; used inside printed monomials."""
        return tuple(sorted(range(self.nvars), key=lambda i: self.variables[i]))


# ----- Monomials -----


def monomial_one(nvars: int) -> Monomial:
    return (0,) * nvars


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    if out and max(out) > MAX_EXPONENT:
        raise DegreeOverflowError(f"exponent exceeds {MAX_EXPONENT}")
    return out


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when a | b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b; caller guarantees b | a."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def format_monomial(ring: RingContext, m: Monomial) -> str:
    parts = []
    for i in ring.print_order:
        e = m[i]
        if e == 1:
            parts.append(ring.variables[i])
        elif e > 1:
            parts.append(f"{ring.variables[i]}^{e}")
    return "*".join(parts)


def format_coefficient(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ----- Polynomials -----


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[Monomial, Rational] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != ring.nvars:
                raise RingMismatchError(f"monomial {m} has {len(m)} exponents, ring has {ring.nvars} variables")
            if any(e < 0 for e in m):
                raise InputError(f"negative exponent in {m}")
            if any(e > MAX_EXPONENT for e in m):
                raise DegreeOverflowError(f"exponent exceeds {MAX_EXPONENT}")
            value = clean.get(m, Fraction(0)) + Fraction(c)
            if value:
                clean[m] = value
            else:
                clean.pop(m, None)
        self.ring = ring
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, ring: RingContext, terms: dict[Monomial, Fraction]) -> "Polynomial":
        # terms must already be canonical: correct lengths, no zero coefficients
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # ----- Constructors -----

    @classmethod
    def zero(cls, ring: RingContext) -> "Polynomial":
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, ring: RingContext, c: Rational) -> "Polynomial":
        c = Fraction(c)
        return cls._raw(ring, {monomial_one(ring.nvars): c} if c else {})

    @classmethod
    def one(cls, ring: RingContext) -> "Polynomial":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: RingContext, name: str) -> "Polynomial":
        exps = [0] * ring.nvars
        exps[ring.index(name)] = 1
        return cls._raw(ring, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, ring: RingContext, m: Monomial, c: Rational = 1) -> "Polynomial":
        return cls(ring, {m: c})

    # ----- Inspection -----

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    @property
    def total_degree(self) -> int:
        """Degree of the zero polynomial is reported as -1."""
        return max((sum(m) for m in self._terms), default=-1)

    def support(self) -> tuple[str, ...]:
        """Variables that occur in some term, in ring order."""
        used = [False] * self.ring.nvars
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.ring.variables, used) if u)

    def involves(self, names: Iterable[str]) -> bool:
        idx = self.ring.indices(names)
        return any(m[i] for m in self._terms for i in idx)

    def constant_coefficient(self) -> Fraction:
        return self._terms.get(monomial_one(self.ring.nvars), Fraction(0))

    # ----- Arithmetic -----

    def _coerce(self, other: object) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError("operands belong to different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, other)
        return None

    def __add__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in q._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in q._terms.items():
                m = monomial_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise InputError("polynomial powers need a non-negative integer exponent")
        result = Polynomial.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: Rational) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(self.ring, {m: v * c for m, v in self._terms.items()})

    def mul_term(self, m: Monomial, c: Rational) -> "Polynomial":
        """Multiply by the single term c * x^m."""
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(self.ring, {monomial_mul(k, m): v * c for k, v in self._terms.items()})

    # ----- Content -----

    def content(self) -> Fraction:
        """Positive rational c with self / c integral and primitive; 0 for the zero polynomial."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_part(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.content())

    # ----- Ring changes -----

    def change_ring(self, ring: RingContext) -> "Polynomial":
        """Re-index into another ring by variable name.

        Variables missing from the target ring must not occur in the polynomial.
        """
        if ring is self.ring or ring == self.ring:
            return self
        src = self.ring.variables
        targets = []
        for i, name in enumerate(src):
            targets.append(ring.index(name) if name in ring else None)
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            exps = [0] * ring.nvars
            for i, e in enumerate(m):
                if not e:
                    continue
                j = targets[i]
                if j is None:
                    raise RingMismatchError(f"variable {src[i]!r} is not part of the target ring")
                exps[j] = e
            out[tuple(exps)] = c
        return Polynomial._raw(ring, out)

    # ----- Calculus and evaluation -----

    def diff(self, name: str) -> "Polynomial":
        return partial_derivative(self, name)

    def __call__(self, point: Mapping[str, Rational], modulus: int | None = None) -> Fraction | int:
        return evaluate(self, point, modulus)

    # ----- Equality -----

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self.ring, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from discvar.core.ordering import degrevlex

        return f"Polynomial({canonical_string(self, degrevlex(self.ring))!r})"


# ----- Module-level operations -----

ArithOp = Literal["add", "sub", "mul", "neg", "scale"]


def arith(op: ArithOp, a: Polynomial, b: Polynomial | Rational | None = None) -> Polynomial:
    """Dispatch one of add/sub/mul/neg/scale; operands must share one ring."""
    if op == "neg":
        return -a
    if op == "scale":
        if not isinstance(b, (int, Fraction)):
            raise InputError("scale needs a rational factor")
        return a.scale(b)
    if isinstance(b, Polynomial) and b.ring != a.ring:
        raise RingMismatchError("operands belong to different rings")
    if b is None:
        raise InputError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InputError(f"unknown arithmetic operation {op!r}")


def partial_derivative(p: Polynomial, name: str) -> Polynomial:
    i = p.ring.index(name)
    out: dict[Monomial, Fraction] = {}
    for m, c in p.items():
        e = m[i]
        if e:
            dm = m[:i] + (e - 1,) + m[i + 1 :]
            out[dm] = c * e
    return Polynomial._raw(p.ring, out)


def _point_vector(ring: RingContext, point: Mapping[str, Rational] | Sequence[Rational]) -> list:
    if isinstance(point, Mapping):
        for name in point:
            if name not in ring:
                raise UnknownVariableError(f"unknown variable {name!r} in assignment")
        missing = [v for v in ring.variables if v not in point]
        if missing:
            raise IncompleteAssignmentError(f"no value assigned to {missing}")
        return [point[v] for v in ring.variables]
    values = list(point)
    if len(values) != ring.nvars:
        raise IncompleteAssignmentError(f"expected {ring.nvars} values, got {len(values)}")
    return values


def reduce_rational(c: Rational, modulus: int) -> int:
    c = Fraction(c)
    if c.denominator % modulus == 0:
        raise BadPrimeError(modulus)
    return c.numerator * pow(c.denominator, -1, modulus) % modulus


def evaluate(
    p: Polynomial,
    point: Mapping[str, Rational] | Sequence[Rational],
    modulus: int | None = None,
) -> Fraction | int:
    """Value of p at a full assignment, over Q or over Z/modulus."""
    values = _point_vector(p.ring, point)
    if modulus is None:
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for m, c in p.items():
            term = c
            for v, e in zip(vals, m):
                if e:
                    term *= v**e
            total += term
        return total
    vals_p = [reduce_rational(v, modulus) for v in values]
    acc = 0
    for m, c in p.items():
        term = reduce_rational(c, modulus)
        for v, e in zip(vals_p, m):
            if e:
                term = term * pow(v, e, modulus) % modulus
        acc = (acc + term) % modulus
    return acc


def canonical_string(p: Polynomial, order: "BlockOrder") -> str:
    """Deterministic text form, terms in strictly descending order."""
    if order.ring != p.ring:
        raise RingMismatchError("order and polynomial belong to different rings")
    if not p:
        return "0"
    pieces: list[str] = []
    for m in sorted(p.terms, key=order.sort_key, reverse=True):
        c = p.terms[m]
        mono = format_monomial(p.ring, m)
        magnitude = abs(c)
        if not mono:
            body = format_coefficient(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{format_coefficient(magnitude)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces)
