"""Finite formal linear combinations with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Hashable, Iterable, Iterator, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)
C = TypeVar("C", bound="LinearCombination")


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def bilinear_accumulate(left: Mapping, right: Mapping, product: Callable) -> dict:
    """Sum ``c_a c_b product(a, b)`` where ``product`` yields ``(key, int)`` pairs.

    Terms are grouped by the coefficient ``c_a c_b`` so the inner loop stays in
    integer arithmetic; integral rationals are demoted to ``int``.
    """
    buckets: dict = {}
    for a, ca in left.items():
        for b, cb in right.items():
            coeff = ca * cb
            bucket = buckets.setdefault(int(coeff) if coeff.denominator == 1 else coeff, {})
            for key, n in product(a, b):
                bucket[key] = bucket.get(key, 0) + n
    acc: dict = {}
    for coeff, bucket in buckets.items():
        for key, n in bucket.items():
            acc[key] = acc.get(key, 0) + coeff * n
    return acc


def fraction_text(q: Fraction) -> str:
    """Rational as ``"p/q"``, always with an explicit denominator."""
    return f"{q.numerator}/{q.denominator}"


class LinearCombination(Mapping):
    """Immutable map ``key -> Fraction`` with no stored zeros.

    Subclasses fix the key type and may add a product. Addition, negation
    and scaling by rationals are exact.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable[tuple] | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                key = self._check_key(key)
                acc[key] = acc.get(key, 0) + to_fraction(coeff)
        self._terms = {k: c for k, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _check_key(cls, key):
        return key

    @classmethod
    def monomial(cls: type[C], key, coeff=1) -> C:
        return cls([(key, coeff)])

    @classmethod
    def zero(cls: type[C]) -> C:
        return cls()

    @classmethod
    def sum(cls: type[C], parts: Iterable[C]) -> C:
        acc: dict = {}
        for part in parts:
            for k, c in part._terms.items():
                acc[k] = acc.get(k, 0) + c
        return cls(acc)

    # Mapping protocol
    def __getitem__(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms, key=self._sort_key))

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, key) -> bool:
        return key in self._terms

    @staticmethod
    def _sort_key(key):
        return key

    def items(self):
        return [(k, self._terms[k]) for k in self]

    def __eq__(self, other) -> bool:
        if isinstance(other, LinearCombination):
            return type(self) is type(other) and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # vector space structure
    def __add__(self: C, other: C) -> C:
        if isinstance(other, int) and other == 0:
            return self
        if type(other) is not type(self):
            return NotImplemented
        return type(self).sum([self, other])

    __radd__ = __add__

    def __neg__(self: C) -> C:
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self: C, other: C) -> C:
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __mul__(self: C, q) -> C:
        if isinstance(q, (int, Fraction)):
            return self.scale(q)
        return NotImplemented

    def __rmul__(self: C, q) -> C:
        if isinstance(q, (int, Fraction)):
            return self.scale(q)
        return NotImplemented

    def scale(self: C, q) -> C:
        q = to_fraction(q)
        return type(self)({k: q * c for k, c in self._terms.items()})

    def map_keys(self: C, fn: Callable, target: type | None = None):
        """Apply ``fn`` to every key, summing collisions."""
        cls = target or type(self)
        return cls([(fn(k), c) for k, c in self._terms.items()])

    def __repr__(self) -> str:
        if not self._terms:
            return f"{type(self).__name__}(0)"
        body = ", ".join(f"{k!r}: {c}" for k, c in self.items())
        return f"{type(self).__name__}({{{body}}})"
