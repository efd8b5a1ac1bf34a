"""Regularized multiple zeta polynomials with exact symbolic coefficients.

Coefficients are :class:`MzvCombination` objects: rational combinations of
*monomials* in MZV symbols.  A monomial is a sorted tuple of nonempty
tail-admissible indices, so ``()`` is the constant 1, ``((3,),)`` is
``zeta(3)`` and ``((2,), (1, 2))`` is ``zeta(1,2) zeta(2)``.  No relation
between MZVs is ever applied symbolically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidIndexError
from .indices import (
    Index,
    IndexSum,
    as_index,
    format_index,
    is_tail_admissible,
    parse_index,
    stuffle,
)
from .linear import LinearCombination, fraction_text, to_fraction
from .words import Word, WordPoly, index_to_word, shuffle, trailing_count, word_to_index

Monomial = tuple  # tuple[Index, ...], sorted


def _monomial(factors: Iterable[Index]) -> Monomial:
    out = []
    for k in factors:
        k = as_index(k)
        if not is_tail_admissible(k):
            raise InvalidIndexError(f"MZV symbol must be tail-admissible: {k!r}")
        if k:
            out.append(k)
    return tuple(sorted(out, key=lambda k: (sum(k), k)))


def format_monomial(m: Monomial, zeta: str = "ζ", sep: str = "·") -> str:
    return sep.join(f"{zeta}({format_index(k)})" for k in m)


class MzvCombination(LinearCombination):
    """Rational linear combination of products of MZV symbols."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key):
        return _monomial(key)

    @staticmethod
    def _sort_key(m):
        return (-sum(map(sum, m)), len(m), m)

    @classmethod
    def one(cls) -> "MzvCombination":
        return cls.monomial(())

    @classmethod
    def constant(cls, q) -> "MzvCombination":
        return cls.monomial((), q)

    @classmethod
    def symbol(cls, k: Sequence[int], coeff=1) -> "MzvCombination":
        """``coeff * zeta(k)``; ``zeta(()) == 1``."""
        return cls.monomial((as_index(k),), coeff)

    def __mul__(self, other):
        if isinstance(other, MzvCombination):
            acc: dict = {}
            for a, ca in self.items():
                for b, cb in other.items():
                    m = _monomial(a + b)
                    acc[m] = acc.get(m, 0) + ca * cb
            return MzvCombination(acc)
        return super().__mul__(other)

    def rank(self) -> int:
        """Largest number of symbols multiplied together in one term."""
        return max((len(m) for m in self), default=0)

    def symbols(self) -> set[Index]:
        return {k for m in self for k in m}

    def format(self, zeta: str = "ζ", sep: str = "·") -> str:
        if not self:
            return "0"
        pieces = []
        for m, c in self.items():
            mag = abs(c)
            body = format_monomial(m, zeta, sep)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}{sep}{body}"
            pieces.append(("-" if c < 0 else "+", text))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __str__(self) -> str:
        return self.format()

    # JSON: {"": "1/1", "3": "2/1", "2*1,2": "-1/1"}
    def to_dict(self) -> dict[str, str]:
        return {"*".join(format_index(k) for k in m): fraction_text(c) for m, c in self.items()}

    @classmethod
    def from_dict(cls, data: dict[str, str]) -> "MzvCombination":
        terms = []
        for key, val in data.items():
            factors = [parse_index(part) for part in key.split("*")] if key else []
            terms.append((factors, Fraction(val)))
        return cls(terms)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "MzvCombination":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class TPoly:
    """Polynomial in ``T`` with :class:`MzvCombination` coefficients.

    ``coeffs[s]`` multiplies ``T**s``; trailing zeros are trimmed.
    """

    coeffs: tuple[MzvCombination, ...] = ()

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: MzvCombination) -> "TPoly":
        return cls((c,))

    @classmethod
    def one(cls) -> "TPoly":
        return cls((MzvCombination.one(),))

    @classmethod
    def T_power(cls, n: int, c: MzvCombination | None = None) -> "TPoly":
        c = MzvCombination.one() if c is None else c
        return cls((MzvCombination(),) * n + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, s: int) -> MzvCombination:
        return self.coeffs[s] if 0 <= s < len(self.coeffs) else MzvCombination()

    def at_zero(self) -> MzvCombination:
        return self.coefficient(0)

    def __iter__(self) -> Iterator[tuple[int, MzvCombination]]:
        return ((s, c) for s, c in enumerate(self.coeffs) if c)

    def __add__(self, other: "TPoly") -> "TPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return TPoly(tuple(self.coefficient(s) + other.coefficient(s) for s in range(n)))

    def __neg__(self) -> "TPoly":
        return TPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def scale(self, q) -> "TPoly":
        q = to_fraction(q)
        return TPoly(tuple(c.scale(q) for c in self.coeffs))

    def __mul__(self, other) -> "TPoly":
        if isinstance(other, TPoly):
            if not self.coeffs or not other.coeffs:
                return TPoly()
            out = [MzvCombination()] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return TPoly(tuple(out))
        if isinstance(other, MzvCombination):
            return TPoly(tuple(c * other for c in self.coeffs))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for s, c in self:
            t = "" if s == 0 else ("T" if s == 1 else f"T^{s}")
            parts.append(f"({c.format()})" + (f"·{t}" if t else ""))
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> str:
        return json.dumps([{"power": s, "combination": c.to_dict()} for s, c in self])

    @classmethod
    def from_json(cls, text: str) -> "TPoly":
        data = json.loads(text)
        n = max((d["power"] for d in data), default=-1) + 1
        cs = [MzvCombination()] * n
        for d in data:
            cs[d["power"]] = cs[d["power"]] + MzvCombination.from_dict(d["combination"])
        return cls(tuple(cs))


# -- shuffle regularization ------------------------------------------------

def _reg_combination(poly, reg) -> TPoly:
    out = TPoly()
    for key, c in poly.items():
        out = out + reg(key).scale(c)
    return out


@lru_cache(maxsize=None)
def shuffle_regularize_word(w: Word) -> TPoly:
    """Shuffle-regularized value of an arbitrary word, with ``y -> T``, ``x -> 0``.

    Leading ``x`` letters are removed using ``reg(x ш u) = 0``; trailing ``y``
    letters using ``y^(шn) ш u = n! u y^n + (fewer trailing y)``.
    """
    if not w:
        return TPoly.one()
    if w[0] == "x":
        m = len(w) - len(w.lstrip("x"))
        rest = shuffle("x", w[1:]) - WordPoly.monomial(w).scale(m)
        return _reg_combination(rest, shuffle_regularize_word).scale(Fraction(-1, m))
    n = trailing_count(w, "y")
    if n == 0:
        return TPoly.const(MzvCombination.symbol(word_to_index(w)))
    u = w[:-n]
    # shuffle(y^n, u) contains u y^n exactly once; everything else has < n trailing y
    rest = shuffle("y" * n, u) - WordPoly.monomial(w)
    head = TPoly.T_power(n, MzvCombination.symbol(word_to_index(u))).scale(
        Fraction(1, math.factorial(n)))
    return head - _reg_combination(rest, shuffle_regularize_word)


def shuffle_regularize(l: Sequence[int]) -> TPoly:
    """``zeta_ш(l; T)``.

    >>> print(shuffle_regularize((2, 1)).format())
    (-2·ζ(1,2)) + (ζ(2))·T
    """
    return shuffle_regularize_word(index_to_word(as_index(l)))


# -- harmonic regularization -----------------------------------------------

@lru_cache(maxsize=None)
def _ones_power(n: int) -> IndexSum:
    out = IndexSum.monomial(())
    for _ in range(n):
        out = stuffle(out, (1,))
    return out


@lru_cache(maxsize=None)
def harmonic_regularize(l: Index) -> TPoly:
    """``zeta_*(l; T)`` from ``(1)^(*n) * k = n! (k, 1^n) + (fewer trailing 1)``."""
    l = as_index(l)
    n = len(l) - len(tuple(_strip_ones(l)))
    if n == 0:
        return TPoly.const(MzvCombination.symbol(l))
    k = l[:-n]
    rest = stuffle(_ones_power(n), k) - IndexSum.monomial(l, math.factorial(n))
    out = TPoly.T_power(n, MzvCombination.symbol(k)) - _reg_combination(rest, harmonic_regularize)
    return out.scale(Fraction(1, math.factorial(n)))


def _strip_ones(l: Index) -> Index:
    end = len(l)
    while end and l[end - 1] == 1:
        end -= 1
    return l[:end]


def regularize(l: Sequence[int], flavor: str) -> TPoly:
    if flavor == "shuffle":
        return shuffle_regularize(l)
    if flavor == "harmonic":
        return harmonic_regularize(as_index(l))
    raise ValueError(f"unknown regularization flavor {flavor!r}")


# -- shifted values ----------------------------------------------------------

def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for e in range(total + 1):
        for rest in _weak_compositions(total - e, parts - 1):
            yield (e,) + rest


@lru_cache(maxsize=None)
def zeta_shifted(a: int, k: Index) -> MzvCombination:
    """``zeta_a(k) = (-1)^a sum_{|e|=a} zeta(k+e) prod binom(k_j-1+e_j, e_j)``."""
    k = as_index(k)
    if a < 0:
        raise ValueError("shift must be nonnegative")
    if not is_tail_admissible(k):
        raise InvalidIndexError(f"zeta_shifted needs a tail-admissible index: {k!r}")
    sign = -1 if a % 2 else 1
    terms = []
    for e in _weak_compositions(a, len(k)):
        coeff = sign * math.prod(math.comb(kj - 1 + ej, ej) for kj, ej in zip(k, e))
        terms.append(((tuple(kj + ej for kj, ej in zip(k, e)),), coeff))
    return MzvCombination(terms)
