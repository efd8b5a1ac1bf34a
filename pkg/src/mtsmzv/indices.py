"""Indices (compositions) and their exact combinatorics.

An index is a plain tuple of positive integers ``(k_1, ..., k_r)``, possibly
empty.  Multiple zeta values use the ordering ``0 < m_1 < ... < m_r`` so the
convergence condition sits on the *last* part.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidIndexError
from .linear import LinearCombination, bilinear_accumulate, fraction_text

Index = tuple  # tuple[int, ...]


def as_index(parts: Iterable[int]) -> Index:
    """Validate and freeze ``parts`` into an index."""
    k = tuple(parts)
    for p in k:
        if not isinstance(p, int) or isinstance(p, bool) or p < 1:
            raise InvalidIndexError(f"index parts must be positive integers: {k!r}")
    return k


def weight(k: Sequence[int]) -> int:
    return sum(k)


def depth(k: Sequence[int]) -> int:
    return len(k)


def is_tail_admissible(k: Sequence[int]) -> bool:
    return len(k) == 0 or k[-1] >= 2


def is_mtgf_admissible(k: Sequence[int]) -> bool:
    return len(k) >= 1 and k[0] >= 2 and k[-1] >= 2


# -- text form -------------------------------------------------------------

def format_index(k: Sequence[int]) -> str:
    return ",".join(str(p) for p in k)


def parse_index(text: str) -> Index:
    """Parse ``"2,1,3"``; the empty string is the empty index.

    Only surrounding whitespace is trimmed; anything other than a strict
    comma-separated list of positive decimal integers is rejected.
    """
    text = text.strip()
    if text == "":
        return ()
    parts = text.split(",")
    for p in parts:
        if not p.isdigit() or not p.isascii():
            raise InvalidIndexError(f"cannot parse index {text!r}")
    return as_index(int(p) for p in parts)


# -- enumeration -----------------------------------------------------------

def compositions(w: int) -> Iterator[Index]:
    """All compositions of ``w`` (just ``()`` for ``w == 0``), lexicographic."""
    if w == 0:
        yield ()
        return
    for first in range(1, w + 1):
        for rest in compositions(w - first):
            yield (first,) + rest


def indices_up_to(max_weight: int, min_weight: int = 0) -> list[Index]:
    return [k for w in range(min_weight, max_weight + 1) for k in compositions(w)]


def tail_admissible_indices(max_weight: int, min_weight: int = 0) -> list[Index]:
    return [k for k in indices_up_to(max_weight, min_weight) if is_tail_admissible(k)]


def mtgf_admissible_indices(max_weight: int) -> list[Index]:
    return [k for k in indices_up_to(max_weight, 2) if is_mtgf_admissible(k)]


# -- unary operators -------------------------------------------------------

def _cuts(k: Sequence[int]) -> frozenset[int]:
    return frozenset(itertools.accumulate(k[:-1]))


def _from_cuts(w: int, cuts: Iterable[int]) -> Index:
    bounds = [0, *sorted(cuts), w]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def hoffman_dual(k: Sequence[int]) -> Index:
    """Hoffman dual: swap the roles of ``,`` and ``+`` in ``1 _ 1 _ ... _ 1``.

    >>> hoffman_dual((2, 1, 1, 3, 4))
    (1, 4, 1, 2, 1, 1, 1)
    """
    k = as_index(k)
    w = weight(k)
    if w == 0:
        return ()
    return _from_cuts(w, set(range(1, w)) - _cuts(k))


def down_first(k: Sequence[int]) -> Index:
    k = as_index(k)
    if not k or k[0] < 2:
        raise InvalidIndexError(f"cannot decrement first part of {k!r}")
    return (k[0] - 1,) + k[1:]


def down_last(k: Sequence[int]) -> Index:
    k = as_index(k)
    if not k or k[-1] < 2:
        raise InvalidIndexError(f"cannot decrement last part of {k!r}")
    return k[:-1] + (k[-1] - 1,)


def down_both(k: Sequence[int]) -> Index:
    """Decrement first and last part; a depth-1 part is decremented twice.

    A resulting lone part equal to zero gives the empty index, so
    ``down_both((2,)) == ()``.
    """
    k = as_index(k)
    if len(k) == 0:
        raise InvalidIndexError("down_both of the empty index")
    if len(k) == 1:
        if k[0] < 2:
            raise InvalidIndexError(f"down_both needs a part >= 2: {k!r}")
        return () if k[0] == 2 else (k[0] - 2,)
    if k[0] < 2 or k[-1] < 2:
        raise InvalidIndexError(f"down_both needs first and last part >= 2: {k!r}")
    return (k[0] - 1,) + k[1:-1] + (k[-1] - 1,)


def up_last(k: Sequence[int]) -> Index:
    k = as_index(k)
    if not k:
        raise InvalidIndexError("up_last of the empty index")
    return k[:-1] + (k[-1] + 1,)


def dagger_dual(k: Sequence[int]) -> Index:
    """Classical duality ``zeta(k) = zeta(k^dagger)``.

    Computed on words: reverse the letters of ``y x^(k1-1) ... y x^(kr-1)``
    and exchange ``x`` and ``y``.
    """
    from .words import index_to_word, reverse, swap_xy, word_to_index

    k = as_index(k)
    if not k or not is_tail_admissible(k):
        raise InvalidIndexError(f"dagger dual needs a nonempty index with last part >= 2: {k!r}")
    return word_to_index(swap_xy(reverse(index_to_word(k))))


def contractions(k: Sequence[int]) -> Iterator[Index]:
    """The ``2^(r-1)`` indices ``k_1 [] k_2 [] ... [] k_r`` with ``[]`` in {',', '+'}."""
    k = as_index(k)
    if not k:
        yield ()
        return
    for plus in itertools.product((False, True), repeat=len(k) - 1):
        out = [k[0]]
        for part, merge in zip(k[1:], plus):
            if merge:
                out[-1] += part
            else:
                out.append(part)
        yield tuple(out)


# -- formal sums -----------------------------------------------------------

class IndexSum(LinearCombination):
    """Rational linear combination of indices."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key):
        return as_index(key)

    @staticmethod
    def _sort_key(key):
        return (sum(key), key)

    def __mul__(self, other):
        if isinstance(other, IndexSum):
            return stuffle(self, other)
        return super().__mul__(other)

    def weights(self) -> set[int]:
        return {weight(k) for k in self}

    def to_json(self) -> str:
        return json.dumps({format_index(k): fraction_text(c) for k, c in self.items()})

    @classmethod
    def from_json(cls, text: str) -> "IndexSum":
        data = json.loads(text)
        return cls({parse_index(k): Fraction(v) for k, v in data.items()})


@lru_cache(maxsize=None)
def _stuffle_indices(k: Index, l: Index) -> tuple[tuple[Index, int], ...]:
    if not k:
        return ((l, 1),)
    if not l:
        return ((k, 1),)
    a, b = k[-1], l[-1]
    acc: dict[Index, int] = {}
    for pre, tail in ((_stuffle_indices(k, l[:-1]), (b,)),
                      (_stuffle_indices(k[:-1], l), (a,)),
                      (_stuffle_indices(k[:-1], l[:-1]), (a + b,))):
        for m, c in pre:
            key = m + tail
            acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def stuffle(k, l) -> IndexSum:
    """Harmonic (quasi-shuffle) product, extended bilinearly to ``IndexSum``.

    >>> stuffle((2,), (3,)) == IndexSum({(2, 3): 1, (3, 2): 1, (5,): 1})
    True
    """
    ks = k if isinstance(k, IndexSum) else IndexSum.monomial(as_index(k))
    ls = l if isinstance(l, IndexSum) else IndexSum.monomial(as_index(l))
    return IndexSum(bilinear_accumulate(ks, ls, _stuffle_indices))
