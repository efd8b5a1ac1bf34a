"""The Hoffman algebra Q<x, y>.

Words are plain strings over ``"xy"``; the empty string is the unit.  An
index ``(k_1, ..., k_d)`` corresponds to ``y x^(k_1-1) ... y x^(k_d-1)``,
read from the lower integration endpoint upward.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import NotAnIndexWordError
from .indices import Index, as_index
from .linear import LinearCombination, bilinear_accumulate, fraction_text

Word = str

_SWAP = str.maketrans("xy", "yx")


def check_word(w: str) -> Word:
    if not isinstance(w, str) or w.strip("xy"):
        raise ValueError(f"not a word over {{x, y}}: {w!r}")
    return w


class WordPoly(LinearCombination):
    """Rational linear combination of words; ``*`` is the shuffle product."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key):
        return check_word(key)

    @staticmethod
    def _sort_key(key):
        return (len(key), key)

    def __mul__(self, other):
        if isinstance(other, WordPoly):
            return shuffle(self, other)
        return super().__mul__(other)

    def to_json(self) -> str:
        return json.dumps({w: fraction_text(c) for w, c in self.items()})

    @classmethod
    def from_json(cls, text: str) -> "WordPoly":
        return cls({w: Fraction(c) for w, c in json.loads(text).items()})


def _as_poly(u) -> WordPoly:
    return u if isinstance(u, WordPoly) else WordPoly.monomial(check_word(u))


@lru_cache(maxsize=None)
def _shuffle_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[Word, int] = {}
    for pre, last in ((_shuffle_words(u[:-1], v), u[-1]),
                      (_shuffle_words(u, v[:-1]), v[-1])):
        for w, c in pre:
            acc[w + last] = acc.get(w + last, 0) + c
    return tuple(acc.items())


def shuffle(u, v) -> WordPoly:
    """Shuffle product of words or word polynomials.

    >>> shuffle("y", "yx") == WordPoly({"yyx": 2, "yxy": 1})
    True
    """
    up, vp = _as_poly(u), _as_poly(v)
    return WordPoly(bilinear_accumulate(up, vp, _shuffle_words))


def shuffle_power(u, n: int) -> WordPoly:
    out = WordPoly.monomial("")
    for _ in range(n):
        out = shuffle(out, u)
    return out


def index_to_word(k: Sequence[int]) -> Word:
    return "".join("y" + "x" * (p - 1) for p in as_index(k))


def word_to_index(w: Word) -> Index:
    w = check_word(w)
    if not w:
        return ()
    if w[0] != "y":
        raise NotAnIndexWordError(f"word does not start with y: {w!r}")
    return tuple(len(block) + 1 for block in w[1:].split("y"))


def reverse(w):
    if isinstance(w, WordPoly):
        return w.map_keys(lambda a: a[::-1])
    return check_word(w)[::-1]


def swap_xy(w):
    if isinstance(w, WordPoly):
        return w.map_keys(lambda a: a.translate(_SWAP))
    return check_word(w).translate(_SWAP)


def trailing_count(w: Word, letter: str) -> int:
    return len(w) - len(w.rstrip(letter))
