"""Symmetric multiple zeta polynomials, refined symmetric values and ``rho_z``."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .errors import InvalidIndexError
from .indices import as_index, contractions, down_both, hoffman_dual, is_mtgf_admissible, weight
from .numerics import DEFAULT, PI_I, TWO_PI_I, PrecisionConfig, eval_combination, eval_tpoly
from .regularization import MzvCombination, TPoly, regularize

FLAVORS = ("shuffle", "harmonic")
ROUTES = ("harmonic_at_pi_i", "integral_of_shuffle")


class MonotangentCombination(Mapping):
    """Formal sum ``sum_s c_s Psi_s`` with ``s >= 2`` and MZV coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, MzvCombination] | None = None):
        acc: dict[int, MzvCombination] = {}
        for s, c in (terms or {}).items():
            if not isinstance(s, int) or s < 2:
                raise ValueError(f"monotangent weight must be an integer >= 2, got {s!r}")
            acc[s] = acc.get(s, MzvCombination()) + c
        self._terms = {s: c for s, c in acc.items() if c}

    @classmethod
    def psi(cls, s: int, coeff: MzvCombination | None = None) -> "MonotangentCombination":
        return cls({s: MzvCombination.one() if coeff is None else coeff})

    def __getitem__(self, s: int) -> MzvCombination:
        return self._terms.get(s, MzvCombination())

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MonotangentCombination):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "MonotangentCombination") -> "MonotangentCombination":
        acc = dict(self._terms)
        for s, c in other._terms.items():
            acc[s] = acc.get(s, MzvCombination()) + c
        return MonotangentCombination(acc)

    def __neg__(self) -> "MonotangentCombination":
        return self.scale(-1)

    def __sub__(self, other: "MonotangentCombination") -> "MonotangentCombination":
        return self + (-other)

    def scale(self, q) -> "MonotangentCombination":
        return MonotangentCombination({s: c.scale(q) for s, c in self._terms.items()})

    def flatten(self, cfg: PrecisionConfig = DEFAULT) -> dict[int, float]:
        """Numeric coefficient of each ``Psi_s``."""
        return {s: eval_combination(c, cfg) for s, c in self.items()}

    def format(self) -> str:
        pieces = []
        for s, c in self.items():
            if len(c) == 1:
                text = c.format()
                sign = "-" if text.startswith("-") else "+"
                text = text.lstrip("-")
                text = f"Ψ_{s}" if text == "1" else f"{text}·Ψ_{s}"
            else:
                sign, text = "+", f"({c.format()})·Ψ_{s}"
            pieces.append((sign, text))
        if not pieces:
            return "0"
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"MonotangentCombination({self.format()})"

    def to_json(self) -> str:
        return json.dumps([{"s": s, "combination": c.to_dict()} for s, c in self.items()])

    @classmethod
    def from_json(cls, text: str) -> "MonotangentCombination":
        acc: dict[int, MzvCombination] = {}
        for d in json.loads(text):
            acc[d["s"]] = acc.get(d["s"], MzvCombination()) + MzvCombination.from_dict(d["combination"])
        return cls(acc)


def symmetric_T_polynomial(l: Sequence[int], flavor: str = "shuffle") -> TPoly:
    """``zeta^S_flavor(l; T)``.

    Sum over the split points ``i`` of the signed product of the prefix
    constant ``zeta(l_1..l_i; 0)`` and the reversed-suffix polynomial
    ``zeta(l_r..l_{i+1}; T)``.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    l = as_index(l)
    out = TPoly()
    for i in range(len(l) + 1):
        prefix = regularize(l[:i], flavor).at_zero()
        suffix = regularize(l[i:][::-1], flavor)
        sign = -1 if sum(l[i:]) % 2 else 1
        out = out + (suffix * prefix).scale(sign)
    return out


def integrate_average(p: TPoly, cfg: PrecisionConfig = DEFAULT) -> complex:
    """``(1/2 pi i) int_0^{2 pi i} p(T) dT`` by termwise integration."""
    return sum(eval_combination(c, cfg) * TWO_PI_I**s / (s + 1) for s, c in p)


def zeta_rs(l: Sequence[int], route: str = "harmonic_at_pi_i",
            cfg: PrecisionConfig = DEFAULT) -> complex:
    """Refined symmetric multiple zeta value.

    ``harmonic_at_pi_i`` evaluates ``zeta^S_*(l; pi i)``;
    ``integral_of_shuffle`` averages ``zeta^S_ш(l; T)`` over ``[0, 2 pi i]``.
    """
    if route == "harmonic_at_pi_i":
        return eval_tpoly(symmetric_T_polynomial(l, "harmonic"), PI_I, cfg)
    if route == "integral_of_shuffle":
        return integrate_average(symmetric_T_polynomial(l, "shuffle"), cfg)
    raise ValueError(f"unknown route {route!r}")


def zeta_rs_star(l: Sequence[int], cfg: PrecisionConfig = DEFAULT,
                 route: str = "harmonic_at_pi_i") -> complex:
    l = as_index(l)
    if not l:
        raise InvalidIndexError("zeta_rs_star needs a nonempty index")
    return sum(zeta_rs(c, route, cfg) for c in contractions(l))


def rho_apply(p: TPoly) -> MonotangentCombination:
    """``T^s -> s! Psi_{s+2}``."""
    return MonotangentCombination({s + 2: c.scale(math.factorial(s)) for s, c in p})


def main_theorem_rhs(k: Sequence[int]) -> MonotangentCombination:
    """``(-1)^wt(k) rho_z(zeta^S_ш((down_both k)^dual; T))``."""
    k = as_index(k)
    if not is_mtgf_admissible(k):
        raise InvalidIndexError(f"multitangent index needs first and last part >= 2: {k!r}")
    l = hoffman_dual(down_both(k))
    sign = Fraction(-1 if weight(k) % 2 else 1)
    return rho_apply(symmetric_T_polynomial(l, "shuffle")).scale(sign)
