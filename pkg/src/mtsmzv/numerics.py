"""Double-precision evaluation of multiple zeta values and related objects.

The fast path splits the iterated integral of an admissible word at 1/2
(Hölder convolution with p = 2)::

    I(0; a_1...a_n; 1) = sum_j I(0; a_1...a_j; 1/2) * I(0; swap(rev(a_{j+1}...a_n)); 1/2)

and each factor is a multiple polylogarithm at 1/2, a geometrically
convergent nested series.  :func:`eval_mzv_direct` is a slow, independent
oracle that truncates the defining series and reports a tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DivergentSeriesError
from .indices import Index, as_index, contractions, is_tail_admissible
from .regularization import MzvCombination, TPoly
from .words import index_to_word, reverse, swap_xy, word_to_index


@dataclass(frozen=True)
class PrecisionConfig:
    """Numerical knobs shared by every evaluator.

    ``target_abs_error`` drives the fast MZV series; ``series_cutoff`` caps its
    length; ``oracle_cutoff`` is the truncation ``N`` of the slow direct
    series (MZV and multitangent oracles).
    """

    target_abs_error: float = 1e-10
    series_cutoff: int = 2000
    oracle_cutoff: int = 100_000

    def __post_init__(self):
        if not self.target_abs_error >= 1e-13:
            raise ValueError("target_abs_error below 1e-13 is not reachable in double precision")
        if self.series_cutoff < 1 or self.oracle_cutoff < 1:
            raise ValueError("cutoffs must be positive")


DEFAULT = PrecisionConfig()


def _require_admissible(k: Sequence[int]) -> Index:
    k = as_index(k)
    if not is_tail_admissible(k):
        raise DivergentSeriesError(f"zeta{k} diverges: last part must be >= 2")
    return k


def polylog(k: Index, t: float, cfg: PrecisionConfig = DEFAULT) -> float:
    """``Li_k(t) = sum_{0<m_1<...<m_d} t^(m_d) / prod m_i^k_i`` for ``0 <= t < 1``."""
    if not k:
        return 1.0
    if not 0.0 <= t < 1.0:
        raise ValueError("polylog argument must lie in [0, 1)")
    d = len(k)
    # tail after m is at most t^m / (1 - t) * (1 + log m)^(d-1)
    tol = cfg.target_abs_error * 1e-4
    n = 8
    while n < cfg.series_cutoff and t**n / (1 - t) * (1 + math.log(n)) ** (d - 1) > tol:
        n += 8
    m = np.arange(1, n + 1, dtype=float)
    acc = np.ones(n)
    for p in k:
        terms = acc / m**p
        acc = np.concatenate(([0.0], np.cumsum(terms)[:-1]))
    # ``terms`` now holds the summand for the outermost m_d
    return math.fsum(terms * t**m)


def eval_mzv_split(k: Sequence[int], split: float, cfg: PrecisionConfig = DEFAULT) -> float:
    """Hölder convolution of the word of ``k`` at ``0 < split < 1``."""
    k = _require_admissible(tuple(k))
    if not k:
        return 1.0
    w = index_to_word(k)
    total = []
    for j in range(len(w) + 1):
        left = word_to_index(w[:j])
        right = word_to_index(swap_xy(reverse(w[j:])))
        total.append(polylog(left, split, cfg) * polylog(right, 1.0 - split, cfg))
    return math.fsum(total)


def eval_mzv(k: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> float:
    """``zeta(k_1, ..., k_r)`` with ``0 < m_1 < ... < m_r`` and ``k_r >= 2``.

    >>> round(eval_mzv((1, 2)), 12)
    1.20205690316
    """
    return _eval_mzv_cached(_require_admissible(k), cfg)


# lru_cache is safe under concurrent access; racing threads may both compute
@lru_cache(maxsize=None)
def _eval_mzv_cached(k: Index, cfg: PrecisionConfig) -> float:
    return eval_mzv_split(k, 0.5, cfg)


def _gamma_upper_int(p: int, x: float) -> float:
    """Upper incomplete gamma ``Gamma(p+1, x)`` for integer ``p >= 0``."""
    return math.factorial(p) * math.exp(-x) * sum(x**j / math.factorial(j) for j in range(p + 1))


def mzv_tail_bound(k: Index, cutoff: int) -> float:
    """Bound on ``sum_{m_r > N}`` of the defining series.

    Inner sums are bounded by dropping the ordering: parts equal to 1
    contribute ``1 + log m``, larger parts ``k/(k-1) >= zeta(k)``.
    """
    k = _require_admissible(k)
    if not k:
        return 0.0
    inner = k[:-1]
    ones = sum(1 for p in inner if p == 1)
    const = math.prod(Fraction(p, p - 1) for p in inner if p > 1)
    a = k[-1] - 1
    log_n = math.log(cutoff)
    integral = math.exp(a) * _gamma_upper_int(ones, a * (1 + log_n)) / a ** (ones + 1)
    return float(const) * integral


def eval_mzv_direct(k: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> tuple[float, float]:
    """Truncated defining series; returns ``(value, tail_bound)``.

    Right-to-left cumulative sums make this ``O(depth * N)``.  Only meant as
    an oracle for :func:`eval_mzv`.
    """
    k = _require_admissible(tuple(k))
    if not k:
        return 1.0, 0.0
    n = cfg.oracle_cutoff
    m = np.arange(1, n + 1, dtype=float)
    acc = np.ones(n)
    for p in k:
        terms = acc / m**p
        acc = np.concatenate(([0.0], np.cumsum(terms)[:-1]))
    value = math.fsum(terms)
    return value, mzv_tail_bound(k, n) + 1e-14 * n


def eval_combination(c: MzvCombination, cfg: PrecisionConfig = DEFAULT) -> float:
    terms = []
    for mono, q in c.items():
        terms.append(float(q) * math.prod(eval_mzv(k, cfg) for k in mono))
    return math.fsum(terms)


def eval_tpoly(p: TPoly, t0: complex, cfg: PrecisionConfig = DEFAULT) -> complex:
    """Evaluate a ``TPoly`` at ``T = t0`` (Horner on the numeric coefficients)."""
    out = 0j
    for s in range(p.degree, -1, -1):
        out = out * t0 + eval_combination(p.coefficient(s), cfg)
    return out


def eval_zeta_star(k: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> float:
    """``zeta*(k) = sum_{0<m_1<=...<=m_r}``, as the sum over all contractions."""
    k = _require_admissible(tuple(k))
    return math.fsum(eval_mzv(c, cfg) for c in contractions(k))


def eval_zeta_hat_star(k: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> float:
    return (-1) ** len(k) * eval_zeta_star(k, cfg)


PI_I = complex(0.0, math.pi)
TWO_PI_I = 2 * PI_I

