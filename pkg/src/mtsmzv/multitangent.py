"""Multitangent functions.

High-accuracy values always go through :func:`bouillot_reduce` and the exact
monotangent polynomials in ``w = 1/(exp(2 pi i z) - 1)``; the bilateral
series in :func:`eval_multitangent_direct` is only an oracle.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import InvalidIndexError, PoleError
from .indices import Index, IndexSum, as_index, is_mtgf_admissible
from .numerics import DEFAULT, TWO_PI_I, PrecisionConfig, eval_combination
from .regularization import MzvCombination, zeta_shifted
from .symmetric import MonotangentCombination

POLE_DISTANCE = 1e-12


@dataclass(frozen=True)
class WPolynomial:
    """``(2 pi i)^s * sum_k coeffs[k] w^k`` with exact rational ``coeffs``."""

    s: int
    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> complex:
        """Complex coefficient of ``w^k`` including the ``(2 pi i)^s`` factor."""
        if not 0 <= k < len(self.coeffs):
            return 0j
        return float(self.coeffs[k]) * TWO_PI_I**self.s

    def __call__(self, w: complex) -> complex:
        out = 0j
        for c in reversed(self.coeffs):
            out = out * w + float(c)
        return out * TWO_PI_I**self.s

    def to_json(self) -> str:
        return json.dumps({
            "s": self.s,
            "coefficients": [
                {"power": k, "rational": f"{c.numerator}/{c.denominator}", "power_of_2pii": self.s}
                for k, c in enumerate(self.coeffs) if c
            ],
        })

    @classmethod
    def from_json(cls, text: str) -> "WPolynomial":
        data = json.loads(text)
        s = data["s"]
        n = max((d["power"] for d in data["coefficients"]), default=0) + 1
        coeffs = [Fraction(0)] * n
        for d in data["coefficients"]:
            if d["power_of_2pii"] != s:
                raise ValueError("mixed powers of 2 pi i are not a monotangent polynomial")
            coeffs[d["power"]] = Fraction(d["rational"])
        return cls(s, tuple(coeffs))


@lru_cache(maxsize=None)
def monotangent_w_poly(s: int) -> WPolynomial:
    """Exact ``Psi_s`` as a polynomial in ``w``.

    Starts from ``Psi_2 = (2 pi i)^2 (w + w^2)`` and applies
    ``Psi_{m+1} = -(1/m) d/dz Psi_m`` with ``dw/dz = -2 pi i (w + w^2)``.
    """
    if not isinstance(s, int) or s < 2:
        raise ValueError(f"monotangent weight must be >= 2, got {s!r}")
    if s == 2:
        return WPolynomial(2, (Fraction(0), Fraction(1), Fraction(1)))
    prev = monotangent_w_poly(s - 1).coeffs
    m = s - 1
    out = [Fraction(0)] * (len(prev) + 1)
    for k, c in enumerate(prev):
        if c:
            out[k] += c * k / m
            out[k + 1] += c * k / m
    return WPolynomial(s, tuple(out))


def _check_pole(z: complex) -> complex:
    z = complex(z)
    if abs(z - round(z.real)) < POLE_DISTANCE:
        raise PoleError(f"z = {z} is an integer pole")
    return z


def w_of_z(z: complex) -> complex:
    z = _check_pole(z)
    return 1.0 / (cmath.exp(TWO_PI_I * z) - 1.0)


def eval_monotangent(s: int, z: complex) -> complex:
    """``Psi_s(z) = sum_m (z + m)^(-s)`` through its ``w``-polynomial.

    For ``Im z > 0`` we have ``w ~ -1`` and the polynomial cancels badly at
    high weight, so the reflection ``Psi_s(z) = (-1)^s Psi_s(-z)`` is used to
    evaluate at the small ``w(-z)`` instead.
    """
    z = _check_pole(z)
    if z.imag > 0:
        return (-1) ** s * monotangent_w_poly(s)(w_of_z(-z))
    return monotangent_w_poly(s)(w_of_z(z))


def eval_monotangent_combination(m: MonotangentCombination, z: complex,
                                 cfg: PrecisionConfig = DEFAULT) -> complex:
    return sum(c * eval_monotangent(s, z) for s, c in m.flatten(cfg).items())


@dataclass(frozen=True)
class OracleValue:
    value: complex
    bound: float
    cutoff: int


def _bilateral_sum(k: Index, z: complex, n: int) -> complex:
    m = np.arange(-n, n + 1, dtype=float)
    base = 1.0 / (z + m)
    acc = np.ones(m.shape, dtype=complex)
    for p in k:
        terms = acc * base**p
        acc = np.concatenate(([0j], np.cumsum(terms)[:-1]))
    return complex(terms.sum())


def _log_fit(k: Index, z: complex, n: int) -> complex:
    """Fit ``S(N) = S + sum_{i<=p} a_i log(N)^i / N`` on ``N, 2N, ..., 2^(p+1) N``.

    ``p`` is the number of parts equal to 1; each one adds a logarithm to
    the truncation tail.
    """
    p = sum(1 for part in k if part == 1)
    cutoffs = [n * 2**j for j in range(p + 2)]
    rows = [[1.0] + [math.log(c) ** i / c for i in range(p + 1)] for c in cutoffs]
    sums = [_bilateral_sum(k, z, c) for c in cutoffs]
    return complex(np.linalg.solve(np.array(rows, dtype=complex), np.array(sums))[0])


def eval_multitangent_direct(k: Sequence[int], z: complex, cfg: PrecisionConfig = DEFAULT,
                             extrapolation: str = "richardson") -> OracleValue:
    """Truncated series over ``-N <= m_1 < ... < m_d <= N``, extrapolated in ``N``.

    ``"richardson"``: one step on ``N, 2N``, value ``2 S(2N) - S(N)``.  Parts
    equal to 1 leave ``log(N)^p / N`` tails that a single step cannot remove.
    ``"log"``: solve exactly for those logarithmic tail coefficients
    (see :func:`_log_fit`).  Either way the bound is twice the change against
    the same procedure started from ``N/2``, plus a rounding floor.
    """
    k = as_index(k)
    if not is_mtgf_admissible(k):
        raise InvalidIndexError(f"multitangent series diverges for {k!r}")
    z = _check_pole(z)
    n = cfg.oracle_cutoff
    coarse_n = max(n // 2, 1)
    if extrapolation == "richardson":
        half, full, double = (_bilateral_sum(k, z, c) for c in (coarse_n, n, 2 * n))
        coarse = 2 * full - half
        fine = 2 * double - full
    elif extrapolation == "log":
        coarse = _log_fit(k, z, coarse_n)
        fine = _log_fit(k, z, n)
    else:
        raise ValueError(f"unknown extrapolation {extrapolation!r}")
    rounding = 1e-15 * math.sqrt(4 * n) * max(abs(fine), 1.0) * (1 + _edge_scale(z))
    return OracleValue(fine, 2 * abs(fine - coarse) + rounding, n)


def _edge_scale(z: complex) -> float:
    # terms near the pole dominate the magnitude of the partial sums
    dist = abs(z - round(z.real))
    return 1.0 / dist**2


def bouillot_reduce(k: Sequence[int]) -> MonotangentCombination:
    """Reduce ``Psi_k`` to monotangents with MZV coefficients.

    ``Psi_k = sum_j sum_{a+s+b=k_j-2} (-1)^(k_1+..+k_{j-1}+a)
    zeta_a(k_{j-1},..,k_1) zeta_b(k_{j+1},..,k_d) Psi_{s+2}``.
    """
    k = as_index(k)
    if not is_mtgf_admissible(k):
        raise InvalidIndexError(f"multitangent index needs first and last part >= 2: {k!r}")
    acc: dict[int, MzvCombination] = {}
    for j, kj in enumerate(k):
        before = k[:j][::-1]
        after = k[j + 1:]
        prefix_weight = sum(k[:j])
        for a in range(kj - 1):
            left = zeta_shifted(a, before)
            if not left:
                continue
            sign = -1 if (prefix_weight + a) % 2 else 1
            for b in range(kj - 1 - a):
                right = zeta_shifted(b, after)
                if not right:
                    continue
                s = kj - 2 - a - b
                acc[s + 2] = acc.get(s + 2, MzvCombination()) + (left * right).scale(sign)
    return MonotangentCombination(acc)


def eval_multitangent(k: Sequence[int], z: complex, cfg: PrecisionConfig = DEFAULT) -> complex:
    return eval_monotangent_combination(bouillot_reduce(k), z, cfg)


def eval_index_sum(ks: IndexSum, z: complex, cfg: PrecisionConfig = DEFAULT) -> complex:
    """Linear extension of :func:`eval_multitangent` to formal sums."""
    return sum(float(c) * eval_multitangent(k, z, cfg) for k, c in ks.items())


def derivative_index_sum(k: Sequence[int]) -> IndexSum:
    """``d/dz Psi_k = -sum_i k_i Psi_{k + e_i}`` as a formal index sum."""
    k = as_index(k)
    if not is_mtgf_admissible(k):
        raise InvalidIndexError(f"multitangent index needs first and last part >= 2: {k!r}")
    return IndexSum([(k[:i] + (p + 1,) + k[i + 1:], -p) for i, p in enumerate(k)])


def w_expand(m: MonotangentCombination, cfg: PrecisionConfig = DEFAULT) -> dict[int, complex]:
    """Numeric polynomial in ``w``: power -> complex coefficient."""
    out: dict[int, complex] = {}
    for s, c in m.flatten(cfg).items():
        poly = monotangent_w_poly(s)
        for power in range(poly.degree + 1):
            if poly.coeffs[power]:
                out[power] = out.get(power, 0j) + c * poly.coefficient(power)
    return dict(sorted(out.items()))


def multiply_w_polys(p: dict[int, complex], q: dict[int, complex]) -> dict[int, complex]:
    out: dict[int, complex] = {}
    for i, a in p.items():
        for j, b in q.items():
            out[i + j] = out.get(i + j, 0j) + a * b
    return out
