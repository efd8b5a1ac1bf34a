"""Identity checks with residuals, and the suite that enumerates them.

Every check returns a :class:`CheckReport`; failures are recorded, never
raised.  Oracle-backed checks use ``max(1e-5, 3 * oracle bound)`` as
tolerance, pure fast-path checks ``1e-8``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

from .errors import InvalidIndexError
from .indices import (
    Index,
    as_index,
    contractions,
    dagger_dual,
    down_both,
    format_index,
    hoffman_dual,
    indices_up_to,
    is_mtgf_admissible,
    mtgf_admissible_indices,
    stuffle,
    tail_admissible_indices,
    up_last,
    weight,
)
from .multitangent import (
    derivative_index_sum,
    eval_index_sum,
    eval_monotangent_combination,
    eval_multitangent,
    eval_multitangent_direct,
    multiply_w_polys,
    w_expand,
)
from .numerics import (
    DEFAULT,
    PI_I,
    TWO_PI_I,
    PrecisionConfig,
    eval_mzv,
    eval_mzv_direct,
    eval_mzv_split,
    eval_tpoly,
    eval_zeta_hat_star,
)
from .regularization import harmonic_regularize, shuffle_regularize, shuffle_regularize_word
from .symmetric import main_theorem_rhs, rho_apply, symmetric_T_polynomial, zeta_rs, zeta_rs_star
from .words import index_to_word, shuffle

Z_SAMPLES: tuple[complex, ...] = (0.3, 0.51, 0.3 + 0.2j, -0.7 + 1.1j)
FAST_TOL = 1e-8
ORACLE_FLOOR = 1e-5
FD_STEP = 1e-5
FD_REL_TOL = 5e-6


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    instance: str
    residual: float
    tolerance: float
    passed: bool
    elapsed: float  # seconds

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "CheckReport":
        return cls(**json.loads(text))

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return (f"{mark} {self.check_name} [{self.instance}] "
                f"residual={self.residual:.3e} tol={self.tolerance:.1e}")


def _report(name: str, instance: str, fn: Callable[[], tuple[float, float]]) -> CheckReport:
    start = time.perf_counter()
    residual, tol = fn()
    elapsed = time.perf_counter() - start
    # NaN residuals must fail
    passed = bool(residual < tol)
    return CheckReport(name, instance, float(residual), float(tol), passed, elapsed)


def _pair(k: Sequence[int], l: Sequence[int]) -> str:
    return f"k={format_index(k)};l={format_index(l)}"


# -- identities between symmetric MZVs and multitangents ---------------------

def check_main_theorem(k: Sequence[int], z_samples: Iterable[complex] = Z_SAMPLES,
                       cfg: PrecisionConfig = DEFAULT,
                       extrapolation: str = "richardson") -> CheckReport:
    """Direct bilateral series of ``Psi_k`` against the symmetric-MZV formula."""
    k = as_index(k)
    rhs = main_theorem_rhs(k)

    def run():
        residual, bound = 0.0, 0.0
        for z in z_samples:
            oracle = eval_multitangent_direct(k, z, cfg, extrapolation)
            residual = max(residual, abs(oracle.value - eval_monotangent_combination(rhs, z, cfg)))
            bound = max(bound, oracle.bound)
        return residual, max(ORACLE_FLOOR, 3 * bound)

    return _report("main_theorem", f"k={format_index(k)}", run)


def kawashima_residual(k: Sequence[int], l: Sequence[int], cfg: PrecisionConfig = DEFAULT,
                       route: str = "harmonic_at_pi_i") -> complex:
    """``sum_m c_m zeta^RS((down_both m)^dual)`` over ``k * l = sum_m c_m m``."""
    return sum(float(c) * zeta_rs(hoffman_dual(down_both(m)), route, cfg)
               for m, c in stuffle(k, l).items())


def check_kawashima(k: Sequence[int], l: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    k, l = as_index(k), as_index(l)
    if not (is_mtgf_admissible(k) and is_mtgf_admissible(l)):
        raise InvalidIndexError("both indices need first and last part >= 2")
    return _report("kawashima_analogue", _pair(k, l),
                   lambda: (abs(kawashima_residual(k, l, cfg)), FAST_TOL))


def check_route_agreement(l: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    l = as_index(l)
    return _report("zeta_rs_routes", f"l={format_index(l)}", lambda: (
        abs(zeta_rs(l, "harmonic_at_pi_i", cfg) - zeta_rs(l, "integral_of_shuffle", cfg)), FAST_TOL))


def rho_w1_coefficient(l: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> complex:
    return w_expand(rho_apply(symmetric_T_polynomial(l, "shuffle")), cfg).get(1, 0j)


def check_w1_coefficient(l: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    l = as_index(l)
    return _report("rho_w1", f"l={format_index(l)}", lambda: (
        abs(rho_w1_coefficient(l, cfg) - TWO_PI_I**2 * zeta_rs(l, "harmonic_at_pi_i", cfg)),
        FAST_TOL))


def check_star_duality(k: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    k = as_index(k)
    return _report("rs_star_duality", f"k={format_index(k)}", lambda: (
        abs(zeta_rs_star(hoffman_dual(k), cfg) + zeta_rs_star(k, cfg).conjugate()), FAST_TOL))


# -- structure of multitangents --------------------------------------------

def check_derivative(k: Sequence[int], z_samples: Iterable[complex] = Z_SAMPLES,
                     cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    k = as_index(k)
    ds = derivative_index_sum(k)

    def run():
        worst = 0.0
        for z in z_samples:
            fd = (eval_multitangent(k, z + FD_STEP, cfg) - eval_multitangent(k, z - FD_STEP, cfg)) / (2 * FD_STEP)
            exact = eval_index_sum(ds, z, cfg)
            # relative, except where the function vanishes identically (e.g. Psi_{2,1,2})
            worst = max(worst, abs(fd - exact) / max(abs(exact), 1.0))
        return worst, FD_REL_TOL

    return _report("derivative", f"k={format_index(k)}", run)


def check_reflection(k: Sequence[int], z_samples: Iterable[complex] = Z_SAMPLES,
                     cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    k = as_index(k)
    sign = -1 if weight(k) % 2 else 1

    def run():
        return max(abs(eval_multitangent(k, -z, cfg) - sign * eval_multitangent(k[::-1], z, cfg))
                   for z in z_samples), FAST_TOL

    return _report("reflection", f"k={format_index(k)}", run)


def check_harmonic_product(k: Sequence[int], l: Sequence[int],
                           z_samples: Iterable[complex] = Z_SAMPLES,
                           cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    k, l = as_index(k), as_index(l)
    prod = stuffle(k, l)

    def run():
        return max(abs(eval_index_sum(prod, z, cfg) - eval_multitangent(k, z, cfg) * eval_multitangent(l, z, cfg))
                   for z in z_samples), FAST_TOL

    return _report("harmonic_product", _pair(k, l), run)


def check_w_product(k: Sequence[int], l: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    """The ``w^1`` coefficient of a product of two main-theorem sides vanishes."""
    k, l = as_index(k), as_index(l)
    return _report("w1_of_product", _pair(k, l), lambda: (
        abs(multiply_w_polys(w_expand(main_theorem_rhs(k), cfg),
                             w_expand(main_theorem_rhs(l), cfg)).get(1, 0j)), FAST_TOL))


# -- MZV engine and remarks --------------------------------------------------

def check_mzv_oracle(k: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    k = as_index(k)

    def run():
        value, bound = eval_mzv_direct(k, cfg)
        return abs(eval_mzv(k, cfg) - value), bound

    return _report("mzv_oracle", f"k={format_index(k)}", run)


def check_mzv_duality(k: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    """``zeta(k) = zeta(k^dagger)``; the dual side uses a different split point."""
    k = as_index(k)
    return _report("mzv_duality", f"k={format_index(k)}", lambda: (
        abs(eval_mzv(k, cfg) - eval_mzv_split(dagger_dual(k), 1 / 3, cfg)), 1e-9))


def check_star_sum(k: Sequence[int], cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    k = as_index(k)
    return _report("hat_star_sum", f"k={format_index(k)}", lambda: (
        abs(math.fsum(eval_zeta_hat_star(c, cfg) for c in contractions(k))
            - (-1) ** len(k) * eval_mzv(k, cfg)), 1e-9))


def classical_kawashima_residual(k: Sequence[int], l: Sequence[int],
                                 cfg: PrecisionConfig = DEFAULT) -> float:
    return math.fsum(float(c) * eval_zeta_hat_star(dagger_dual(up_last(m)), cfg)
                     for m, c in stuffle(k, l).items())


def check_classical_kawashima(k: Sequence[int], l: Sequence[int],
                              cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    k, l = as_index(k), as_index(l)
    return _report("classical_kawashima", _pair(k, l),
                   lambda: (abs(classical_kawashima_residual(k, l, cfg)), FAST_TOL))


REG_POINTS: tuple[complex, ...] = (0, 1, PI_I)


def check_regularization_product(k: Sequence[int], l: Sequence[int], flavor: str,
                                 cfg: PrecisionConfig = DEFAULT) -> CheckReport:
    """``reg(k . l) = reg(k) reg(l)`` at ``T`` in {0, 1, pi i}."""
    k, l = as_index(k), as_index(l)
    if flavor == "shuffle":
        def lhs_poly():
            out = None
            for w, c in shuffle(index_to_word(k), index_to_word(l)).items():
                term = shuffle_regularize_word(w).scale(c)
                out = term if out is None else out + term
            return out
        left, right = shuffle_regularize(k), shuffle_regularize(l)
    elif flavor == "harmonic":
        def lhs_poly():
            out = None
            for m, c in stuffle(k, l).items():
                term = harmonic_regularize(m).scale(c)
                out = term if out is None else out + term
            return out
        left, right = harmonic_regularize(k), harmonic_regularize(l)
    else:
        raise ValueError(f"unknown flavor {flavor!r}")

    def run():
        lhs = lhs_poly()
        return max(abs(eval_tpoly(lhs, t, cfg) - eval_tpoly(left, t, cfg) * eval_tpoly(right, t, cfg))
                   for t in REG_POINTS), FAST_TOL

    return _report(f"{flavor}_product_law", _pair(k, l), run)


# -- enumeration -------------------------------------------------------------

def _pairs(pool: Sequence[Index], max_total: int) -> list[tuple[Index, Index]]:
    return [(k, l) for k in pool for l in pool if weight(k) + weight(l) <= max_total]


def suite_tasks(weight_cap: int, cfg: PrecisionConfig = DEFAULT) -> list[Callable[[], CheckReport]]:
    """All checks of :func:`run_suite` as zero-argument callables, in report order."""
    if weight_cap < 2:
        raise ValueError("weight_cap must be at least 2")
    mt = mtgf_admissible_indices(weight_cap)
    nonempty = indices_up_to(weight_cap, 1)
    admissible = tail_admissible_indices(weight_cap, 2)
    tasks: list[Callable[[], CheckReport]] = []
    tasks += [lambda k=k: check_main_theorem(k, Z_SAMPLES, cfg) for k in mt]
    tasks += [lambda k=k, l=l: check_kawashima(k, l, cfg) for k, l in _pairs(mt, weight_cap)]
    tasks += [lambda k=k, l=l: check_w_product(k, l, cfg) for k, l in _pairs(mt, weight_cap)]
    tasks += [lambda k=k: check_derivative(k, Z_SAMPLES, cfg) for k in mt]
    tasks += [lambda k=k: check_reflection(k, Z_SAMPLES, cfg) for k in mt]
    tasks += [lambda k=k, l=l: check_harmonic_product(k, l, Z_SAMPLES, cfg) for k, l in _pairs(mt, weight_cap)]
    tasks += [lambda l=l: check_route_agreement(l, cfg) for l in indices_up_to(weight_cap)]
    tasks += [lambda l=l: check_w1_coefficient(l, cfg) for l in indices_up_to(weight_cap)]
    tasks += [lambda k=k: check_star_duality(k, cfg) for k in nonempty]
    tasks += [lambda k=k, l=l: check_classical_kawashima(k, l, cfg) for k, l in _pairs(nonempty, weight_cap)]
    tasks += [lambda k=k: check_star_sum(k, cfg) for k in admissible]
    tasks += [lambda k=k: check_mzv_duality(k, cfg) for k in admissible]
    tasks += [lambda k=k: check_mzv_oracle(k, cfg) for k in admissible if len(k) <= 4]
    for flavor in ("shuffle", "harmonic"):
        tasks += [lambda k=k, l=l, f=flavor: check_regularization_product(k, l, f, cfg)
                  for k, l in _pairs(nonempty, weight_cap)]
    return tasks


def run_suite(weight_cap: int, cfg: PrecisionConfig = DEFAULT, workers: int = 1) -> list[CheckReport]:
    """Run every check within ``weight_cap``; order is fixed regardless of ``workers``."""
    tasks = suite_tasks(weight_cap, cfg)
    if workers <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: t(), tasks))


# -- emission ----------------------------------------------------------------

CSV_COLUMNS = ("check_name", "instance", "residual", "tolerance", "passed", "elapsed_ms")


def reports_to_jsonl(reports: Iterable[CheckReport]) -> str:
    return "".join(r.to_json() + "\n" for r in reports)


def reports_to_csv(reports: Iterable[CheckReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow([r.check_name, r.instance, repr(r.residual), repr(r.tolerance),
                         str(r.passed).lower(), f"{r.elapsed * 1000:.3f}"])
    return buf.getvalue()


def reports_from_csv(text: str) -> list[CheckReport]:
    rows = csv.DictReader(io.StringIO(text))
    return [CheckReport(r["check_name"], r["instance"], float(r["residual"]), float(r["tolerance"]),
                        r["passed"] == "true", float(r["elapsed_ms"]) / 1000) for r in rows]
