"""One-dimensional searches and rate-energy Pareto filtering.

All searches *maximize*. Ties are broken toward the smaller argument so
results do not depend on evaluation order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class SearchDomainError(ValueError):
    pass


class ObjectiveError(ArithmeticError):
    """The objective returned a non-finite value."""


@dataclass(frozen=True)
class SearchResult:
    argmax: float
    value: float
    evaluations: int


class RateEnergyPoint(NamedTuple):
    rate: float    # secrecy rate, bits/s/Hz
    energy: float  # harvested power, W


def grid_points(a: float, b: float, step: float) -> np.ndarray:
    """``a, a+step, ..., b`` with ``b`` always included."""
    if a > b:
        raise SearchDomainError(f"empty interval [{a}, {b}]")
    if not step > 0:
        raise SearchDomainError(f"grid step must be > 0, got {step}")
    n = int(math.floor((b - a) / step * (1 + 1e-12)))
    pts = a + step * np.arange(n + 1)
    pts = pts[pts < b]
    return np.append(pts, b)


def _check_finite(values, xs):
    bad = ~np.isfinite(values)
    if np.any(bad):
        x = xs[np.argmax(bad)]
        raise ObjectiveError(f"objective is not finite at x={x!r}")


def grid_search(objective: Callable, interval: tuple[float, float], resolution: float,
                vectorized: bool = False) -> SearchResult:
    """Exhaustive maximization over a uniform grid.

    With ``vectorized=True`` the objective receives the whole grid as one
    array and must return an array of the same shape.
    """
    a, b = interval
    xs = grid_points(a, b, resolution)
    if vectorized:
        values = np.asarray(objective(xs), dtype=float)
    else:
        values = np.array([objective(float(x)) for x in xs], dtype=float)
    _check_finite(values, xs)
    k = int(np.argmax(values))  # first occurrence -> smallest argument
    return SearchResult(float(xs[k]), float(values[k]), len(xs))


def refine_unimodal(objective: Callable, bracket: tuple[float, float], tol: float) -> SearchResult:
    """Golden-section maximization on ``[lo, hi]``.

    Accurate to ``tol`` when the objective is unimodal on the bracket.
    Otherwise it still returns the best point it evaluated, which always
    lies inside the bracket.
    """
    lo, hi = bracket
    if not tol > 0:
        raise SearchDomainError(f"tol must be > 0, got {tol}")
    if not lo < hi:
        raise SearchDomainError(f"bracket must satisfy lo < hi, got [{lo}, {hi}]")

    def f(x):
        v = float(objective(x))
        if not math.isfinite(v):
            raise ObjectiveError(f"objective is not finite at x={x!r}")
        return v

    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    best_x, best_v = (c, fc) if fc >= fd else (d, fd)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
            x, v = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
            x, v = d, fd
        evals += 1
        if v > best_v or (v == best_v and x < best_x):
            best_x, best_v = x, v
    mid = 0.5 * (a + b)
    fm = f(mid)
    evals += 1
    if fm > best_v or (fm == best_v and mid < best_x):
        best_x, best_v = mid, fm
    return SearchResult(float(best_x), float(best_v), evals)


def maximize_scalar(objective: Callable, interval: tuple[float, float] = (0.0, 1.0),
                    coarse_step: float = 1e-3, tol: float = 1e-6,
                    vectorized: bool = False) -> SearchResult:
    """Coarse grid, then golden-section refinement around the best grid point.

    The refined point replaces the grid point only if it is strictly
    better, so the result is never worse than the grid alone.
    """
    coarse = grid_search(objective, interval, coarse_step, vectorized=vectorized)
    a, b = interval
    lo = max(a, coarse.argmax - coarse_step)
    hi = min(b, coarse.argmax + coarse_step)
    if not lo < hi:
        return coarse
    scalar = (lambda x: float(objective(np.array([x]))[0])) if vectorized else objective
    fine = refine_unimodal(scalar, (lo, hi), tol)
    total = coarse.evaluations + fine.evaluations
    if fine.value > coarse.value:
        return SearchResult(fine.argmax, fine.value, total)
    return SearchResult(coarse.argmax, coarse.value, total)


def pareto_front(points: Iterable) -> list[RateEnergyPoint]:
    """Non-dominated subset of (rate, energy) points, sorted by energy ascending.

    Of several identical points only the first is kept.
    """
    pts = [RateEnergyPoint(float(p[0]), float(p[1])) for p in points]
    order = sorted(range(len(pts)), key=lambda i: (-pts[i].energy, -pts[i].rate, i))
    kept = []
    best_rate = -math.inf
    for i in order:
        if pts[i].rate > best_rate:
            kept.append(pts[i])
            best_rate = pts[i].rate
    kept.reverse()
    return kept
