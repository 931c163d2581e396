"""Optimization of the modulation parameter M for PPM and OOK.

The photon information efficiency is maximized over the continuous frame
length / inverse duty cycle M at fixed n_a.  Since pie = mi_per_bin / n_a at
fixed n_a, maximizing efficiency and maximizing mutual information per bin
are the same problem.

The search is deterministic: a coarse scan on a logarithmic grid locates the
basin, golden-section iterations refine it.  An optimum pinned at the upper
search bound is reported with ``at_boundary`` set instead of raising, so
sweeps can flag rather than abort.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .modulation import ook_mi_per_bin, ppm_mi_per_bin
from .noise import NoiseModel

PPM = "ppm"
OOK = "ook"
SCHEMES = (PPM, OOK)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_M_MIN = {PPM: 2.0, OOK: 1.0}

FLAG_OK = "ok"
FLAG_BOUNDARY = "boundary"
FLAG_FAILED = "failed"


@dataclass(frozen=True)
class ModulationOptimum:
    """Result of maximizing efficiency over M at fixed n_a."""

    m_star: float
    pie_star: float
    mi_per_bin: float
    pulse_energy: float
    at_boundary: bool = False


@dataclass(frozen=True)
class SweepRow:
    """One (n_b, n_a) point of an efficiency sweep."""

    n_a: float
    n_b: float
    m_star: float
    pie_star: float
    pulse_energy: float
    flag: str


def _objective(scheme: str, n_a: float, model: NoiseModel) -> Callable[[float], float]:
    mi = ppm_mi_per_bin if scheme == PPM else ook_mi_per_bin
    return lambda m: mi(m, n_a, model).mi_per_bin


def optimize_M(
    n_a: float,
    model: NoiseModel,
    scheme: str,
    m_max: float = 1e9,
    coarse_points: int = 240,
    rel_tol: float = 1e-6,
) -> ModulationOptimum:
    """Maximize mutual information per bin over the modulation parameter M.

    Args:
        n_a: average detected signal photons per bin, > 0.
        model: background noise model.
        scheme: "ppm" or "ook".
        m_max: upper end of the search range.
        coarse_points: size of the initial logarithmic grid, >= 200.
        rel_tol: relative width of the final golden-section bracket.

    Returns:
        ModulationOptimum; ``at_boundary`` is set when the coarse scan puts
        the maximum on the m_max end, meaning the range should be widened.
    """
    if not math.isfinite(n_a) or n_a <= 0.0:
        raise ValueError(f"optimize_M requires n_a > 0, got {n_a!r}")
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    m_min = _M_MIN[scheme]
    if not math.isfinite(m_max) or m_max <= m_min:
        raise ValueError(f"m_max must exceed {m_min}, got {m_max!r}")
    if coarse_points < 200:
        raise ValueError(f"coarse_points must be >= 200, got {coarse_points!r}")

    f = _objective(scheme, n_a, model)
    best_m, best_val = m_min, f(m_min)

    def probe(m: float) -> float:
        nonlocal best_m, best_val
        val = f(m)
        if val > best_val:
            best_m, best_val = m, val
        return val

    lo, hi = math.log(m_min), math.log(m_max)
    grid = [math.exp(lo + (hi - lo) * i / (coarse_points - 1)) for i in range(coarse_points)]
    values = [probe(m) for m in grid]
    i_best = max(range(coarse_points), key=values.__getitem__)
    at_boundary = i_best == coarse_points - 1

    # golden-section refinement of the bracketing cell, on the log axis
    a = math.log(grid[max(i_best - 1, 0)])
    b = math.log(grid[min(i_best + 1, coarse_points - 1)])
    tol = math.log1p(rel_tol)
    c = b - (b - a) * _INV_PHI
    d = a + (b - a) * _INV_PHI
    f_c = probe(math.exp(c))
    f_d = probe(math.exp(d))
    while b - a > tol:
        if f_c >= f_d:
            b, d, f_d = d, c, f_c
            c = b - (b - a) * _INV_PHI
            f_c = probe(math.exp(c))
        else:
            a, c, f_c = c, d, f_d
            d = a + (b - a) * _INV_PHI
            f_d = probe(math.exp(d))
    probe(math.exp((a + b) / 2.0))

    return ModulationOptimum(
        m_star=best_m,
        pie_star=best_val / n_a,
        mi_per_bin=best_val,
        pulse_energy=best_m * n_a,
        at_boundary=at_boundary,
    )


def sweep_pie(
    n_a_grid: Sequence[float],
    n_b_list: Sequence[float],
    model_kind: str,
    scheme: str,
    m_max: float = 1e9,
) -> list[SweepRow]:
    """Optimized efficiency over an (n_b, n_a) grid.

    Rows are ordered by (n_b, n_a) ascending.  A point whose optimization
    fails is kept in the table with NaN values and flag "failed"; a point
    whose optimum sits on the m_max bound is flagged "boundary".
    """
    rows = []
    for n_b in sorted(n_b_list):
        model = NoiseModel(model_kind, n_b)
        for n_a in sorted(n_a_grid):
            try:
                opt = optimize_M(n_a, model, scheme, m_max=m_max)
            except ValueError:
                rows.append(SweepRow(n_a, n_b, math.nan, math.nan, math.nan, FLAG_FAILED))
                continue
            flag = FLAG_BOUNDARY if opt.at_boundary else FLAG_OK
            rows.append(
                SweepRow(n_a, n_b, opt.m_star, opt.pie_star, opt.pulse_energy, flag)
            )
    return rows
