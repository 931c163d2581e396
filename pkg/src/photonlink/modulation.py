"""Mutual information of direct-detected binary modulation formats.

Both formats place pulses of mean detected photon number e_p = M * n_a on a
grid of time bins so that the average detected photon number per bin stays
n_a.  ``M`` is the frame length (PPM) or the inverse duty cycle (OOK) and is
treated as a continuous parameter; it does not have to be an integer.

PPM is evaluated for the simplest receiver: a frame is decoded only when
exactly one bin clicked, anything else is an erasure.  OOK is the
generalized on-off keying channel with on-probability 1/M and soft
(per-bin) decoding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noise import NoiseModel, click_probs


@dataclass(frozen=True)
class MutualInfoResult:
    """Mutual information per bin (bits) and per detected photon (bits)."""

    mi_per_bin: float
    pie: float


def binary_entropy(x: float) -> float:
    """H2(x) = -x log2 x - (1-x) log2(1-x), with H2(0) = H2(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary_entropy requires 0 <= x <= 1, got {x!r}")
    out = 0.0
    for q in (x, 1.0 - x):
        if q > 0.0:
            out -= q * math.log2(q)
    return out


def _check_m(m: float, m_min: float) -> None:
    if not math.isfinite(m) or m < m_min:
        raise ValueError(f"M must be finite and >= {m_min}, got {m!r}")


def _check_n_a(n_a: float) -> None:
    if not math.isfinite(n_a) or n_a < 0.0:
        raise ValueError(f"n_a must be finite and >= 0, got {n_a!r}")


def _result(mi_per_bin: float, n_a: float) -> MutualInfoResult:
    mi_per_bin = max(mi_per_bin, 0.0)
    pie = mi_per_bin / n_a if n_a > 0.0 else 0.0
    return MutualInfoResult(mi_per_bin=mi_per_bin, pie=pie)


def ppm_mi_per_bin(m: float, n_a: float, model: NoiseModel) -> MutualInfoResult:
    """Mutual information of simple-decoded PPM with frame length ``m``.

    A frame of m bins carries one pulse of energy e_p = m * n_a.  The
    decoder outputs the pulse position when exactly one bin clicked and an
    erasure otherwise.

    Args:
        m: frame length, >= 2 (continuous).
        n_a: average detected signal photons per bin, >= 0.
        model: background noise model.

    Returns:
        MutualInfoResult per bin of the frame.
    """
    _check_m(m, 2.0)
    _check_n_a(n_a)
    probs = click_probs(model, m * n_a)
    p_b, p_p = probs.p_b, probs.p_p
    if p_p == p_b:
        return _result(0.0, n_a)

    no_click = 1.0 - p_b
    q_c = p_p * no_click ** (m - 1.0)
    q_w = (1.0 - p_p) * p_b * no_click ** (m - 2.0)
    s = q_c + (m - 1.0) * q_w
    if s == 0.0:
        return _result(0.0, n_a)

    i_frame = 0.0
    if q_c > 0.0:
        i_frame += q_c * math.log2(q_c * m / s)
    if q_w > 0.0:
        i_frame += (m - 1.0) * q_w * math.log2(q_w * m / s)
    return _result(i_frame / m, n_a)


def ook_mi_per_bin(m: float, n_a: float, model: NoiseModel) -> MutualInfoResult:
    """Mutual information of generalized OOK with on-probability 1/``m``.

    Each bin independently carries a pulse of energy e_p = m * n_a with
    probability 1/m.  This is the full binary asymmetric channel between
    the pulse bit and the click bit, with no erasure post-processing.

    Args:
        m: inverse duty cycle, >= 1 (continuous).
        n_a: average detected signal photons per bin, >= 0.
        model: background noise model.

    Returns:
        MutualInfoResult per bin.
    """
    _check_m(m, 1.0)
    _check_n_a(n_a)
    probs = click_probs(model, m * n_a)
    p_b, p_p = probs.p_b, probs.p_p
    if p_p == p_b:
        return _result(0.0, n_a)

    p_on = 1.0 / m
    p_click = p_on * p_p + (1.0 - p_on) * p_b
    mi = (
        binary_entropy(p_click)
        - p_on * binary_entropy(p_p)
        - (1.0 - p_on) * binary_entropy(p_b)
    )
    return _result(mi, n_a)


def ppm_mi_enumeration_oracle(m: int, n_a: float, model: NoiseModel) -> float:
    """Simple-decoded PPM mutual information by exhaustive enumeration.

    Walks all 2**m click patterns for every pulse position, applies the
    single-click decoding rule and evaluates the mutual information of the
    resulting (position, decision) joint distribution.  Exponential in m,
    intended as an independent cross-check of ``ppm_mi_per_bin``.

    Args:
        m: integer frame length, 2 <= m <= 12.
        n_a: average detected signal photons per bin, >= 0.
        model: background noise model.

    Returns:
        Mutual information in bits per frame.
    """
    if int(m) != m or not 2 <= m <= 12:
        raise ValueError(f"enumeration oracle requires integer 2 <= m <= 12, got {m!r}")
    m = int(m)
    _check_n_a(n_a)
    probs = click_probs(model, m * n_a)

    clicks = ((np.arange(2**m)[:, None] >> np.arange(m)[None, :]) & 1).astype(bool)
    n_clicks = clicks.sum(axis=1)
    single = n_clicks == 1
    click_pos = np.argmax(clicks, axis=1)

    # joint distribution over (pulse position, decoder output); column m is erasure
    joint = np.zeros((m, m + 1))
    for i in range(m):
        per_bin = np.full(m, probs.p_b)
        per_bin[i] = probs.p_p
        pattern_prob = np.prod(np.where(clicks, per_bin, 1.0 - per_bin), axis=1)
        for y in range(m):
            joint[i, y] = pattern_prob[single & (click_pos == y)].sum()
        joint[i, m] = pattern_prob[~single].sum()
    joint /= m

    p_x = joint.sum(axis=1)
    p_y = joint.sum(axis=0)
    mi = 0.0
    for i in range(m):
        for y in range(m + 1):
            p_xy = joint[i, y]
            if p_xy > 0.0:
                mi += p_xy * math.log2(p_xy / (p_x[i] * p_y[y]))
    return max(mi, 0.0)
