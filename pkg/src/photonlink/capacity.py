"""Channel capacities per temporal mode and photon information efficiency.

Everything here is expressed in terms of the mean detected signal photon
number per mode ``n_a`` and the mean background photon number per mode
``n_b``.  Capacities are in bits per mode, efficiencies in bits per photon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LOG2_E = math.log2(math.e)


def _log2_1p(u: float) -> float:
    # log2(1 + u) without cancellation for u near 0
    return math.log1p(u) * LOG2_E


def _xlog2x(x: float) -> float:
    # x * log2(x), continuously extended to 0 at x = 0
    if x == 0.0:
        return 0.0
    return x * math.log2(x)


@dataclass(frozen=True)
class PhotonNumbers:
    """Mean detected photon numbers per mode: ``n_a`` signal, ``n_b`` background."""

    n_a: float
    n_b: float

    def __post_init__(self) -> None:
        for name in ("n_a", "n_b"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")


def g(x: float) -> float:
    """Entropy of a thermal state with mean photon number ``x``, in bits.

    g(x) = (x + 1) log2(x + 1) - x log2(x); g(0) = 0.
    """
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"g requires x >= 0, got {x!r}")
    return (x + 1.0) * _log2_1p(x) - _xlog2x(x)


def shannon_capacity(pn: PhotonNumbers) -> float:
    """Shannon capacity log2(1 + n_a / (n_b + 1)) of the quadrature channel."""
    return _log2_1p(pn.n_a / (pn.n_b + 1.0))


def holevo_capacity(pn: PhotonNumbers) -> float:
    """Holevo capacity g(n_a + n_b) - g(n_b), the quantum limit per mode."""
    return g(pn.n_a + pn.n_b) - g(pn.n_b)


def pie(capacity_bits: float, n_a: float) -> float:
    """Photon information efficiency: bits per detected signal photon."""
    if not math.isfinite(n_a) or n_a <= 0.0:
        raise ValueError(f"pie requires n_a > 0, got {n_a!r}")
    return capacity_bits / n_a


def holevo_pie_asymptote(n_b: float) -> float:
    """n_a -> 0 limit of the Holevo efficiency: log2(1 + 1/n_b).

    Diverges as the background vanishes; requires n_b > 0.
    """
    if not math.isfinite(n_b) or n_b <= 0.0:
        raise ValueError(f"holevo_pie_asymptote requires n_b > 0, got {n_b!r}")
    return _log2_1p(1.0 / n_b)


def shannon_pie_asymptote(n_b: float) -> float:
    """n_a -> 0 limit of the Shannon efficiency: log2(e) / (1 + n_b)."""
    if not math.isfinite(n_b) or n_b < 0.0:
        raise ValueError(f"shannon_pie_asymptote requires n_b >= 0, got {n_b!r}")
    return LOG2_E / (1.0 + n_b)
