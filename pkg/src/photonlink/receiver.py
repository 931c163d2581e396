"""Jones-calculus simulation of a structured pulse-concentration receiver.

A receiver of ``k`` cascaded modules acts on classical field patterns that
occupy 2**k time bins in two polarizations.  Module ``i`` delays the V
component by 2**(k-i) bins (cyclically, with an optional phase error on the
delayed arm), then mixes the polarizations on a half-wave plate:

    (H, V) -> ((H + V)/sqrt(2), (H - V)/sqrt(2))

and finally scales the field by sqrt(loss).  For each target bin there is a
binary-phase input pattern of uniform per-bin energy that the lossless,
error-free cascade concentrates into a single bin in the H polarization;
those patterns form an orthogonal codebook.

Consecutive patterns on a real transmitter must be separated by at least
the pattern length (the cyclic delays otherwise wrap one pattern into the
next); that scheduling constraint is not modelled here.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace

import numpy as np

from .noise import NoiseModel, click_probs

H = 0
V = 1

_SQRT_HALF = math.sqrt(0.5)


class PatternFormatError(ValueError):
    """Raised on malformed field-pattern files."""


@dataclass(frozen=True, eq=False)
class FieldPattern:
    """Complex field amplitudes on a grid of time bins, shape (n_bins, 2).

    Column 0 is the H polarization, column 1 the V polarization.  The
    number of bins must be a power of two.  Amplitudes are stored read-only;
    operations return new patterns.
    """

    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amps, dtype=np.complex128)
        if amps.ndim != 2 or amps.shape[1] != 2 or amps.shape[0] < 1:
            raise ValueError(f"amps must have shape (n_bins, 2), got {amps.shape}")
        n = amps.shape[0]
        if n & (n - 1):
            raise ValueError(f"n_bins must be a power of two, got {n}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def n_bins(self) -> int:
        return self.amps.shape[0]

    def energy(self) -> float:
        """Total energy sum(|amp|^2) over all bins and polarizations."""
        return float(np.sum(np.abs(self.amps) ** 2))

    def bin_energies(self) -> np.ndarray:
        """Energy per time bin, both polarizations combined."""
        return np.sum(np.abs(self.amps) ** 2, axis=1)


@dataclass(frozen=True)
class ReceiverConfig:
    """Cascade of ``k`` modules with per-module loss and phase-error spread."""

    k: int
    per_module_loss: float = 1.0
    phase_error_sigma: float = 0.0
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be an integer >= 1, got {self.k!r}")
        if not 0.0 < self.per_module_loss <= 1.0:
            raise ValueError(f"per_module_loss must be in (0, 1], got {self.per_module_loss!r}")
        if not math.isfinite(self.phase_error_sigma) or self.phase_error_sigma < 0.0:
            raise ValueError(f"phase_error_sigma must be >= 0, got {self.phase_error_sigma!r}")


def apply_module(
    pattern: FieldPattern,
    delay_bins: int,
    phase_error: float = 0.0,
    loss: float = 1.0,
) -> FieldPattern:
    """One module: cyclic V delay with phase error, half-wave plate, loss.

    Args:
        pattern: input field.
        delay_bins: delay of the V component in bins; must divide n_bins.
        phase_error: extra phase (rad) picked up on the delayed arm.
        loss: power transmission of the module, in (0, 1].

    Returns:
        The output field pattern.
    """
    n = pattern.n_bins
    if int(delay_bins) != delay_bins or delay_bins < 1 or n % int(delay_bins):
        raise ValueError(f"delay_bins must be a positive divisor of {n}, got {delay_bins!r}")
    if not 0.0 < loss <= 1.0:
        raise ValueError(f"loss must be in (0, 1], got {loss!r}")
    if not math.isfinite(phase_error):
        raise ValueError(f"phase_error must be finite, got {phase_error!r}")
    h = pattern.amps[:, H]
    v = np.roll(pattern.amps[:, V], int(delay_bins)) * np.exp(1j * phase_error)
    scale = _SQRT_HALF * math.sqrt(loss)
    out = np.empty_like(pattern.amps)
    out[:, H] = (h + v) * scale
    out[:, V] = (h - v) * scale
    return FieldPattern(out)


def apply_receiver(pattern: FieldPattern, cfg: ReceiverConfig) -> FieldPattern:
    """Run a field pattern through the full cascade described by ``cfg``.

    Module ``i`` (1-based) uses delay n_bins / 2**i, so the last module has
    delay 1.  Phase errors are drawn once per module from a generator
    seeded with ``cfg.rng_seed``; sigma = 0 gives the ideal phases exactly.
    """
    if pattern.n_bins != 1 << cfg.k:
        raise ValueError(
            f"pattern has {pattern.n_bins} bins, config expects {1 << cfg.k}"
        )
    rng = np.random.default_rng(cfg.rng_seed)
    phases = rng.normal(0.0, cfg.phase_error_sigma, size=cfg.k)
    out = pattern
    for i in range(1, cfg.k + 1):
        out = apply_module(out, pattern.n_bins >> i, phases[i - 1], cfg.per_module_loss)
    return out


def make_pattern(k: int, target_bin: int, total_energy: float = 1.0) -> FieldPattern:
    """Codebook pattern that the ideal ``k``-module cascade concentrates
    into (``target_bin``, H).

    Built by pushing a single H-polarized pulse backwards through the exact
    inverse cascade.  The result has one occupied polarization per bin with
    amplitude +-sqrt(total_energy / 2**k).
    """
    if int(k) != k or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k!r}")
    n = 1 << int(k)
    if int(target_bin) != target_bin or not 0 <= target_bin < n:
        raise ValueError(f"target_bin must be an integer in [0, {n}), got {target_bin!r}")
    if not math.isfinite(total_energy) or total_energy <= 0.0:
        raise ValueError(f"total_energy must be > 0, got {total_energy!r}")

    # run the inverse cascade on integer signs; every intermediate state
    # keeps exactly one occupied polarization per bin, so the common factor
    # (1/sqrt(2))**k can be applied once at the end
    h = np.zeros(n)
    v = np.zeros(n)
    h[int(target_bin)] = 1.0
    for stage in range(int(k), 0, -1):
        h, v = h + v, h - v  # half-wave plate is its own inverse
        v = np.roll(v, -(n >> stage))
    amps = np.empty((n, 2), dtype=np.complex128)
    amp_scale = math.sqrt(total_energy / n)
    amps[:, H] = h * amp_scale
    amps[:, V] = v * amp_scale
    return FieldPattern(amps)


def detect_pattern(pattern: FieldPattern, model: NoiseModel) -> np.ndarray:
    """Per-bin click probability for a single-photon detector array.

    Each bin sees the combined energy of both polarizations as its pulse
    energy on top of the model background.
    """
    return np.array(
        [click_probs(model, e).p_p for e in pattern.bin_energies()]
    )


def concentration_efficiency(
    cfg: ReceiverConfig,
    trials: int,
    target_bin: int = 0,
    total_energy: float = 1.0,
) -> tuple[float, float]:
    """Monte Carlo estimate of the energy fraction reaching the target port.

    Runs the codebook pattern for ``target_bin`` through ``trials``
    independent receiver realizations and measures the fraction of the
    output energy arriving in the designed output port (``target_bin``, H).
    Trial ``t`` uses seed ``cfg.rng_seed + t``, so results do not depend on
    execution order and are fully deterministic; with zero phase-error
    spread every trial is identical.

    Returns:
        (mean, std) of the fraction over trials.
    """
    if int(trials) != trials or trials < 1:
        raise ValueError(f"trials must be an integer >= 1, got {trials!r}")
    pattern = make_pattern(cfg.k, target_bin, total_energy)
    fractions = np.empty(int(trials))
    for t in range(int(trials)):
        out = apply_receiver(pattern, replace(cfg, rng_seed=cfg.rng_seed + t))
        fractions[t] = abs(out.amps[target_bin, H]) ** 2 / out.energy()
    return float(fractions.mean()), float(fractions.std())


_HEADER_RE = re.compile(
    r"#\s*k\s*=\s*(\d+)\s+energy\s*=\s*([0-9.eE+-]+)\s*$"
)


def save_pattern(path: str, pattern: FieldPattern) -> None:
    """Write a pattern as a plain-text table, one row per bin."""
    k = pattern.n_bins.bit_length() - 1
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# k = {k} energy = {pattern.energy():.17e}\n")
        fh.write("# bin_index re_H im_H re_V im_V\n")
        for i, (amp_h, amp_v) in enumerate(pattern.amps):
            fh.write(
                f"{i} {amp_h.real:.17e} {amp_h.imag:.17e} "
                f"{amp_v.real:.17e} {amp_v.imag:.17e}\n"
            )


def load_pattern(path: str) -> FieldPattern:
    """Read a pattern written by ``save_pattern``."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.readlines()
    header = lines[0].strip() if lines else ""
    match = _HEADER_RE.match(header)
    if not match:
        raise PatternFormatError(f"{path}:1: expected '# k = <int> energy = <float>' header")
    k = int(match.group(1))
    energy = float(match.group(2))
    n = 1 << k
    amps = np.zeros((n, 2), dtype=np.complex128)
    row = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 5:
            raise PatternFormatError(f"{path}:{lineno}: expected 5 columns, got {len(fields)}")
        try:
            i = int(fields[0])
            re_h, im_h, re_v, im_v = (float(x) for x in fields[1:])
        except ValueError:
            raise PatternFormatError(f"{path}:{lineno}: malformed row") from None
        if i != row:
            raise PatternFormatError(f"{path}:{lineno}: expected bin_index {row}, got {i}")
        amps[i, H] = complex(re_h, im_h)
        amps[i, V] = complex(re_v, im_v)
        row += 1
    if row != n:
        raise PatternFormatError(f"{path}: expected {n} rows for k = {k}, got {row}")
    pattern = FieldPattern(amps)
    if not math.isclose(pattern.energy(), energy, rel_tol=1e-9, abs_tol=0.0):
        raise PatternFormatError(
            f"{path}: header energy {energy!r} does not match row data ({pattern.energy()!r})"
        )
    return pattern
