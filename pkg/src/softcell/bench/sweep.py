"""Drive sweeps through the amplifier model, row per drive level.

The stimulus is a seeded 64-tone multitone occupying a 20 MHz band inside
a 61.44 MHz span (so the adjacent-channel bands fit), with tones placed on
the analysis FFT grid to keep the clean-signal leakage floor far below any
real shoulder.  Unit mean power at 0 dB drive makes the drive axis easy to
reason about: drive_db is the input power relative to the stimulus.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..iqcore.dsp import apply_gain
from ..iqcore.frame import IqFrame
from .pa import PaParams, rapp_pa
from .quality import evm, throughput_map
from .spectrum import welch_psd, aclr_shoulder

STIMULUS_BANDWIDTH_HZ = 20e6
STIMULUS_RATE_HZ = 61.44e6
DEFAULT_TONES = 64
DEFAULT_GRID = 1024
DEFAULT_SPACING_BINS = 5
DEFAULT_LENGTH = 65536
# Phase seed picked for an 8 dB crest factor and a hard-clip shoulder
# ratio inside -10 dB, so deep-saturation sweeps reach the clipped regime.
DEFAULT_SEED = 10


@dataclass(frozen=True)
class SweepRow:
    """One sweep measurement at a single drive level."""

    drive_db: float
    aclr_db: float
    evm_pct: float
    throughput_mbps: float

    def __post_init__(self):
        if self.evm_pct < 0:
            raise ValueError(f"evm_pct must be >= 0, got {self.evm_pct}")
        if self.throughput_mbps < 0:
            raise ValueError(
                f"throughput_mbps must be >= 0, got {self.throughput_mbps}"
            )


def make_multitone(n_tones: int = DEFAULT_TONES, grid_len: int = DEFAULT_GRID,
                   spacing_bins: int = DEFAULT_SPACING_BINS,
                   length: int = DEFAULT_LENGTH, seed: int = DEFAULT_SEED,
                   sample_rate_hz: float = STIMULUS_RATE_HZ) -> IqFrame:
    """Seeded random-phase multitone with unit mean power.

    Tones sit every ``spacing_bins`` bins of a ``grid_len`` FFT grid,
    centered on DC, each at amplitude ``1/sqrt(n_tones)``.
    """
    if n_tones < 1:
        raise ValueError(f"n_tones must be >= 1, got {n_tones}")
    offsets = np.arange(n_tones, dtype=np.int64) * spacing_bins
    bins = (offsets - (spacing_bins * n_tones) // 2) % grid_len
    phases = np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi, n_tones)
    samples = kernels.tone_comb(bins, phases, grid_len, 0, length,
                                1.0 / np.sqrt(n_tones))
    return IqFrame(0, sample_rate_hz, samples)


def default_a_sat(stimulus: IqFrame, pa_gain_db: float, start_drive_db: float,
                  backoff_db: float = 8.0) -> float:
    """Saturation amplitude leaving ``backoff_db`` of headroom at sweep start."""
    rms = float(np.sqrt(np.mean(np.abs(stimulus.samples) ** 2)))
    level_db = start_drive_db + pa_gain_db + backoff_db
    return rms * 10.0 ** (level_db / 20.0)


def pa_sweep(drives_db, pa: PaParams, stimulus: IqFrame) -> list[SweepRow]:
    """Measure ACLR, EVM, and estimated throughput at each drive level.

    Each drive scales the stimulus, passes it through the amplifier, and
    compares against the scaled (pre-amplifier) signal as the linear
    reference; the EVM fit absorbs the amplifier's small-signal gain.
    Rows come back in input order.  Drives must be strictly increasing.
    """
    drives = [float(d) for d in drives_db]
    if len(drives) < 1:
        raise ValueError("drive list is empty")
    if any(b <= a for a, b in zip(drives, drives[1:])):
        raise ValueError(f"drives must be strictly increasing, got {drives}")
    rows = []
    for drive_db in drives:
        scaled = apply_gain(stimulus, 10.0 ** (drive_db / 20.0))
        amplified = rapp_pa(scaled, pa)
        psd = welch_psd(amplified)
        aclr_db = aclr_shoulder(psd, STIMULUS_BANDWIDTH_HZ)
        evm_pct = evm(scaled, amplified)
        rows.append(SweepRow(
            drive_db=drive_db,
            aclr_db=aclr_db,
            evm_pct=evm_pct,
            throughput_mbps=throughput_map(evm_pct),
        ))
    return rows


def sweep_csv(rows) -> str:
    """Fixed-format CSV: drive_db,aclr_db,evm_pct,throughput_mbps."""
    buf = io.StringIO()
    buf.write("drive_db,aclr_db,evm_pct,throughput_mbps\n")
    for row in rows:
        buf.write(
            f"{row.drive_db:.3f},{row.aclr_db:.3f},{row.evm_pct:.3f},"
            f"{row.throughput_mbps:.3f}\n"
        )
    return buf.getvalue()
