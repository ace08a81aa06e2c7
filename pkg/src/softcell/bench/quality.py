"""Error-vector magnitude and the EVM-to-throughput estimate."""

from __future__ import annotations

import math

import numpy as np

from ..errors import AlignmentError
from ..iqcore.frame import IqFrame

# Floor below which EVM readings are treated as measurement-limited.
EVM_FLOOR_PCT = 0.1
# SINR at which the rate estimate reaches its ceiling.
SINR_REF_DB = 22.0
# Calibrated ceiling for a 20 MHz carrier.
THR_MAX_20MHZ_MBPS = 75.0


def evm(reference: IqFrame, distorted: IqFrame) -> float:
    """RMS error in percent after fitting a single complex scalar.

    The least-squares scalar absorbs any common gain and phase rotation, so
    only the shape difference between the two signals counts as error.
    """
    if len(reference) != len(distorted):
        raise AlignmentError(
            f"length mismatch: reference {len(reference)}, distorted "
            f"{len(distorted)}"
        )
    r = reference.samples
    d = distorted.samples
    ref_energy = float(np.vdot(r, r).real)
    if ref_energy == 0.0:
        raise ValueError("reference has zero power; EVM is undefined")
    c = np.vdot(r, d) / ref_energy
    if c == 0:
        raise ValueError("distorted signal has no component along the reference")
    err = d - c * r
    err_energy = float(np.vdot(err, err).real)
    fit_energy = float(abs(c) ** 2 * ref_energy)
    return 100.0 * math.sqrt(err_energy / fit_energy)


def throughput_map(evm_pct: float, bandwidth_mhz: float = 20.0) -> float:
    """Estimated link rate in Mbps for a measured EVM.

    EVM is floored at 0.1%, mapped to an SINR (``evm = 1/sqrt(sinr)`` in
    linear terms), and run through a log2(1+sinr) rate curve capped at the
    reference SINR, so anything cleaner than 22 dB reads the full ceiling.
    """
    if bandwidth_mhz <= 0:
        raise ValueError(f"bandwidth_mhz must be positive, got {bandwidth_mhz}")
    floored = max(float(evm_pct), EVM_FLOOR_PCT)
    sinr = (100.0 / floored) ** 2
    sinr_ref = 10.0 ** (SINR_REF_DB / 10.0)
    ceiling = THR_MAX_20MHZ_MBPS * (bandwidth_mhz / 20.0)
    ratio = math.log2(1.0 + sinr) / math.log2(1.0 + sinr_ref)
    return ceiling * min(1.0, ratio)
