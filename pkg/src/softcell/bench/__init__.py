"""PA saturation benchmarking: distortion, spectra, EVM, and throughput."""

from .pa import PaParams, rapp_pa
from .spectrum import Psd, aclr_shoulder, welch_psd
from .quality import SINR_REF_DB, THR_MAX_20MHZ_MBPS, evm, throughput_map
from .sweep import (
    STIMULUS_BANDWIDTH_HZ,
    SweepRow,
    default_a_sat,
    make_multitone,
    pa_sweep,
    sweep_csv,
)

__all__ = [
    "PaParams",
    "rapp_pa",
    "Psd",
    "welch_psd",
    "aclr_shoulder",
    "evm",
    "throughput_map",
    "SINR_REF_DB",
    "THR_MAX_20MHZ_MBPS",
    "SweepRow",
    "make_multitone",
    "default_a_sat",
    "pa_sweep",
    "sweep_csv",
    "STIMULUS_BANDWIDTH_HZ",
]
