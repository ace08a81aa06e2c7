"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The fallback is selected automatically when numba is not importable, or
explicitly by setting ``SOFTCELL_NO_NUMBA=1`` in the environment.  Both paths
reduce tone phases modulo the comb period in integer space before any
trigonometry, so precision does not degrade with large sample indices, and
they agree to floating-point rounding (the fast path factors the per-tone
phase offset out of the exponential).  ``benchmarks/bench_kernels.py`` times
one against the other.
"""

from __future__ import annotations

import os

import numpy as np


def _tone_comb_np(bins: np.ndarray, phases: np.ndarray, fft_len: int,
                  start: int, length: int, scale: float) -> np.ndarray:
    # Integer phase reduction: exp(j*2*pi*b*(s+t)/N) == exp(j*2*pi*((b*((s+t) % N)) % N)/N)
    # for integer bins b, which keeps the exp argument small for any start index.
    tt = (np.arange(length, dtype=np.int64) + np.int64(start)) % fft_len
    w = 2.0 * np.pi / fft_len
    out = np.zeros(length, dtype=np.complex128)
    for m in range(bins.shape[0]):
        k = (bins[m] * tt) % fft_len
        out += np.exp(1j * (w * k + phases[m]))
    out *= scale
    return out


def _rapp_amam_np(x: np.ndarray, gain: float, a_sat: float, p: float) -> np.ndarray:
    gx = gain * x
    r = np.abs(gx)
    return gx * (1.0 + (r / a_sat) ** (2.0 * p)) ** (-1.0 / (2.0 * p))


def _numba_enabled() -> bool:
    if os.environ.get("SOFTCELL_NO_NUMBA", "").strip().lower() in ("1", "true", "yes"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _numba_enabled()

if USE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _tone_comb_nb(bins, phases, fft_len, start, length, scale):  # pragma: no cover - exercised via tests on outputs
        # The grid phase w*k takes only fft_len distinct values, so one
        # sincos table replaces a transcendental call per tone per sample.
        table_re = np.empty(fft_len)
        table_im = np.empty(fft_len)
        w = 2.0 * np.pi / fft_len
        for k in range(fft_len):
            table_re[k] = np.cos(w * k)
            table_im[k] = np.sin(w * k)
        n_tones = bins.shape[0]
        tone_re = np.empty(n_tones)
        tone_im = np.empty(n_tones)
        for m in range(n_tones):
            tone_re[m] = np.cos(phases[m])
            tone_im[m] = np.sin(phases[m])
        out = np.empty(length, dtype=np.complex128)
        for t in range(length):
            tt = (start + t) % fft_len
            re = 0.0
            im = 0.0
            for m in range(n_tones):
                k = (bins[m] * tt) % fft_len
                re += table_re[k] * tone_re[m] - table_im[k] * tone_im[m]
                im += table_re[k] * tone_im[m] + table_im[k] * tone_re[m]
            out[t] = complex(re * scale, im * scale)
        return out

    @njit(cache=True)
    def _rapp_amam_nb(x, gain, a_sat, p):  # pragma: no cover
        out = np.empty_like(x)
        two_p = 2.0 * p
        quartic = two_p == 4.0
        for i in range(x.shape[0]):
            gx = gain * x[i]
            q = abs(gx) / a_sat
            if quartic:  # default smoothness: powers become mults and sqrts
                q2 = q * q
                out[i] = gx / np.sqrt(np.sqrt(1.0 + q2 * q2))
            else:
                out[i] = gx * (1.0 + q ** two_p) ** (-1.0 / two_p)
        return out

    BACKEND = "numba"
else:
    _tone_comb_nb = None
    _rapp_amam_nb = None
    BACKEND = "numpy"


def tone_comb(bins: np.ndarray, phases: np.ndarray, fft_len: int,
              start: int, length: int, scale: float) -> np.ndarray:
    """Sum of complex tones ``scale * sum_m exp(j*(2*pi*bins[m]*(start+t)/fft_len + phases[m]))``.

    ``bins`` are integer frequency indices on an ``fft_len``-sample grid; the
    result is periodic with period ``fft_len``.
    """
    bins = np.ascontiguousarray(bins, dtype=np.int64)
    phases = np.ascontiguousarray(phases, dtype=np.float64)
    if bins.shape != phases.shape:
        raise ValueError("bins and phases must have the same length")
    if BACKEND == "numba":
        return _tone_comb_nb(bins, phases, np.int64(fft_len), np.int64(start),
                             np.int64(length), float(scale))
    return _tone_comb_np(bins, phases, int(fft_len), int(start), int(length), float(scale))


def rapp_amam(x: np.ndarray, gain: float, a_sat: float, p: float) -> np.ndarray:
    """Rapp AM/AM response ``g*x / (1 + (g*|x|/a_sat)^(2p))^(1/(2p))``; phase preserved."""
    x = np.ascontiguousarray(x, dtype=np.complex128)
    if BACKEND == "numba":
        return _rapp_amam_nb(x, float(gain), float(a_sat), float(p))
    return _rapp_amam_np(x, float(gain), float(a_sat), float(p))
