"""Time the numba kernels against the pure-numpy fallbacks.

Run as a script:

    python3 benchmarks/bench_kernels.py

The numba path must be importable for the comparison; with
SOFTCELL_NO_NUMBA=1 only the numpy timings are reported.
"""

import time

import numpy as np

from softcell import kernels

FFT_LEN = 4096
TONES = 64
START = 1_400_000_000


def best_of(fn, repeats=5, min_time=0.05):
    """Best wall time per call, with enough inner loops to be measurable."""
    fn()  # warmup (and numba compile)
    inner = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        elapsed = time.perf_counter() - t0
        if elapsed >= min_time:
            break
        inner *= 4
    best = elapsed / inner
    for _ in range(repeats - 1):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def workloads():
    rng = np.random.default_rng(0)
    bins = np.arange(TONES, dtype=np.int64) * 16
    phases = rng.uniform(0, 2 * np.pi, TONES)
    burst = rng.normal(size=65536) + 1j * rng.normal(size=65536)
    burst = np.ascontiguousarray(burst, dtype=np.complex128)

    def comb(impl, length):
        return lambda: impl(bins, phases, FFT_LEN, START, length, 0.125)

    def rapp(impl):
        return lambda: impl(burst, 1.0, 0.0794, 2.0)

    yield "tone_comb 64x4096", comb(kernels._tone_comb_np, 4096), \
        comb(kernels._tone_comb_nb, 4096) if kernels.USE_NUMBA else None
    yield "tone_comb 64x65536", comb(kernels._tone_comb_np, 65536), \
        comb(kernels._tone_comb_nb, 65536) if kernels.USE_NUMBA else None
    yield "rapp_amam 65536", rapp(kernels._rapp_amam_np), \
        rapp(kernels._rapp_amam_nb) if kernels.USE_NUMBA else None


def main():
    print(f"backend selected at import: {kernels.BACKEND}")
    header = f"{'workload':<22} {'numpy':>12} {'numba':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, np_fn, nb_fn in workloads():
        t_np = best_of(np_fn)
        if nb_fn is None:
            print(f"{name:<22} {t_np * 1e3:>10.3f}ms {'n/a':>12} {'n/a':>9}")
            continue
        mismatch = np.max(np.abs(np_fn() - nb_fn()))
        t_nb = best_of(nb_fn)
        print(f"{name:<22} {t_np * 1e3:>10.3f}ms {t_nb * 1e3:>10.3f}ms "
              f"{t_np / t_nb:>8.1f}x   (max |diff| {mismatch:.2e})")


if __name__ == "__main__":
    main()
