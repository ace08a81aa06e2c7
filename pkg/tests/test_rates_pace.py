import numpy as np
import pytest

from softcell.iqcore import (IqFrame, Pacer, RealtimeClock, VirtualClock,
                             base_rate, throttle_rate)

# Independent oracle: LTE rates are the 15 kHz subcarrier spacing times the
# FFT size chosen for each bandwidth.
FFT_SIZE = {6: 128, 15: 256, 25: 512, 50: 1024, 75: 1536, 100: 2048}


@pytest.mark.parametrize("n_rb", sorted(FFT_SIZE))
def test_base_rate_matches_subcarrier_oracle(n_rb):
    assert base_rate(n_rb) == 15e3 * FFT_SIZE[n_rb]


@pytest.mark.parametrize("n_rb,expected", [(100, 23.04e6), (50, 11.52e6), (6, 1.44e6)])
def test_throttle_rate(n_rb, expected):
    assert throttle_rate(n_rb) == pytest.approx(expected, rel=0, abs=0)


@pytest.mark.parametrize("bad", [0, 7, 24, 101, -6])
def test_unsupported_n_rb_rejected(bad):
    with pytest.raises(ValueError, match="valid values"):
        base_rate(bad)
    with pytest.raises(ValueError):
        throttle_rate(bad)


def _frame(n, rate):
    return IqFrame(0, rate, np.zeros(n, dtype=np.complex128) + 0j)


class TestPacerVirtual:
    def test_single_frame_advance(self):
        clock = VirtualClock()
        pacer = Pacer(23.04e6, clock)
        pacer.pace(_frame(23040, 23.04e6))
        assert clock.now() == pytest.approx(1e-3, rel=1e-12)

    def test_additivity(self):
        clock = VirtualClock()
        pacer = Pacer(23.04e6, clock)
        pacer.pace(_frame(23040, 23.04e6))
        t1 = clock.now()
        pacer.pace(_frame(23040, 23.04e6))
        assert clock.now() - t1 == pytest.approx(1e-3, rel=1e-12)

    def test_advance_is_cumulative_sum(self):
        clock = VirtualClock()
        rate = 1.44e6
        pacer = Pacer(rate, clock)
        lens = [4096, 1000, 8192, 1]
        expected = 0.0
        for n in lens:
            pacer.pace(_frame(n, rate))
            expected += n / rate
        assert clock.now() == expected  # exact float accumulation

    def test_values_untouched(self):
        clock = VirtualClock()
        f = IqFrame(5, 1e6, np.arange(8) + 1j)
        out = Pacer(1e6, clock).pace(f)
        assert out is f

    def test_bad_rate(self):
        with pytest.raises(ValueError):
            Pacer(0.0, VirtualClock())


def test_pacer_realtime_rate_short_window():
    # Short smoke check of the +-1% contract; the full 2 s window runs in the
    # acceptance suite.
    rate = 1.44e6
    clock = RealtimeClock()
    pacer = Pacer(rate, clock)
    n_frames, flen = 100, 4096
    t0 = clock.now()
    for _ in range(n_frames):
        pacer.pace(_frame(flen, rate))
    elapsed = clock.now() - t0
    measured = n_frames * flen / elapsed
    assert measured == pytest.approx(rate, rel=0.02)
