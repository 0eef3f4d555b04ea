import io
import math

import numpy as np
import pytest

from nsea_df import (ActuatorParams, LpvPlant, df_closed_form,
                     export_schedule, lpv_response, sea_frequency_response)
from nsea_df.lpv import bode_grid


@pytest.fixture
def plant(act, geom):
    return LpvPlant.from_actuator(act, geom)


def test_validation(geom):
    with pytest.raises(ValueError):
        LpvPlant(0.005, 0.1, geom, K=0.0)
    with pytest.raises(ValueError):
        LpvPlant(0.0, 0.1, geom)


@pytest.mark.parametrize('A', [0.01, 0.3, 5.0])
def test_dc_gain(plant, A):
    assert lpv_response(plant, 0.0, A) == 1 + 0j


@pytest.mark.parametrize('A', [0.05, 0.3, 2.0])
def test_natural_frequency_magnitude(plant, A):
    k = plant.K * df_closed_form(plant.geom, A)
    w = math.sqrt(k / plant.J)
    assert abs(lpv_response(plant, w, A)) == pytest.approx(k / (plant.D * w),
                                                           rel=1e-12)


@pytest.mark.parametrize('K', [1.0, 2.5])
def test_structural_identity(act, geom, K):
    plant = LpvPlant.from_actuator(act, geom, K)
    for A in np.geomspace(0.01, 5.0, 7):
        for w in np.linspace(0.0, 600.0, 7):
            k = K * float(df_closed_form(geom, A))
            assert lpv_response(plant, w, A) == sea_frequency_response(act, k, w)


def test_rejects_nonpositive_amplitude(plant):
    with pytest.raises(ValueError):
        lpv_response(plant, 1.0, 0.0)


@pytest.mark.parametrize('A', [0.1, 0.3])
def test_zero_db_crossing_scan(plant, A):
    k = plant.K * df_closed_form(plant.geom, A)
    w0 = math.sqrt(2 * k / plant.J - (plant.D / plant.J) ** 2)
    step = 0.05
    w = np.arange(step, 3 * w0, step)
    mag = np.abs(lpv_response(plant, w, A))
    last = np.nonzero(mag >= 1)[0][-1]
    assert abs(w[last] - w0) <= step


def test_schedule(plant):
    A = np.geomspace(0.01, 1.0, 30)
    s = export_schedule(plant, A)
    assert np.all(np.diff(s.natural_freq_Hz) > 0)
    assert np.all(np.diff(s.damping_ratio) < 0)
    np.testing.assert_allclose(
        s.damping_ratio, plant.D / (2 * np.sqrt(plant.J * s.N_tau)))


def test_schedule_large_amplitude_limit(plant):
    s = export_schedule(plant, [1e4])
    expected = math.sqrt(358.4 / 0.005) / (2 * math.pi)
    assert expected == pytest.approx(42.6, abs=0.05)
    assert s.natural_freq_Hz[0] == pytest.approx(expected, rel=1e-6)


def test_schedule_csv(plant):
    buf = io.StringIO()
    export_schedule(plant, [0.1, 0.2]).write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == 'A_rad,N_tau_Nm_per_rad,natural_freq_Hz,damping_ratio'
    assert len(lines) == 3


def test_bode_grid_shape(plant):
    mag = bode_grid(plant, [0.1, 0.2, 0.3], np.linspace(0, 100, 11))
    assert mag.shape == (3, 11)
    np.testing.assert_array_equal(mag[:, 0], 1.0)
