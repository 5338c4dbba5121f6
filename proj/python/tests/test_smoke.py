import math

import numpy as np
import pytest

import srotto


def test_thermal_occupancy():
    rho = srotto.thermal_field(0.5)
    assert rho.shape == (41, 41)
    n = float(np.real(np.trace(np.diag(np.arange(41)) @ rho)))
    assert n == pytest.approx(0.1565, abs=1e-3)
    assert srotto.effective_temperature(srotto.bose_occupation(0.8)) == pytest.approx(0.8)


def test_effective_temperature_undefined():
    with pytest.raises(srotto.SrottoError):
        srotto.effective_temperature(0.0)


def test_tcs_round_trip():
    rho = srotto.displaced_thermal_state(0.5, 0.6 + 0.2j)
    fit = srotto.fit_thermal_coherent_state(rho)
    assert fit["alpha"] == pytest.approx(0.6 + 0.2j, abs=1e-6)
    assert fit["temperature"] == pytest.approx(0.5, rel=1e-6)
    assert fit["fidelity"] > 1 - 1e-8
    assert srotto.fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)


def test_scaling_fit():
    n = [2, 3, 4, 5, 6]
    fit = srotto.fit_quadratic_scaling(n, [0.5 + 0.1 * k * k for k in n], pin_offset=0.5)
    assert fit["xi"] == pytest.approx(0.1)
    assert fit["exponent"] == pytest.approx(2.0, abs=1e-4)
    with pytest.raises(srotto.SrottoError):
        srotto.fit_quadratic_scaling([2, 2, 2], [1.0, 1.0, 1.0])


def test_otto_and_cost():
    r = srotto.otto_quantities(0.5, [0.7, 0.3], [1.0, 0.0])
    assert (r["q_in"], r["q_out"], r["work"]) == pytest.approx((0.3, -0.15, 0.15))
    assert r["efficiency"] == pytest.approx(0.5)
    assert srotto.micromaser_intensity(1 / 6, 0.19, 1.0, 0.5, 0.03) == pytest.approx(0.100, abs=1e-3)
    assert srotto.pulse_energy() == pytest.approx(math.pi**2 / 3)
    rep = srotto.total_cost(3.0, 2, 250, 0.35)
    assert rep["total_in_hbar_omega"] == 1500.0
    assert rep["cost_to_work_ratio"] > 1e3
    assert srotto.total_cost(3.0, 2, 250)["cost_to_work_ratio"] is None


def test_short_ignition():
    c = srotto.ProtocolConfig()
    c.atoms = 2
    c.num_injections = 4
    c.n_max = 20
    out = srotto.run_ignition(c)
    assert len(out["t"]) == 4 * 10 + 1
    assert out["mean_n"][0] == pytest.approx(0.1565, abs=1e-3)
    assert out["mean_n"][-1] > out["mean_n"][0]
    assert out["steady_state"] is None
    assert out["final_field_state"].shape == (21, 21)


def test_config_validation():
    c = srotto.ProtocolConfig()
    c.num_injections = 0
    with pytest.raises(srotto.SrottoError):
        c.validate()
    with pytest.raises(srotto.SrottoError):
        c.dissipators = [("no_such_channel", 0.1)]
