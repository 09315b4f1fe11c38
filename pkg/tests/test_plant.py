"""Tests for the FOPDT plant and sensor scaling."""

import math

import numpy as np
import pytest

from servo_pidnn.core.errors import ConfigError, SimulationError
from servo_pidnn.plant import (
    FopdtModel,
    SensorGain,
    plant_init,
    plant_reset,
    plant_step,
    rpm_to_volts,
    simulate_open_loop,
    step_response,
    volts_to_rpm,
)


H = 0.0005


class TestFopdtModel:
    """Tests for plant parameter validation."""

    def test_defaults_are_identified_servo(self) -> None:
        """Test that defaults are the identified speed channel."""
        model = FopdtModel()

        assert model.gain_Ks == 0.946
        assert model.time_constant_T == 0.4425
        assert model.dead_time_L == 0.0325

    @pytest.mark.parametrize(
        "kwargs, field",
        [
            ({"gain_Ks": 0.0}, "gain_Ks"),
            ({"time_constant_T": 0.0}, "time_constant_T"),
            ({"dead_time_L": -0.01}, "dead_time_L"),
            ({"gain_Ks": math.nan}, "gain_Ks"),
        ],
    )
    def test_invalid_parameters_are_named(self, kwargs: dict, field: str) -> None:
        """Test that an invalid parameter raises ConfigError naming it."""
        with pytest.raises(ConfigError, match=field):
            FopdtModel(**kwargs)


class TestPlantInit:
    """Tests for plant_init and the delay line."""

    def test_delay_line_length(self) -> None:
        """Test that 0.0325 s at 0.5 ms gives 65 sub-steps."""
        state = plant_init(FopdtModel(), H)

        assert state.delay_steps == 65
        assert list(state.delay_buffer) == [0.0] * 65
        assert state.lag_output == 0.0

    def test_zero_dead_time_has_no_delay(self) -> None:
        """Test that L = 0 gives an empty delay line."""
        state = plant_init(FopdtModel(1.0, 1.0, 0.0), 0.001)

        assert state.delay_steps == 0

    def test_non_divisible_dead_time_rejected(self) -> None:
        """Test that L not divisible by h is rejected with a suggestion."""
        with pytest.raises(ConfigError, match="nearest valid sub_step_h"):
            plant_init(FopdtModel(), 0.01)

    def test_non_positive_sub_step_rejected(self) -> None:
        """Test that h <= 0 is rejected."""
        with pytest.raises(ConfigError, match="sub_step_h must be > 0"):
            plant_init(FopdtModel(), 0.0)


class TestPlantStep:
    """Tests for plant_step and open-loop simulation."""

    def test_zero_input_stays_at_rest(self) -> None:
        """Test that u = 0 from rest gives y = 0 forever."""
        outputs = simulate_open_loop(FopdtModel(), np.zeros(2000), H)

        assert np.all(outputs == 0.0)

    def test_matches_closed_form_step_response(self) -> None:
        """Test the simulated unit step against Ks (1 - e^{-(t-L)/T})."""
        model = FopdtModel()
        n = round(5.0 / H)
        outputs = simulate_open_loop(model, np.ones(n), H)
        t = (np.arange(n) + 1) * H

        assert np.max(np.abs(outputs - step_response(model, t))) < 1e-6

    def test_value_one_time_constant_after_dead_time(self) -> None:
        """Test y(L + T) = Ks (1 - e^{-1})."""
        model = FopdtModel()
        n = round((model.dead_time_L + model.time_constant_T) / H)
        outputs = simulate_open_loop(model, np.ones(n), H)

        assert outputs[-1] == pytest.approx(0.946 * (1 - math.exp(-1)), abs=1e-9)
        assert outputs[-1] == pytest.approx(0.5980, abs=1e-4)

    def test_final_value_is_plant_gain(self) -> None:
        """Test that a unit step settles at Ks."""
        outputs = simulate_open_loop(FopdtModel(), np.ones(round(10.0 / H)), H)

        assert outputs[-1] == pytest.approx(0.946, abs=1e-6)

    def test_output_is_causal(self) -> None:
        """Test that nothing reaches the output before the dead time."""
        outputs = simulate_open_loop(FopdtModel(), np.ones(200), H)

        assert np.all(outputs[:65] == 0.0)
        assert outputs[65] > 0.0

    def test_linearity_and_superposition(self) -> None:
        """Test that the response is linear in u and additive in u and d."""
        model = FopdtModel()
        rng = np.random.default_rng(7)
        u1 = rng.uniform(-5, 5, 3000)
        u2 = rng.uniform(-5, 5, 3000)

        y1 = simulate_open_loop(model, u1, H)
        y2 = simulate_open_loop(model, u2, H)
        y_sum = simulate_open_loop(model, 2.0 * u1 + u2, H)
        y_split = simulate_open_loop(model, u1, H, disturbances=u2)

        np.testing.assert_allclose(y_sum, 2.0 * y1 + y2, atol=1e-9)
        np.testing.assert_allclose(y_split, y1 + y2, atol=1e-9)

    def test_non_finite_input_rejected(self) -> None:
        """Test that NaN input raises SimulationError."""
        model = FopdtModel()
        state = plant_init(model, H)

        with pytest.raises(SimulationError, match="Non-finite"):
            plant_step(state, model, math.nan)

    def test_reset_returns_to_rest(self) -> None:
        """Test that plant_reset restores the initial state."""
        model = FopdtModel()
        state = plant_init(model, H)
        for _ in range(100):
            plant_step(state, model, 3.0)

        plant_reset(state)

        assert state.lag_output == 0.0
        assert list(state.delay_buffer) == [0.0] * 65
        assert plant_step(state, model, 1.0) == 0.0


class TestSensorGain:
    """Tests for RPM/volt conversion."""

    def test_one_volt_is_200_rpm(self) -> None:
        """Test the sensor scaling in both directions."""
        gain = SensorGain()

        assert volts_to_rpm(1.0, gain) == 200.0
        assert volts_to_rpm(0.0, gain) == 0.0
        assert rpm_to_volts(200.0, gain) == 1.0
        assert volts_to_rpm(rpm_to_volts(200.0, gain), gain) == 200.0

    def test_non_positive_gain_rejected(self) -> None:
        """Test that a non-positive gain raises ConfigError."""
        with pytest.raises(ConfigError, match="rpm_per_volt"):
            SensorGain(rpm_per_volt=0.0)
