import math

import numpy as np
import pytest

from sqzchain.core.config import settings
from sqzchain.core.errors import DomainError, NonphysicalInversionError
from sqzchain.detection_chain import (
    antisqueeze_suppression,
    capped_gain,
    chain_forward,
    detection_budget,
    infer_onchip,
    measured_levels,
    midpoint_chain_loss,
    mix_quadratures,
    per_side_loss,
    pump_induced_excess,
)
from sqzchain.models import ChainConfig, NoiseLevels, OpaParams
from sqzchain.noise_algebra import compose_losses
from tests.utils.utils import random_chain, random_levels


class TestSuppression:
    def test_reference_values(self) -> None:
        assert antisqueeze_suppression(100.0) == 1.0 / 10001.0
        assert antisqueeze_suppression(1.0) == 0.5
        assert antisqueeze_suppression(0.0) == 1.0

    def test_rejects_negative_gain(self) -> None:
        with pytest.raises(DomainError):
            antisqueeze_suppression(-1.0)

    def test_infinite_gain_is_capped(self) -> None:
        assert capped_gain(math.inf) == settings.GAIN_CAP
        assert antisqueeze_suppression(math.inf) > 0.0

    @pytest.mark.parametrize("gain", [0.5, -3.0, math.nan])
    def test_detection_gain_below_unity(self, gain: float) -> None:
        with pytest.raises(DomainError):
            capped_gain(gain)


class TestMeasuredLevels:
    def test_reference_point(self) -> None:
        out = measured_levels(NoiseLevels(r_minus=0.2179, r_plus=79.21), 100.0)
        assert out.rp_minus == pytest.approx(0.225798, abs=1e-6)
        assert out.rp_plus == pytest.approx(79.2021, abs=1e-4)

    def test_unity_gain_averages(self) -> None:
        out = measured_levels(NoiseLevels(r_minus=0.25, r_plus=4.0), 1.0)
        assert out.rp_minus == pytest.approx(2.125)
        assert out.rp_plus == pytest.approx(2.125)

    def test_infinite_gain_reads_true_levels(self) -> None:
        levels = NoiseLevels(r_minus=0.2179, r_plus=79.21)
        out = measured_levels(levels, math.inf)
        assert out.rp_minus == pytest.approx(levels.r_minus, rel=1e-10)
        assert out.rp_plus == pytest.approx(levels.r_plus, rel=1e-10)

    def test_vacuum_is_fixed(self) -> None:
        for gain in (1.0, 100.0, 1e6):
            out = measured_levels(NoiseLevels.vacuum(), gain)
            assert out.rp_minus == 1.0
            assert out.rp_plus == 1.0

    def test_never_better_than_true_levels(self, rng: np.random.Generator) -> None:
        for _ in range(500):
            levels = random_levels(rng)
            out = measured_levels(levels, float(10.0 ** rng.uniform(0.0, 4.0)))
            assert out.rp_minus >= levels.r_minus
            assert out.rp_plus <= levels.r_plus

    def test_more_gain_reads_deeper(self) -> None:
        levels = NoiseLevels(r_minus=0.2179, r_plus=79.21)
        readings = [measured_levels(levels, gain).rp_minus for gain in (1, 10, 100, 1000)]
        assert readings == sorted(readings, reverse=True)

    def test_mix_quadratures_vectorized(self) -> None:
        detected = np.array([0.2, 1.0])
        conjugate = np.array([5.0, 1.0])
        low, high = mix_quadratures(detected, conjugate, 10.0)
        assert low[1] == 1.0
        assert high[1] == 1.0
        np.testing.assert_allclose(low + high, detected + conjugate, rtol=1e-14)


class TestChainForward:
    def test_unpumped_is_vacuum(self, rng: np.random.Generator) -> None:
        for _ in range(200):
            out = chain_forward(random_chain(rng), 0.0)
            assert out.rp_minus == 1.0
            assert out.rp_plus == 1.0

    def test_loss_free_infinite_gain(self) -> None:
        chain = ChainConfig(
            generator=OpaParams(shg_coeff_per_watt=2.0),
            detection_power_gain=settings.GAIN_CAP,
            effective_chain_loss=0.0,
        )
        out = chain_forward(chain, 0.5)
        assert out.rp_minus == pytest.approx(math.exp(-2.0), rel=1e-9)

    def test_reference_trace(self, ref_chain: ChainConfig) -> None:
        out = chain_forward(ref_chain, 0.6442)
        assert out.minus_db == pytest.approx(-6.4627, abs=2e-3)


class TestInferOnchip:
    @pytest.mark.parametrize(
        ("measured_db", "expected_db"), [(-6.4, -10.31), (-6.3, -10.03)]
    )
    def test_reference_values(self, measured_db: float, expected_db: float) -> None:
        assert infer_onchip(measured_db, 0.15) == pytest.approx(expected_db, abs=0.02)

    def test_without_loss_is_identity(self) -> None:
        assert infer_onchip(-4.0, 0.0) == pytest.approx(-4.0, abs=1e-12)

    def test_below_floor_is_nonphysical(self) -> None:
        with pytest.raises(NonphysicalInversionError):
            infer_onchip(-10.0, 0.15)


class TestLossBookkeeping:
    def test_per_side_loss(self) -> None:
        side = per_side_loss(0.21, 0.07)
        assert 0.075 <= side <= 0.082
        assert side == pytest.approx(0.0783, abs=1e-4)
        assert per_side_loss(0.1536, 0.0) == pytest.approx(0.08, rel=1e-12)
        assert per_side_loss(0.3, 0.3) == pytest.approx(0.0, abs=1e-15)

    def test_per_side_recomposes(self) -> None:
        side = per_side_loss(0.21, 0.07)
        total = 1.0 - (1.0 - side) ** 2 * (1.0 - 0.07)
        assert total == pytest.approx(0.21, rel=1e-12)

    def test_per_side_rejects_inverted_budget(self) -> None:
        with pytest.raises(DomainError):
            per_side_loss(0.05, 0.07)
        with pytest.raises(DomainError):
            per_side_loss(1.0, 0.07)

    def test_midpoint_loss(self) -> None:
        assert midpoint_chain_loss(0.21, 0.21) == pytest.approx(0.21, rel=1e-12)
        assert midpoint_chain_loss(0.0, 0.36) == pytest.approx(0.2, rel=1e-12)

    def test_detection_budget(self) -> None:
        budget = detection_budget(0.08, 0.08)
        assert [element.name for element in budget.elements] == [
            "opa1_output_side",
            "opa2_input_side",
        ]
        assert compose_losses(budget) == pytest.approx(0.1536, abs=1e-15)

    def test_pump_induced_excess(self) -> None:
        assert pump_induced_excess(0.21, 0.21) == 0.0
        assert pump_induced_excess(0.15, 0.21) == 0.0
        assert pump_induced_excess(0.25, 0.21) == pytest.approx(0.0506, abs=1e-4)
