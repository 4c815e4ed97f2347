import math

import numpy as np
import pytest

from sqzchain.core.errors import DomainError, NonphysicalInversionError
from sqzchain.models import LossBudget, NoiseLevels
from sqzchain.noise_algebra import (
    apply_loss,
    compose_losses,
    from_decibels,
    loss_from_decibels,
    loss_per_cm_db,
    loss_to_decibels,
    project_phase,
    propagation_loss,
    remove_loss,
    to_decibels,
)
from tests.utils.utils import random_levels


class TestDecibels:
    def test_reference_values(self) -> None:
        assert to_decibels(1.0) == 0.0
        assert to_decibels(100.0) == pytest.approx(20.0)
        assert to_decibels(0.09305) == pytest.approx(-10.31, abs=0.005)
        assert from_decibels(-6.4) == pytest.approx(0.229087, rel=1e-5)

    @pytest.mark.parametrize("value", [0.0, -1.0, math.inf, math.nan])
    def test_to_decibels_rejects_nonpositive(self, value: float) -> None:
        with pytest.raises(DomainError):
            to_decibels(value)

    @pytest.mark.parametrize("value", [math.inf, -math.inf, math.nan])
    def test_from_decibels_rejects_nonfinite(self, value: float) -> None:
        with pytest.raises(DomainError):
            from_decibels(value)

    def test_from_decibels_overflow_is_a_domain_error(self) -> None:
        with pytest.raises(DomainError):
            from_decibels(4000.0)
        assert from_decibels(3000.0) == pytest.approx(1e300, rel=1e-12)

    def test_inverse_pair(self) -> None:
        for value in (1e-6, 0.2179, 1.0, 79.21, 1e6):
            assert from_decibels(to_decibels(value)) == pytest.approx(value, rel=1e-12)


class TestLossChannel:
    def test_vacuum_is_fixed(self) -> None:
        for rho in (0.0, 0.15, 0.5, 0.999):
            out = apply_loss(NoiseLevels.vacuum(), rho)
            assert out.r_minus == 1.0
            assert out.r_plus == 1.0

    def test_zero_loss_is_identity(self) -> None:
        levels = NoiseLevels(r_minus=0.2, r_plus=7.0)
        assert apply_loss(levels, 0.0) == levels

    def test_example_degradation(self) -> None:
        out = apply_loss(NoiseLevels(r_minus=0.09305, r_plus=10.0), 0.15)
        assert out.r_minus == pytest.approx(0.22909, abs=1e-5)
        assert out.r_plus == pytest.approx(8.65)

    def test_remove_undoes_apply(self) -> None:
        out = remove_loss(NoiseLevels(r_minus=0.22909, r_plus=5.0), 0.15)
        assert out.r_minus == pytest.approx(0.093047, rel=1e-4)

    def test_remove_at_floor_is_nonphysical(self) -> None:
        with pytest.raises(NonphysicalInversionError):
            remove_loss(NoiseLevels(r_minus=0.15, r_plus=2.0), 0.15)
        with pytest.raises(NonphysicalInversionError):
            remove_loss(NoiseLevels(r_minus=0.1, r_plus=2.0), 0.15)

    @pytest.mark.parametrize("rho", [-0.01, 1.0, 1.5, math.nan])
    def test_loss_out_of_range(self, rho: float) -> None:
        with pytest.raises(DomainError):
            apply_loss(NoiseLevels.vacuum(), rho)

    def test_loss_pulls_toward_vacuum(self, rng: np.random.Generator) -> None:
        for _ in range(200):
            levels = random_levels(rng)
            rho = float(rng.uniform(0.0, 0.99))
            out = apply_loss(levels, rho)
            assert abs(out.r_minus - 1.0) <= abs(levels.r_minus - 1.0) + 1e-15
            assert abs(out.r_plus - 1.0) <= abs(levels.r_plus - 1.0) + 1e-15


class TestComposeLosses:
    def test_empty_budget_is_lossless(self) -> None:
        assert compose_losses(LossBudget()) == 0.0

    def test_reference_budgets(self) -> None:
        assert compose_losses(
            LossBudget.from_fractions([0.06, 0.07, 0.06])
        ) == pytest.approx(0.17825, abs=1e-5)
        assert compose_losses(LossBudget.from_fractions([0.08, 0.08])) == pytest.approx(
            0.1536, abs=1e-15
        )

    def test_names_must_match_fractions(self) -> None:
        with pytest.raises(DomainError) as info:
            LossBudget.from_fractions([0.06, 0.07], names=["opa1_output_side"])
        assert info.value.code == "E_DOMAIN"
        named = LossBudget.from_fractions([0.06], names=["opa1_output_side"])
        assert named.elements[0].name == "opa1_output_side"

    def test_order_independent(self) -> None:
        forward = LossBudget.from_fractions([0.01, 0.3, 0.07, 0.2])
        backward = LossBudget.from_fractions([0.2, 0.07, 0.3, 0.01])
        assert compose_losses(forward) == compose_losses(backward)

    def test_matches_sequential_application(self) -> None:
        levels = NoiseLevels(r_minus=0.1, r_plus=12.0)
        fractions = [0.06, 0.07, 0.06]
        sequential = levels
        for rho in fractions:
            sequential = apply_loss(sequential, rho)
        lumped = apply_loss(levels, compose_losses(LossBudget.from_fractions(fractions)))
        assert lumped.r_minus == pytest.approx(sequential.r_minus, rel=1e-12)
        assert lumped.r_plus == pytest.approx(sequential.r_plus, rel=1e-12)


class TestProjectPhase:
    def test_endpoints(self) -> None:
        levels = NoiseLevels(r_minus=0.25, r_plus=4.0)
        assert project_phase(levels, 0.0) == 0.25
        assert project_phase(levels, math.pi / 2) == pytest.approx(4.0)
        assert project_phase(levels, math.pi / 4) == pytest.approx(2.125)

    def test_periodic_and_bounded(self) -> None:
        levels = NoiseLevels(r_minus=0.25, r_plus=4.0)
        for theta in np.linspace(-10.0, 10.0, 101):
            value = project_phase(levels, float(theta))
            assert 0.25 <= value <= 4.0
            assert value == pytest.approx(
                project_phase(levels, float(theta) + math.pi), rel=1e-9
            )

    def test_rejects_nonfinite_phase(self) -> None:
        with pytest.raises(DomainError):
            project_phase(NoiseLevels.vacuum(), math.nan)


class TestInsertionLoss:
    def test_decibel_conversions(self) -> None:
        assert loss_to_decibels(0.21) == pytest.approx(1.0237, abs=1e-4)
        assert loss_from_decibels(1.0) == pytest.approx(0.2057, abs=1e-4)
        assert loss_from_decibels(loss_to_decibels(0.37)) == pytest.approx(0.37)

    def test_propagation_loss(self) -> None:
        assert propagation_loss(0.3, 4.5) == pytest.approx(0.2672, abs=1e-4)
        assert propagation_loss(0.0, 4.5) == 0.0

    def test_loss_per_cm(self) -> None:
        assert loss_per_cm_db(0.07, 4.5) == pytest.approx(0.0700, abs=1e-4)

    def test_rejects_negative_decibels(self) -> None:
        with pytest.raises(DomainError):
            loss_from_decibels(-0.5)
        with pytest.raises(DomainError):
            loss_per_cm_db(0.1, 0.0)
