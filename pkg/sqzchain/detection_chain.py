"""
All-optical detection through a second, amplifying OPA.

The measured levels are R'± = I±/I0 = R∓/(1 + G²) + G² R±/(1 + G²) with G the
power gain as quoted for the amplifier (20 dB is G = 100).
"""

import math
from typing import TypeVar

import numpy as np

from sqzchain.core.config import settings
from sqzchain.core.errors import DomainError
from sqzchain.models import (
    ChainConfig,
    LossBudget,
    LossElement,
    MeasuredLevels,
    NoiseLevels,
)
from sqzchain.noise_algebra import from_decibels, remove_loss, to_decibels
from sqzchain.opa_model import loss_with_pump, opa_output

Level = TypeVar("Level", float, np.ndarray)


def capped_gain(g_power: float) -> float:
    if math.isnan(g_power) or g_power < 1:
        raise DomainError(f"detection power gain must be >= 1, got {g_power}")
    return min(g_power, settings.GAIN_CAP)


def antisqueeze_suppression(g_power: float) -> float:
    if math.isnan(g_power) or g_power < 0:
        raise DomainError(f"gain must be nonnegative, got {g_power}")
    g_power = min(g_power, settings.GAIN_CAP)
    return 1.0 / (1.0 + g_power**2)


def mix_quadratures(
    detected: Level, conjugate: Level, g_power: float
) -> tuple[Level, Level]:
    """
    Finite-gain readout of the amplified quadrature and its conjugate.

    Written as a shift from each branch toward the other so that equal inputs
    come out unchanged and the sum of the pair is preserved.
    """
    leak = antisqueeze_suppression(g_power)
    spread = conjugate - detected
    return detected + leak * spread, conjugate - leak * spread


def measured_levels(levels: NoiseLevels, g_power: float) -> MeasuredLevels:
    rp_minus, rp_plus = mix_quadratures(
        levels.r_minus, levels.r_plus, capped_gain(g_power)
    )
    return MeasuredLevels(rp_minus=rp_minus, rp_plus=rp_plus)


def chain_loss_at(chain: ChainConfig, pump_w: float) -> float:
    return loss_with_pump(
        chain.effective_chain_loss, chain.generator.pump_loss_per_watt, pump_w
    )


def chain_forward(chain: ChainConfig, pump_w: float) -> MeasuredLevels:
    generated = opa_output(
        chain.generator.shg_coeff_per_watt, pump_w, chain_loss_at(chain, pump_w)
    )
    return measured_levels(generated, chain.detection_power_gain)


def infer_onchip(measured_db: float, detection_loss: float) -> float:
    """Squeezing in dB right after the waveguide, with the detection loss removed."""
    linear = from_decibels(measured_db)
    levels = NoiseLevels(r_minus=linear, r_plus=linear)
    return to_decibels(remove_loss(levels, detection_loss).r_minus)


def per_side_loss(total_loss: float, waveguide_loss: float) -> float:
    if not 0.0 <= waveguide_loss <= total_loss < 1.0:
        raise DomainError(
            "need 0 <= waveguide_loss <= total_loss < 1, "
            f"got waveguide={waveguide_loss}, total={total_loss}"
        )
    return 1.0 - math.sqrt((1.0 - total_loss) / (1.0 - waveguide_loss))


def midpoint_chain_loss(
    generator_module_loss: float, detector_module_loss: float
) -> float:
    """
    Loss seen between the middle of one module and the middle of the next.

    Each module contributes half of its insertion loss (in dB), so two equal
    modules give the loss of one.
    """
    for rho in (generator_module_loss, detector_module_loss):
        if not 0.0 <= rho < 1.0:
            raise DomainError(f"module loss must lie in [0, 1), got {rho}")
    return 1.0 - math.sqrt((1.0 - generator_module_loss) * (1.0 - detector_module_loss))


def detection_budget(output_side: float, input_side: float) -> LossBudget:
    return LossBudget(
        elements=(
            LossElement(name="opa1_output_side", fraction=output_side),
            LossElement(name="opa2_input_side", fraction=input_side),
        )
    )


def pump_induced_excess(fitted_rho: float, passive_rho: float) -> float:
    """Extra loss a fit attributes to the pump beyond the passive module loss."""
    for rho in (fitted_rho, passive_rho):
        if not 0.0 <= rho < 1.0:
            raise DomainError(f"loss fraction must lie in [0, 1), got {rho}")
    return max(0.0, 1.0 - (1.0 - fitted_rho) / (1.0 - passive_rho))
