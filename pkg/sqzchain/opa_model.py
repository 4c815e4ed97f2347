"""
Forward model of the squeezing OPA.

R± = rho + (1 - rho) exp(±2 sqrt(a P)) with a undepleted classical pump.
The SHG coefficient ``a`` is taken in 1/W (823 %/W is 8.23 1/W).
"""

import math
from collections.abc import Iterable

from sqzchain.core.errors import DomainError
from sqzchain.models import NoiseLevels, OpaParams
from sqzchain.noise_algebra import apply_loss

# largest loss a pump-dependent term may push a channel to
MAX_LOSS = 1.0 - 1e-12
# exp(2 squeeze) stays a finite double up to here
MAX_SQUEEZE = 354.0


def squeeze_parameter(a: float, pump_w: float) -> float:
    if a < 0 or pump_w < 0 or not (math.isfinite(a) and math.isfinite(pump_w)):
        raise DomainError(
            f"SHG coefficient and pump power must be nonnegative, got a={a}, P={pump_w}"
        )
    return math.sqrt(a * pump_w)


def squeezer_output(squeeze: float, rho: float) -> NoiseLevels:
    """Lossless squeezer of parameter ``squeeze`` followed by a loss ``rho``."""
    if not 0.0 <= squeeze <= MAX_SQUEEZE:
        raise DomainError(
            f"squeeze parameter must lie in [0, {MAX_SQUEEZE:g}], got {squeeze}"
        )
    lossless = NoiseLevels(
        r_minus=math.exp(-2.0 * squeeze), r_plus=math.exp(2.0 * squeeze)
    )
    return apply_loss(lossless, rho)


def opa_output(a: float, pump_w: float, rho: float) -> NoiseLevels:
    return squeezer_output(squeeze_parameter(a, pump_w), rho)


def loss_with_pump(base_rho: float, pump_loss_per_watt: float, pump_w: float) -> float:
    return min(base_rho + pump_loss_per_watt * pump_w, MAX_LOSS)


def loss_at(params: OpaParams, pump_w: float) -> float:
    return loss_with_pump(params.effective_loss, params.pump_loss_per_watt, pump_w)


def opa_output_for(params: OpaParams, pump_w: float) -> NoiseLevels:
    return opa_output(params.shg_coeff_per_watt, pump_w, loss_at(params, pump_w))


def shg_coeff_from_normalized(a_norm: float, length_cm: float) -> float:
    """Total SHG efficiency in %/W from a normalized one in %/(W cm^2)."""
    if a_norm < 0 or length_cm <= 0:
        raise DomainError(
            f"need a_norm >= 0 and length_cm > 0, got {a_norm}, {length_cm}"
        )
    return a_norm * length_cm**2


def optimal_pump(a: float, g_power: float, rho: float = 0.0) -> float:
    """
    Pump power that minimizes the measured squeezed level.

    Composing the OPA output with finite-gain detection gives a measured level
    whose derivative in sqrt(aP) vanishes where exp(4 sqrt(aP)) = g_power^2, so
    P* = (ln g_power)^2 / (4a). The loss only lifts the floor.
    """
    if not a > 0:
        raise DomainError(f"SHG coefficient must be positive, got {a}")
    if g_power < 1:
        raise DomainError(f"detection power gain must be >= 1, got {g_power}")
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"loss fraction must lie in [0, 1), got {rho}")
    return math.log(g_power) ** 2 / (4.0 * a)


def pump_sweep(
    params: OpaParams, pumps: Iterable[float]
) -> list[tuple[float, NoiseLevels]]:
    pumps = list(pumps)
    negative = [pump for pump in pumps if pump < 0]
    if negative:
        raise DomainError(f"pump powers must be nonnegative, got {negative[0]}")
    return [(pump, opa_output_for(params, pump)) for pump in pumps]
