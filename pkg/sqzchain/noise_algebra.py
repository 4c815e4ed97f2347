"""
Quadrature noise algebra relative to vacuum.

Levels are kept as linear variance ratios; decibels are only an input/output
view. A loss channel of fraction rho maps each variance r to rho + (1 - rho) r.
"""

import math

import numpy as np

from sqzchain.core.errors import DomainError, NonphysicalInversionError
from sqzchain.models import LossBudget, NoiseLevels


def _check_loss(rho: float) -> None:
    if not (math.isfinite(rho) and 0.0 <= rho < 1.0):
        raise DomainError(f"loss fraction must lie in [0, 1), got {rho}")


def to_decibels(r: float) -> float:
    if not math.isfinite(r) or r <= 0:
        raise DomainError(f"variance ratio must be positive and finite, got {r}")
    return 10.0 * math.log10(r)


def from_decibels(x: float) -> float:
    if not math.isfinite(x):
        raise DomainError(f"decibel value must be finite, got {x}")
    try:
        return float(10.0 ** (x / 10.0))
    except OverflowError as e:
        raise DomainError(f"{x} dB overflows a linear level") from e


def apply_loss(levels: NoiseLevels, rho: float) -> NoiseLevels:
    _check_loss(rho)
    return NoiseLevels(
        # r + rho (1 - r) keeps vacuum exactly at 1
        r_minus=levels.r_minus + rho * (1.0 - levels.r_minus),
        r_plus=levels.r_plus + rho * (1.0 - levels.r_plus),
    )


def remove_loss(levels: NoiseLevels, rho: float) -> NoiseLevels:
    """Undo a loss channel, recovering the levels before the loss."""
    _check_loss(rho)
    for value in (levels.r_minus, levels.r_plus):
        if value <= rho:
            raise NonphysicalInversionError(
                f"level {value} is at or below the vacuum floor {rho} of the loss"
            )
    return NoiseLevels(
        r_minus=(levels.r_minus - rho) / (1.0 - rho),
        r_plus=(levels.r_plus - rho) / (1.0 - rho),
    )


def compose_losses(budget: LossBudget) -> float:
    transmissions = np.fromiter(
        (1.0 - element.fraction for element in budget.elements), dtype=float
    )
    # sorting makes the product independent of element order bit for bit
    return float(1.0 - np.prod(np.sort(transmissions)))


def project_phase(levels: NoiseLevels, theta: float) -> float:
    if not math.isfinite(theta):
        raise DomainError(f"phase must be finite, got {theta}")
    cos2 = math.cos(theta) ** 2
    value = levels.r_minus * cos2 + levels.r_plus * (1.0 - cos2)
    return min(max(value, levels.r_minus), levels.r_plus)


def loss_to_decibels(rho: float) -> float:
    _check_loss(rho)
    return -10.0 * math.log10(1.0 - rho)


def loss_from_decibels(db: float) -> float:
    if not math.isfinite(db) or db < 0:
        raise DomainError(f"insertion loss in dB must be nonnegative, got {db}")
    return float(1.0 - 10.0 ** (-db / 10.0))


def propagation_loss(db_per_cm: float, length_cm: float) -> float:
    if db_per_cm < 0 or length_cm <= 0:
        raise DomainError("propagation loss needs db_per_cm >= 0 and length_cm > 0")
    return loss_from_decibels(db_per_cm * length_cm)


def loss_per_cm_db(rho: float, length_cm: float) -> float:
    if length_cm <= 0:
        raise DomainError(f"length must be positive, got {length_cm}")
    return loss_to_decibels(rho) / length_cm
