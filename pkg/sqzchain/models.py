import math
from collections.abc import Sequence
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from sqzchain.core.errors import DomainError


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


def _sorted_pair(data: Any, low: str, high: str) -> Any:
    if isinstance(data, dict) and low in data and high in data:
        first, second = data[low], data[high]
        try:
            if first > second:
                return {**data, low: second, high: first}
        except TypeError:
            # left for field validation to report
            pass
    return data


# Quadrature noise variances relative to vacuum (vacuum = 1)
class NoiseLevels(FrozenModel):
    r_minus: float = Field(gt=0, allow_inf_nan=False)
    r_plus: float = Field(gt=0, allow_inf_nan=False)

    @model_validator(mode="before")
    @classmethod
    def _order_branches(cls, data: Any) -> Any:
        return _sorted_pair(data, "r_minus", "r_plus")

    @classmethod
    def vacuum(cls) -> "NoiseLevels":
        return cls(r_minus=1.0, r_plus=1.0)

    @property
    def product(self) -> float:
        return self.r_minus * self.r_plus

    @property
    def minus_db(self) -> float:
        return 10.0 * math.log10(self.r_minus)

    @property
    def plus_db(self) -> float:
        return 10.0 * math.log10(self.r_plus)


class LossElement(FrozenModel):
    name: str = Field(default="loss", max_length=64)
    fraction: float = Field(ge=0, lt=1)


# Serial loss stages, first element nearest the source
class LossBudget(FrozenModel):
    elements: tuple[LossElement, ...] = ()

    @classmethod
    def from_fractions(
        cls, fractions: Sequence[float], names: Sequence[str] | None = None
    ) -> "LossBudget":
        if names is None:
            names = [f"stage_{index}" for index in range(len(fractions))]
        if len(names) != len(fractions):
            raise DomainError(
                f"got {len(names)} names for {len(fractions)} loss fractions"
            )
        return cls(
            elements=tuple(
                LossElement(name=name, fraction=fraction)
                for name, fraction in zip(names, fractions, strict=True)
            )
        )

    @property
    def fractions(self) -> list[float]:
        return [element.fraction for element in self.elements]


class OpaParams(FrozenModel):
    """Generation OPA: SHG coefficient, lumped loss and geometry."""

    shg_coeff_per_watt: float = Field(ge=0, allow_inf_nan=False)
    effective_loss: float = Field(default=0.0, ge=0, lt=1)
    length_cm: float = Field(default=4.5, gt=0)
    center_wavelength_nm: float = Field(default=1545.3, gt=0)
    # wavelength offset at which the phase-matching envelope falls to 1/2;
    # None means a flat envelope
    pm_halfwidth_nm: float | None = Field(default=None, gt=0)
    # additive pump-induced loss, zero for a durable waveguide
    pump_loss_per_watt: float = Field(default=0.0, ge=0)

    @property
    def shg_coeff_pct_per_watt(self) -> float:
        return self.shg_coeff_per_watt * 100.0


class ChainConfig(FrozenModel):
    generator: OpaParams
    detection_power_gain: float = Field(ge=1)
    # lumped between the middle of the generating OPA and the middle of the
    # detecting OPA
    effective_chain_loss: float = Field(ge=0, lt=1)
    detection_budget: LossBudget = LossBudget()


# Detected intensity ratios I-/I0 and I+/I0
class MeasuredLevels(FrozenModel):
    rp_minus: float = Field(gt=0, allow_inf_nan=False)
    rp_plus: float = Field(gt=0, allow_inf_nan=False)

    @model_validator(mode="before")
    @classmethod
    def _order_branches(cls, data: Any) -> Any:
        return _sorted_pair(data, "rp_minus", "rp_plus")

    @property
    def minus_db(self) -> float:
        return 10.0 * math.log10(self.rp_minus)

    @property
    def plus_db(self) -> float:
        return 10.0 * math.log10(self.rp_plus)


class TransverseMode(FrozenModel):
    # 0 is the fundamental, 1 the first antisymmetric mode
    order: int = Field(ge=0)
    width: float = Field(default=1.0, gt=0, allow_inf_nan=False)
