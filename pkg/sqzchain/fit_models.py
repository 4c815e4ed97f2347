from pydantic import Field

from sqzchain.models import FrozenModel


# One point of a pump-power sweep, levels as measured after detection
class SweepObservation(FrozenModel):
    pump_w: float = Field(ge=0, allow_inf_nan=False)
    measured_minus_db: float = Field(allow_inf_nan=False)
    measured_plus_db: float = Field(allow_inf_nan=False)
    weight: float = Field(default=1.0, ge=0, allow_inf_nan=False)


class FitResult(FrozenModel):
    a_per_watt: float = Field(ge=0)
    rho: float = Field(ge=0, lt=1)
    residual_rms_db: float = Field(ge=0)
    iterations: int = Field(ge=0)
    converged: bool
    # one-sigma (a, rho) from the Jacobian at the optimum
    parameter_stderr: tuple[float, float]

    @property
    def a_pct_per_watt(self) -> float:
        return self.a_per_watt * 100.0
