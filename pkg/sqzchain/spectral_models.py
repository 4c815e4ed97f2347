from dataclasses import dataclass

import numpy as np
from pydantic import Field, model_validator
from typing_extensions import Self

from sqzchain.models import FrozenModel


class SpectralGrid(FrozenModel):
    center_wavelength_nm: float = Field(gt=0, allow_inf_nan=False)
    wavelengths_nm: tuple[float, ...]

    @model_validator(mode="after")
    def _check_monotone(self) -> Self:
        values = np.asarray(self.wavelengths_nm, dtype=float)
        if values.size and not (np.all(np.isfinite(values)) and np.all(values > 0)):
            raise ValueError("wavelengths must be positive and finite")
        steps = np.diff(values)
        if steps.size and not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("wavelengths must be strictly monotone")
        return self

    @classmethod
    def linspace(
        cls, center_nm: float, start_nm: float, stop_nm: float, points: int
    ) -> "SpectralGrid":
        return cls(
            center_wavelength_nm=center_nm,
            wavelengths_nm=tuple(np.linspace(start_nm, stop_nm, points).tolist()),
        )


class FiberSegment(FrozenModel):
    length_m: float = Field(ge=0, allow_inf_nan=False)
    dispersion_ps_nm_km: float = Field(default=17.0, allow_inf_nan=False)
    reference_wavelength_nm: float = Field(default=1545.0, gt=0)
    static_phase_rad: float = Field(default=0.0, allow_inf_nan=False)


class PhaseMatchingEnvelope(FrozenModel):
    """Linearized mismatch dk = slope * (wavelength - center) over length L."""

    center_wavelength_nm: float = Field(gt=0)
    mismatch_slope_rad_per_m_per_nm: float = Field(default=0.0, allow_inf_nan=False)
    length_m: float = Field(default=0.045, gt=0)

    def delta_k(self, wavelength_nm: float | np.ndarray) -> float | np.ndarray:
        return self.mismatch_slope_rad_per_m_per_nm * (
            wavelength_nm - self.center_wavelength_nm
        )

    @classmethod
    def flat(cls, center_wavelength_nm: float) -> "PhaseMatchingEnvelope":
        return cls(center_wavelength_nm=center_wavelength_nm)


class DetectorRolloff(FrozenModel):
    peak_gain_db: float = Field(ge=0, allow_inf_nan=False)
    envelope: PhaseMatchingEnvelope


@dataclass(frozen=True)
class SpectrumRow:
    wavelength_nm: float
    sideband_thz: float
    # amplified vacuum relative to its value at the center wavelength
    vacuum_level: float
    # measured levels relative to the local amplified vacuum
    squeezed_level: float
    antisqueezed_level: float
