"""
Run configuration documents.

A config is TOML: ``key = value`` lines under ``[section]`` headers, ``#``
comments, and ``[a, b]`` lists. Losses are always fractions, gains are in dB,
wavelengths in nm, fiber lengths in m and dispersion in ps/(nm km).
"""

import re
import tomllib
from typing import Annotated

from pydantic import Field, ValidationError, computed_field, model_validator
from typing_extensions import Self

from sqzchain.core.errors import ConfigSyntaxError, OutOfRangeError, UnknownKeyError
from sqzchain.models import FrozenModel
from sqzchain.noise_algebra import from_decibels

Fraction = Annotated[float, Field(ge=0, lt=1)]
NonNegative = Annotated[float, Field(ge=0)]

_LINE_PATTERN = re.compile(r"line (\d+)")


class ChainSection(FrozenModel):
    shg_coeff_pct_per_w: float | None = Field(default=None, ge=0)
    shg_norm_pct_per_w_cm2: float | None = Field(default=None, ge=0)
    length_cm: float | None = Field(default=None, gt=0)
    rho: Fraction | None = None
    gain_db: float | None = Field(default=None, ge=0)
    center_wavelength_nm: float | None = Field(default=None, gt=0)
    pm_halfwidth_nm: float | None = Field(default=None, gt=0)
    pump_loss_per_watt: float | None = Field(default=None, ge=0)
    detection_losses: list[Fraction] | None = None

    @model_validator(mode="after")
    def _one_shg_source(self) -> Self:
        if self.shg_coeff_pct_per_w is not None and self.shg_norm_pct_per_w_cm2 is not None:
            raise ValueError(
                "give either shg_coeff_pct_per_w or shg_norm_pct_per_w_cm2, not both"
            )
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def detection_power_gain(self) -> float | None:
        return None if self.gain_db is None else from_decibels(self.gain_db)


class SweepSection(FrozenModel):
    pumps_w: list[NonNegative] | None = None
    noise_sigma_db: float | None = Field(default=None, ge=0)


class SpectrumSection(FrozenModel):
    wavelength_min_nm: float | None = Field(default=None, gt=0)
    wavelength_max_nm: float | None = Field(default=None, gt=0)
    points: int | None = Field(default=None, ge=2)
    pump_w: float | None = Field(default=None, ge=0)
    gen_mismatch_slope: float | None = None
    gen_length_m: float | None = Field(default=None, gt=0)
    det_mismatch_slope: float | None = None
    det_length_m: float | None = Field(default=None, gt=0)
    peak_gain_db: float | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _ordered_band(self) -> Self:
        if (
            self.wavelength_min_nm is not None
            and self.wavelength_max_nm is not None
            and self.wavelength_min_nm >= self.wavelength_max_nm
        ):
            raise ValueError("wavelength_min_nm must be below wavelength_max_nm")
        return self


class FibersSection(FrozenModel):
    lengths_m: list[NonNegative] | None = None
    dispersion_ps_nm_km: float | None = None
    reference_wavelength_nm: float | None = Field(default=None, gt=0)
    static_phase_rad: float | None = None


class BudgetSection(FrozenModel):
    losses: list[Fraction] | None = None
    names: list[str] | None = None
    total_loss: Fraction | None = None
    waveguide_loss: Fraction | None = None
    measured_db: float | None = None
    detection_loss: Fraction | None = None

    @model_validator(mode="after")
    def _names_match(self) -> Self:
        if self.names is not None and len(self.names) != len(self.losses or []):
            raise ValueError("budget names must match losses one to one")
        return self


class RunConfig(FrozenModel):
    chain: ChainSection = ChainSection()
    sweep: SweepSection = SweepSection()
    spectrum: SpectrumSection = SpectrumSection()
    fibers: FibersSection = FibersSection()
    budget: BudgetSection = BudgetSection()


def _syntax_line(error: tomllib.TOMLDecodeError) -> int | None:
    line = getattr(error, "lineno", None)
    if isinstance(line, int):
        return line
    match = _LINE_PATTERN.search(str(error))
    return int(match.group(1)) if match else None


def _location(loc: tuple[int | str, ...]) -> str:
    if not loc:
        return "config"
    section, *rest = loc
    key = ".".join(str(part) for part in rest)
    return f"[{section}] {key}".rstrip()


def parse_config(text: str) -> RunConfig:
    try:
        document = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigSyntaxError(str(e), line=_syntax_line(e))

    try:
        return RunConfig.model_validate(document)
    except ValidationError as e:
        errors = e.errors()
        unknown = [err for err in errors if err["type"] == "extra_forbidden"]
        if unknown:
            names = ", ".join(_location(err["loc"]) for err in unknown)
            raise UnknownKeyError(f"unknown key(s): {names}")
        first = errors[0]
        raise OutOfRangeError(f"{_location(first['loc'])}: {first['msg']}")
