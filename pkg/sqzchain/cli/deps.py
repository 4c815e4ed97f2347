from dataclasses import dataclass
from pathlib import Path
from typing import TypeVar

from sqzchain.cli.run_config import RunConfig
from sqzchain.core.config import settings
from sqzchain.core.errors import MissingKeyError
from sqzchain.models import ChainConfig, LossBudget, OpaParams
from sqzchain.noise_algebra import compose_losses, loss_to_decibels
from sqzchain.opa_model import shg_coeff_from_normalized
from sqzchain.spectral_model import envelope_from_halfwidth
from sqzchain.spectral_models import (
    DetectorRolloff,
    FiberSegment,
    PhaseMatchingEnvelope,
    SpectralGrid,
)
from sqzchain.utils.csv_io import Table

T = TypeVar("T")

DEFAULT_CENTER_NM = 1545.3
DEFAULT_LENGTH_CM = 4.5


def require(value: T | None, section: str, key: str) -> T:
    if value is None:
        raise MissingKeyError(f"missing required key [{section}] {key}")
    return value


def get_opa_params(config: RunConfig) -> OpaParams:
    chain = config.chain
    length_cm = chain.length_cm or DEFAULT_LENGTH_CM
    if chain.shg_norm_pct_per_w_cm2 is not None:
        pct_per_w = shg_coeff_from_normalized(chain.shg_norm_pct_per_w_cm2, length_cm)
    else:
        pct_per_w = require(chain.shg_coeff_pct_per_w, "chain", "shg_coeff_pct_per_w")
    return OpaParams(
        shg_coeff_per_watt=pct_per_w / 100.0,
        effective_loss=require(chain.rho, "chain", "rho"),
        length_cm=length_cm,
        center_wavelength_nm=chain.center_wavelength_nm or DEFAULT_CENTER_NM,
        pm_halfwidth_nm=chain.pm_halfwidth_nm,
        pump_loss_per_watt=chain.pump_loss_per_watt or 0.0,
    )


def get_chain(config: RunConfig) -> ChainConfig:
    generator = get_opa_params(config)
    return ChainConfig(
        generator=generator,
        detection_power_gain=require(
            config.chain.detection_power_gain, "chain", "gain_db"
        ),
        effective_chain_loss=generator.effective_loss,
        detection_budget=LossBudget.from_fractions(config.chain.detection_losses or []),
    )


def get_detection_loss(config: RunConfig) -> float:
    if config.budget.detection_loss is not None:
        return config.budget.detection_loss
    if config.chain.detection_losses is not None:
        return compose_losses(LossBudget.from_fractions(config.chain.detection_losses))
    raise MissingKeyError(
        "missing required key [budget] detection_loss (or [chain] detection_losses)"
    )


def get_grid(config: RunConfig) -> SpectralGrid:
    section = config.spectrum
    return SpectralGrid.linspace(
        config.chain.center_wavelength_nm or DEFAULT_CENTER_NM,
        require(section.wavelength_min_nm, "spectrum", "wavelength_min_nm"),
        require(section.wavelength_max_nm, "spectrum", "wavelength_max_nm"),
        require(section.points, "spectrum", "points"),
    )


def get_generation_envelope(config: RunConfig) -> PhaseMatchingEnvelope:
    center = config.chain.center_wavelength_nm or DEFAULT_CENTER_NM
    section = config.spectrum
    length_m = section.gen_length_m or (config.chain.length_cm or DEFAULT_LENGTH_CM) / 100.0
    if section.gen_mismatch_slope is None and config.chain.pm_halfwidth_nm is not None:
        return envelope_from_halfwidth(center, config.chain.pm_halfwidth_nm, length_m)
    return PhaseMatchingEnvelope(
        center_wavelength_nm=center,
        mismatch_slope_rad_per_m_per_nm=section.gen_mismatch_slope or 0.0,
        length_m=length_m,
    )


def get_rolloff(config: RunConfig) -> DetectorRolloff:
    section = config.spectrum
    peak_gain_db = section.peak_gain_db
    if peak_gain_db is None:
        peak_gain_db = require(config.chain.gain_db, "chain", "gain_db")
    return DetectorRolloff(
        peak_gain_db=peak_gain_db,
        envelope=PhaseMatchingEnvelope(
            center_wavelength_nm=config.chain.center_wavelength_nm or DEFAULT_CENTER_NM,
            mismatch_slope_rad_per_m_per_nm=section.det_mismatch_slope or 0.0,
            length_m=section.det_length_m
            or (config.chain.length_cm or DEFAULT_LENGTH_CM) / 100.0,
        ),
    )


def get_fibers(config: RunConfig) -> list[FiberSegment]:
    section = config.fibers
    dispersion = section.dispersion_ps_nm_km
    if dispersion is None:
        dispersion = settings.DEFAULT_FIBER_DISPERSION_PS_NM_KM
    return [
        FiberSegment(
            length_m=length,
            dispersion_ps_nm_km=dispersion,
            reference_wavelength_nm=section.reference_wavelength_nm
            or settings.DEFAULT_FIBER_REFERENCE_NM,
            # the static phase is a property of the whole chain, not each pigtail
            static_phase_rad=(section.static_phase_rad or 0.0) if index == 0 else 0.0,
        )
        for index, length in enumerate(section.lengths_m or [])
    ]


@dataclass(frozen=True)
class CommandContext:
    config: RunConfig
    data_path: Path | None = None
    seed: int = 0


@dataclass
class CommandOutput:
    summary: list[str]
    table: Table | None = None


def describe_loss(rho: float) -> str:
    return f"{rho * 100:.1f}% ({loss_to_decibels(rho):.2f} dB)"
