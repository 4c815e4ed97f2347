"""
Wavelength-resolved squeezing spectra.

Off-center generation is weakened through the quasi-phase-matching envelope,
the fiber pigtails rotate the detected quadrature by a dispersion phase, and
the detecting OPA's gain rolls off away from the center. The spectra are a
qualitative model: ripple positions depend on pigtail lengths.
"""

import math
from collections.abc import Sequence
from functools import cache

import numpy as np
from scipy.constants import c
from scipy.optimize import brentq

from sqzchain.core.errors import DomainError
from sqzchain.core.logging import get_logger
from sqzchain.detection_chain import chain_loss_at, mix_quadratures
from sqzchain.models import ChainConfig
from sqzchain.noise_algebra import from_decibels, project_phase
from sqzchain.opa_model import squeeze_parameter, squeezer_output
from sqzchain.spectral_models import (
    DetectorRolloff,
    FiberSegment,
    PhaseMatchingEnvelope,
    SpectralGrid,
    SpectrumRow,
)

logger = get_logger(__name__)

# speed of light in nm/ps
C_NM_PER_PS = c * 1e-3
PS2_PER_KM_TO_S2_PER_M = 1e-27


def _check_wavelength(wavelength_nm: float) -> None:
    if not (math.isfinite(wavelength_nm) and wavelength_nm > 0):
        raise DomainError(f"wavelength must be positive, got {wavelength_nm}")


def optical_frequency_thz(wavelength_nm: float) -> float:
    _check_wavelength(wavelength_nm)
    return c * 1e-3 / wavelength_nm


def sideband_frequency(wavelength_nm: float, center_nm: float) -> float:
    """|c/wavelength - c/center| in THz."""
    return abs(optical_frequency_thz(wavelength_nm) - optical_frequency_thz(center_nm))


def qpm_envelope(
    delta_k_rad_per_m: float | np.ndarray, length_m: float
) -> float | np.ndarray:
    """sinc^2(dk L / 2), equal to 1 at perfect phase matching."""
    if not length_m > 0:
        raise DomainError(f"interaction length must be positive, got {length_m}")
    half_phase = np.asarray(delta_k_rad_per_m, dtype=float) * length_m / 2.0
    # numpy's sinc is sin(pi x) / (pi x)
    value = np.sinc(half_phase / np.pi) ** 2
    return float(value) if value.ndim == 0 else value


@cache
def envelope_halfwidth() -> float:
    """Half phase mismatch dk L / 2 at which sinc^2 falls to one half."""
    return float(brentq(lambda x: np.sinc(x / np.pi) ** 2 - 0.5, 0.5, 2.5, xtol=1e-14))


def envelope_from_halfwidth(
    center_wavelength_nm: float, halfwidth_nm: float, length_m: float
) -> PhaseMatchingEnvelope:
    if not (halfwidth_nm > 0 and length_m > 0):
        raise DomainError("halfwidth and length must be positive")
    slope = 2.0 * envelope_halfwidth() / (length_m * halfwidth_nm)
    return PhaseMatchingEnvelope(
        center_wavelength_nm=center_wavelength_nm,
        mismatch_slope_rad_per_m_per_nm=slope,
        length_m=length_m,
    )


def envelope_at(
    envelope: PhaseMatchingEnvelope, wavelength_nm: float | np.ndarray
) -> float | np.ndarray:
    return qpm_envelope(envelope.delta_k(wavelength_nm), envelope.length_m)


def beta2_from_D(D_ps_nm_km: float, wavelength_nm: float) -> float:
    """Group-velocity dispersion in ps^2/km from D in ps/(nm km)."""
    _check_wavelength(wavelength_nm)
    return -D_ps_nm_km * wavelength_nm**2 / (2.0 * np.pi * C_NM_PER_PS)


def fiber_phase(
    sideband_rad_per_s: float | np.ndarray, segment: FiberSegment
) -> float | np.ndarray:
    beta2 = (
        beta2_from_D(segment.dispersion_ps_nm_km, segment.reference_wavelength_nm)
        * PS2_PER_KM_TO_S2_PER_M
    )
    return (
        segment.static_phase_rad
        + 0.5 * beta2 * np.square(sideband_rad_per_s) * segment.length_m
    )


def _angular_sideband(grid: SpectralGrid) -> np.ndarray:
    wavelengths = np.asarray(grid.wavelengths_nm, dtype=float)
    center_thz = optical_frequency_thz(grid.center_wavelength_nm)
    return 2.0 * np.pi * np.abs(c * 1e-3 / wavelengths - center_thz) * 1e12


def dispersion_phase(grid: SpectralGrid, fibers: Sequence[FiberSegment]) -> np.ndarray:
    """Total quadrature rotation across the grid from every fiber segment."""
    omega = _angular_sideband(grid)
    phase = np.zeros_like(omega)
    for segment in fibers:
        phase = phase + fiber_phase(omega, segment)
    return phase


def quadrature_crossings(phases: Sequence[float] | np.ndarray) -> int:
    """Number of odd multiples of pi/2 passed by consecutive phases."""
    branch = np.floor((np.asarray(phases, dtype=float) - np.pi / 2.0) / np.pi)
    return int(np.sum(np.abs(np.diff(branch))))


def rolloff_gain(rolloff: DetectorRolloff, wavelength_nm: float) -> float:
    # the amplifier never attenuates; unity gain is the floor
    peak = from_decibels(rolloff.peak_gain_db)
    return max(1.0, peak * float(envelope_at(rolloff.envelope, wavelength_nm)))


def synthesize_spectrum(
    chain: ChainConfig,
    grid: SpectralGrid,
    gen_pm: PhaseMatchingEnvelope,
    fibers: Sequence[FiberSegment],
    rolloff: DetectorRolloff,
    pump_w: float,
) -> list[SpectrumRow]:
    """
    Measured squeezing and anti-squeezing across the grid, in grid order.

    The detection gain at every wavelength comes from ``rolloff``;
    ``chain.detection_power_gain`` is not consulted, so a roll-off peak that
    differs from it models a different amplifier. At the center wavelength with
    no fiber phase and a roll-off peak equal to the chain gain each row reduces
    to chain_forward.
    """
    center_squeeze = squeeze_parameter(chain.generator.shg_coeff_per_watt, pump_w)
    rho = chain_loss_at(chain, pump_w)
    phases = dispersion_phase(grid, fibers)
    peak_gain = from_decibels(rolloff.peak_gain_db)
    center_vacuum = 1.0 + peak_gain**2

    logger.info(
        {
            "event_type": "spectrum",
            "event_name": "synthesize_start",
            "points": len(grid.wavelengths_nm),
            "fibers": len(fibers),
            "pump_w": pump_w,
        }
    )

    rows = []
    for wavelength, theta in zip(grid.wavelengths_nm, phases.tolist(), strict=True):
        strength = float(envelope_at(gen_pm, wavelength))
        generated = squeezer_output(center_squeeze * math.sqrt(strength), rho)
        detected = project_phase(generated, theta)
        conjugate = project_phase(generated, theta + math.pi / 2.0)
        gain = rolloff_gain(rolloff, wavelength)
        squeezed, antisqueezed = mix_quadratures(detected, conjugate, gain)
        rows.append(
            SpectrumRow(
                wavelength_nm=wavelength,
                sideband_thz=sideband_frequency(wavelength, grid.center_wavelength_nm),
                vacuum_level=(1.0 + gain**2) / center_vacuum,
                squeezed_level=squeezed,
                antisqueezed_level=antisqueezed,
            )
        )
    return rows
