"""
Broadband measured spectrum with dispersion ripples and gain roll-off.
"""

from sqzchain.cli.deps import (
    CommandContext,
    CommandOutput,
    get_chain,
    get_fibers,
    get_generation_envelope,
    get_grid,
    get_rolloff,
    require,
)
from sqzchain.noise_algebra import to_decibels
from sqzchain.spectral_model import (
    dispersion_phase,
    quadrature_crossings,
    synthesize_spectrum,
)
from sqzchain.utils.csv_io import Table

HEADERS = [
    "wavelength_nm",
    "sideband_thz",
    "vacuum_db",
    "squeezed_db",
    "antisqueezed_db",
]
QUALITATIVE_NOTE = (
    "qualitative model: ripple positions depend on unpublished pigtail lengths"
)


def run(context: CommandContext) -> CommandOutput:
    config = context.config
    chain = get_chain(config)
    grid = get_grid(config)
    fibers = get_fibers(config)
    pump_w = require(config.spectrum.pump_w, "spectrum", "pump_w")
    rolloff = get_rolloff(config)
    rows = synthesize_spectrum(
        chain, grid, get_generation_envelope(config), fibers, rolloff, pump_w
    )

    table = Table(headers=HEADERS, comments=[QUALITATIVE_NOTE])
    for row in rows:
        table.rows.append(
            [
                row.wavelength_nm,
                row.sideband_thz,
                to_decibels(row.vacuum_level),
                to_decibels(row.squeezed_level),
                to_decibels(row.antisqueezed_level),
            ]
        )

    worst = max(rows, key=lambda row: row.squeezed_level)
    summary = [
        QUALITATIVE_NOTE,
        f"band: {grid.wavelengths_nm[0]:g}-{grid.wavelengths_nm[-1]:g} nm, {len(rows)} points",
        f"fiber segments: {len(fibers)}, quadrature crossings: "
        f"{quadrature_crossings(dispersion_phase(grid, fibers))}",
        f"worst squeezed level: {to_decibels(worst.squeezed_level):.2f} dB "
        f"at {worst.wavelength_nm:.2f} nm",
        f"detection peak gain: {rolloff.peak_gain_db:.2f} dB "
        f"(chain gain {to_decibels(chain.detection_power_gain):.2f} dB)",
    ]
    return CommandOutput(summary=summary, table=table)
