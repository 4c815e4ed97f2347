"""
Pump-power sweep through the generation and detection chain.
"""

from sqzchain.cli.deps import (
    CommandContext,
    CommandOutput,
    describe_loss,
    get_chain,
    require,
)
from sqzchain.detection_chain import chain_forward, chain_loss_at
from sqzchain.estimation import synth_chain_sweep
from sqzchain.opa_model import optimal_pump, opa_output
from sqzchain.utils.csv_io import Table

HEADERS = ["pump_w", "r_minus_db", "r_plus_db", "rp_minus_db", "rp_plus_db"]


def run(context: CommandContext) -> CommandOutput:
    config = context.config
    chain = get_chain(config)
    pumps = require(config.sweep.pumps_w, "sweep", "pumps_w")
    sigma = config.sweep.noise_sigma_db or 0.0
    a = chain.generator.shg_coeff_per_watt

    generated = [opa_output(a, pump, chain_loss_at(chain, pump)) for pump in pumps]
    # sigma 0 leaves the chain_forward levels untouched
    observations = synth_chain_sweep(chain, pumps, sigma, context.seed)

    table = Table(headers=HEADERS)
    for levels, obs in zip(generated, observations, strict=True):
        table.rows.append(
            [
                obs.pump_w,
                levels.minus_db,
                levels.plus_db,
                obs.measured_minus_db,
                obs.measured_plus_db,
            ]
        )

    summary = [
        f"shg coefficient: {chain.generator.shg_coeff_pct_per_watt:.1f} %/W",
        f"chain loss: {describe_loss(chain.effective_chain_loss)}",
        f"detection gain: {chain.detection_power_gain:.6g}",
        f"points: {len(pumps)} (noise sigma {sigma:g} dB, seed {context.seed})",
    ]
    if a > 0:
        best_pump = optimal_pump(a, chain.detection_power_gain)
        best = chain_forward(chain, best_pump)
        summary.append(
            f"optimal pump: {best_pump:.4f} W -> measured {best.minus_db:.2f} dB"
        )
    return CommandOutput(summary=summary, table=table)
