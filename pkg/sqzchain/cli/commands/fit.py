"""
Fit (a, rho) to a measured pump-power sweep.
"""

from sqzchain.cli.deps import CommandContext, CommandOutput, describe_loss, require
from sqzchain.core.errors import MissingKeyError
from sqzchain.detection_chain import pump_induced_excess
from sqzchain.estimation import fit_opa_params
from sqzchain.utils.csv_io import Table, read_sweep_csv

HEADERS = [
    "a_per_watt",
    "rho",
    "residual_rms_db",
    "converged",
    "a_stderr",
    "rho_stderr",
    "iterations",
]


def run(context: CommandContext) -> CommandOutput:
    config = context.config
    if context.data_path is None:
        raise MissingKeyError("fit needs sweep data via --data")
    g_power = require(config.chain.detection_power_gain, "chain", "gain_db")
    observations = read_sweep_csv(context.data_path)
    result = fit_opa_params(observations, g_power)

    a_stderr, rho_stderr = result.parameter_stderr
    table = Table(
        headers=HEADERS,
        rows=[
            [
                result.a_per_watt,
                result.rho,
                result.residual_rms_db,
                result.converged,
                a_stderr,
                rho_stderr,
                result.iterations,
            ]
        ],
    )
    summary = [
        f"observations: {len(observations)}",
        f"shg coefficient: {result.a_pct_per_watt:.1f} %/W (+/- {a_stderr * 100:.1f})",
        f"effective loss: {describe_loss(result.rho)} (+/- {rho_stderr * 100:.1f}%)",
        f"residual rms: {result.residual_rms_db:.3f} dB",
        f"converged: {'yes' if result.converged else 'no'} after {result.iterations} iterations",
    ]
    if config.budget.total_loss is not None:
        excess = pump_induced_excess(result.rho, config.budget.total_loss)
        summary.append(f"pump-induced excess loss: {excess * 100:.1f}%")
    return CommandOutput(summary=summary, table=table)
