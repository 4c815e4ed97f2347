"""
Serial loss-budget arithmetic.
"""

from sqzchain.cli.deps import CommandContext, CommandOutput, describe_loss, require
from sqzchain.detection_chain import per_side_loss
from sqzchain.models import LossBudget
from sqzchain.noise_algebra import compose_losses, loss_to_decibels
from sqzchain.utils.csv_io import Table


def run(context: CommandContext) -> CommandOutput:
    config = context.config
    section = config.budget
    budget = LossBudget.from_fractions(
        require(section.losses, "budget", "losses"), section.names
    )
    total = compose_losses(budget)

    summary = [
        f"{element.name}: {describe_loss(element.fraction)}" for element in budget.elements
    ]
    summary.append(f"total: {total * 100:.1f}% ({loss_to_decibels(total):.2f} dB)")
    headers = ["total_loss", "total_loss_db"]
    row: list[object] = [total, loss_to_decibels(total)]

    if section.total_loss is not None and section.waveguide_loss is not None:
        side = per_side_loss(section.total_loss, section.waveguide_loss)
        summary.append(f"per side: {describe_loss(side)}")
        headers.append("per_side_loss")
        row.append(side)

    return CommandOutput(summary=summary, table=Table(headers=headers, rows=[row]))
