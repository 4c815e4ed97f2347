"""
On-chip squeezing inferred from a measured level and the detection loss.
"""

from sqzchain.cli.deps import (
    CommandContext,
    CommandOutput,
    describe_loss,
    get_detection_loss,
    require,
)
from sqzchain.detection_chain import infer_onchip
from sqzchain.utils.csv_io import Table

HEADERS = ["measured_db", "detection_loss", "onchip_db"]


def run(context: CommandContext) -> CommandOutput:
    config = context.config
    measured_db = require(config.budget.measured_db, "budget", "measured_db")
    detection_loss = get_detection_loss(config)
    onchip_db = infer_onchip(measured_db, detection_loss)
    summary = [
        f"measured: {measured_db:.2f} dB",
        f"detection loss: {describe_loss(detection_loss)}",
        f"on-chip: {onchip_db:.2f} dB",
    ]
    table = Table(headers=HEADERS, rows=[[measured_db, detection_loss, onchip_db]])
    return CommandOutput(summary=summary, table=table)
