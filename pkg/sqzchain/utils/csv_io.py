import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import pandas as pd

from sqzchain.core.errors import MissingKeyError, OutOfRangeError, TableShapeError
from sqzchain.fit_models import SweepObservation

FLOAT_FORMAT = "%.9g"
SWEEP_COLUMNS = ("pump_w", "rp_minus_db", "rp_plus_db")
# generated-level columns written by the sweep command
IGNORED_COLUMNS = ("r_minus_db", "r_plus_db")


@dataclass
class Table:
    headers: list[str]
    rows: list[list[Any]] = field(default_factory=list)
    # written as "# ..." lines above the header
    comments: list[str] = field(default_factory=list)


def _cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def write_csv(table: Table) -> str:
    for index, row in enumerate(table.rows):
        if len(row) != len(table.headers):
            raise TableShapeError(
                f"row {index} has {len(row)} cells, expected {len(table.headers)}"
            )
    frame = pd.DataFrame(
        [[_cell(value) for value in row] for row in table.rows],
        columns=table.headers,
        dtype=object,
    )
    # object columns bypass float_format, so floats are rendered here
    frame = frame.map(lambda v: FLOAT_FORMAT % v if isinstance(v, float) else v)
    buffer = io.StringIO()
    for comment in table.comments:
        buffer.write(f"# {comment}\n")
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def read_sweep_csv(path: Path) -> list[SweepObservation]:
    try:
        frame = pd.read_csv(path, comment="#")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise OutOfRangeError(f"cannot read sweep data {path}: {e}")

    missing = [column for column in SWEEP_COLUMNS if column not in frame.columns]
    if missing:
        raise MissingKeyError(f"sweep data {path} lacks columns {missing}")
    unknown = set(frame.columns) - {*SWEEP_COLUMNS, *IGNORED_COLUMNS, "weight"}
    if unknown:
        raise OutOfRangeError(f"sweep data {path} has unknown columns {sorted(unknown)}")

    if "weight" not in frame.columns:
        frame["weight"] = 1.0
    try:
        numeric = frame[[*SWEEP_COLUMNS, "weight"]].astype(float)
    except ValueError as e:
        raise OutOfRangeError(f"sweep data {path} has non-numeric cells: {e}")

    try:
        return [
            SweepObservation(
                pump_w=row.pump_w,
                measured_minus_db=row.rp_minus_db,
                measured_plus_db=row.rp_plus_db,
                weight=row.weight,
            )
            for row in numeric.itertuples(index=False)
        ]
    except ValueError as e:
        raise OutOfRangeError(f"sweep data {path} has out-of-range values: {e}")
