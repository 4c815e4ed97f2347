from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from sqzchain.models import ChainConfig, OpaParams

REF_A = 8.23
REF_RHO = 0.21
REF_GAIN = 100.0


@pytest.fixture
def ref_params() -> OpaParams:
    return OpaParams(shg_coeff_per_watt=REF_A, effective_loss=REF_RHO)


@pytest.fixture
def ref_chain(ref_params: OpaParams) -> ChainConfig:
    return ChainConfig(
        generator=ref_params,
        detection_power_gain=REF_GAIN,
        effective_chain_loss=REF_RHO,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[[str], Path]:
    def _write(text: str, name: str = "run.toml") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
