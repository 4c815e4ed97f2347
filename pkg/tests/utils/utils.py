import numpy as np

from sqzchain.fit_models import SweepObservation
from sqzchain.models import ChainConfig, NoiseLevels, OpaParams

CHAIN_TOML = """
[chain]
shg_coeff_pct_per_w = 823
rho = 0.21
gain_db = 20
"""


def random_levels(rng: np.random.Generator) -> NoiseLevels:
    squeeze = rng.uniform(0.0, 3.0)
    scale = rng.uniform(0.2, 5.0)
    return NoiseLevels(
        r_minus=scale * np.exp(-2.0 * squeeze), r_plus=scale * np.exp(2.0 * squeeze)
    )


def random_chain(rng: np.random.Generator) -> ChainConfig:
    rho = float(rng.uniform(0.0, 0.95))
    return ChainConfig(
        generator=OpaParams(
            shg_coeff_per_watt=float(rng.uniform(0.1, 20.0)), effective_loss=rho
        ),
        detection_power_gain=float(10.0 ** rng.uniform(0.0, 4.0)),
        effective_chain_loss=rho,
    )


def sweep_pumps(points: int = 12, stop: float = 0.6) -> list[float]:
    return np.linspace(stop / points, stop, points).tolist()


def shift_minus(
    observations: list[SweepObservation], index: int, delta_db: float
) -> list[SweepObservation]:
    shifted = list(observations)
    obs = shifted[index]
    shifted[index] = obs.model_copy(
        update={"measured_minus_db": obs.measured_minus_db + delta_db}
    )
    return shifted
