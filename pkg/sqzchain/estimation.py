"""
Recovering the SHG coefficient and effective loss from pump-power sweeps.

Residuals are stacked in dB over both measured branches. The optimizer is
scipy's Levenberg-Marquardt on transformed parameters a = exp(u) and
rho = expit(v), started from a few loss guesses crossed with a coarse scan of
the squeeze strength.
"""

from collections.abc import Callable, Sequence

import numpy as np
from scipy.optimize import least_squares
from scipy.special import expit, logit

from sqzchain.core.errors import (
    DomainError,
    SingularInformationError,
    UnderdeterminedFitError,
)
from sqzchain.core.logging import get_logger
from sqzchain.detection_chain import capped_gain, chain_forward, mix_quadratures
from sqzchain.fit_models import FitResult, SweepObservation
from sqzchain.models import ChainConfig, OpaParams

logger = get_logger(__name__)

MAX_ITERATIONS = 200
# each iteration may retry its step several times before one is accepted
MAX_EVALUATIONS = 10 * MAX_ITERATIONS
STEP_TOLERANCE = 1e-9
JACOBIAN_RELATIVE_STEP = 1e-6
START_LOSSES = (0.05, 0.2, 0.5)
# squeeze parameters sqrt(a P_max) scanned to seed each start
SQUEEZE_SCAN = np.linspace(0.05, 4.0, 80)
TIE_TOLERANCE = 1e-9
MAX_RHO = 1.0 - 1e-12
MAX_SQUEEZE = 300.0
# keeps exp(u) finite while the optimizer explores
LOG_A_BOUND = 60.0

Vector = np.ndarray


def model_levels_db(
    a: float, rho: float, g_power: float, pumps: Vector
) -> tuple[Vector, Vector]:
    """Measured (minus, plus) levels in dB for an array of pump powers."""
    # capped so exp stays finite for wild optimizer trials
    squeeze = np.minimum(np.sqrt(a * np.asarray(pumps, dtype=float)), MAX_SQUEEZE)
    lossless_minus = np.exp(-2.0 * squeeze)
    lossless_plus = np.exp(2.0 * squeeze)
    r_minus = lossless_minus + rho * (1.0 - lossless_minus)
    r_plus = lossless_plus + rho * (1.0 - lossless_plus)
    rp_minus, rp_plus = mix_quadratures(r_minus, r_plus, capped_gain(g_power))
    return 10.0 * np.log10(rp_minus), 10.0 * np.log10(rp_plus)


def _arrays(
    observations: Sequence[SweepObservation],
) -> tuple[Vector, Vector, Vector, Vector]:
    pumps = np.array([obs.pump_w for obs in observations], dtype=float)
    minus = np.array([obs.measured_minus_db for obs in observations], dtype=float)
    plus = np.array([obs.measured_plus_db for obs in observations], dtype=float)
    weights = np.array([obs.weight for obs in observations], dtype=float)
    return pumps, minus, plus, weights


def _residual_vector(
    a: float,
    rho: float,
    g_power: float,
    pumps: Vector,
    minus: Vector,
    plus: Vector,
    root_weights: Vector,
) -> Vector:
    model_minus, model_plus = model_levels_db(a, rho, g_power, pumps)
    return np.concatenate(
        [root_weights * (model_minus - minus), root_weights * (model_plus - plus)]
    )


def residual_rms(
    observations: Sequence[SweepObservation], a: float, rho: float, g_power: float
) -> float:
    if not observations:
        raise DomainError("residual needs at least one observation")
    pumps, minus, plus, weights = _arrays(observations)
    if not np.any(weights > 0):
        raise DomainError("all observation weights are zero")
    residuals = _residual_vector(a, rho, g_power, pumps, minus, plus, np.sqrt(weights))
    return float(np.sqrt(np.sum(residuals**2) / (2.0 * np.sum(weights))))


def _forward_jacobian(
    fun: Callable[[Vector], Vector], x: Vector, f0: Vector | None = None
) -> Vector:
    if f0 is None:
        f0 = fun(x)
    jac = np.empty((f0.size, x.size))
    for index in range(x.size):
        step = JACOBIAN_RELATIVE_STEP * max(abs(x[index]), 1.0)
        shifted = x.copy()
        shifted[index] += step
        jac[:, index] = (fun(shifted) - f0) / step
    return jac


def _check_information(observations: Sequence[SweepObservation]) -> None:
    if not observations:
        raise UnderdeterminedFitError("no observations to fit")
    pumps = {obs.pump_w for obs in observations}
    if pumps == {0.0}:
        raise SingularInformationError(
            "every observation has zero pump power, which carries no information on a"
        )
    distinct_positive = {pump for pump in pumps if pump > 0}
    if len(distinct_positive) < 2:
        raise UnderdeterminedFitError(
            f"need at least 2 distinct positive pump powers, got {len(distinct_positive)}"
        )


def _standard_errors(
    a: float,
    rho: float,
    residual: Callable[[Vector], Vector],
) -> tuple[float, float]:
    x = np.array([a, rho])
    f0 = residual(x)
    jac = _forward_jacobian(residual, x, f0)
    dof = max(f0.size - x.size, 1)
    variance = float(np.sum(f0**2)) / dof
    covariance = variance * np.linalg.pinv(jac.T @ jac)
    sigma = np.sqrt(np.clip(np.diag(covariance), 0.0, None))
    return float(sigma[0]), float(sigma[1])


def fit_opa_params(
    observations: Sequence[SweepObservation], g_power: float
) -> FitResult:
    _check_information(observations)
    g_power = capped_gain(g_power)
    pumps, minus, plus, weights = _arrays(observations)
    root_weights = np.sqrt(weights)

    def physical(x: Vector) -> Vector:
        return _residual_vector(
            float(x[0]), float(x[1]), g_power, pumps, minus, plus, root_weights
        )

    def transformed(x: Vector) -> Vector:
        log_a = float(np.clip(x[0], -LOG_A_BOUND, LOG_A_BOUND))
        return _residual_vector(
            float(np.exp(log_a)),
            float(expit(x[1])),
            g_power,
            pumps,
            minus,
            plus,
            root_weights,
        )

    logger.info(
        {
            "event_type": "fit",
            "event_name": "fit_start",
            "observations": len(observations),
            "g_power": g_power,
        }
    )

    pump_max = float(np.max(pumps))
    candidates = []
    for rho_start in START_LOSSES:
        scan = [
            (float(np.sum(physical(np.array([s**2 / pump_max, rho_start])) ** 2)), s)
            for s in SQUEEZE_SCAN
        ]
        _, squeeze_start = min(scan)
        x0 = np.array([np.log(squeeze_start**2 / pump_max), logit(rho_start)])
        solution = least_squares(
            transformed,
            x0,
            jac=lambda x: _forward_jacobian(transformed, x),
            method="lm",
            xtol=STEP_TOLERANCE,
            ftol=1e-12,
            gtol=1e-12,
            max_nfev=MAX_EVALUATIONS,
        )
        a_fit = float(np.exp(np.clip(solution.x[0], -LOG_A_BOUND, LOG_A_BOUND)))
        rho_fit = min(float(expit(solution.x[1])), MAX_RHO)
        rms = residual_rms(observations, a_fit, rho_fit, g_power)
        logger.debug(
            {
                "event_type": "fit",
                "event_name": "start_finished",
                "rho_start": rho_start,
                "a": a_fit,
                "rho": rho_fit,
                "residual_rms_db": rms,
                "status": int(solution.status),
            }
        )
        candidates.append((rms, rho_fit, a_fit, solution))

    best_rms = min(rms for rms, *_ in candidates)
    tied = [
        candidate
        for candidate in candidates
        if candidate[0] <= best_rms * (1.0 + TIE_TOLERANCE) + 1e-15
    ]
    rms, rho_fit, a_fit, solution = min(tied, key=lambda candidate: candidate[1])

    # one Jacobian per Levenberg-Marquardt iteration
    iterations = int(solution.njev or solution.nfev)
    result = FitResult(
        a_per_watt=a_fit,
        rho=rho_fit,
        residual_rms_db=rms,
        iterations=iterations,
        converged=bool(solution.status > 0 and iterations <= MAX_ITERATIONS),
        parameter_stderr=_standard_errors(a_fit, rho_fit, physical),
    )
    log = logger.info if result.converged else logger.warning
    log(
        {
            "event_type": "fit",
            "event_name": "fit_finished",
            "a_per_watt": result.a_per_watt,
            "rho": result.rho,
            "residual_rms_db": result.residual_rms_db,
            "iterations": result.iterations,
            "converged": result.converged,
        }
    )
    return result


def _box_muller(uniforms: Vector) -> Vector:
    """Standard normals from pairs of uniforms in (0, 1]."""
    first, second = uniforms[0::2], uniforms[1::2]
    radius = np.sqrt(-2.0 * np.log(first))
    angle = 2.0 * np.pi * second
    return np.column_stack([radius * np.cos(angle), radius * np.sin(angle)]).ravel()


def synth_chain_sweep(
    chain: ChainConfig,
    pumps: Sequence[float],
    noise_sigma_db: float,
    seed: int,
) -> list[SweepObservation]:
    """
    chain_forward levels in dB at each pump, plus optional Gaussian noise.

    Noise comes from the PCG64 generator (64-bit, fixed algorithm) through a
    Box-Muller transform, one normal per branch per point.
    """
    if not noise_sigma_db >= 0:
        raise DomainError(f"noise sigma must be nonnegative, got {noise_sigma_db}")
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if any(pump < 0 for pump in pumps):
        raise DomainError("pump powers must be nonnegative")
    levels = [chain_forward(chain, pump) for pump in pumps]

    generator = np.random.Generator(np.random.PCG64(seed))
    # 1 - U maps [0, 1) onto (0, 1] so the logarithm stays finite
    uniforms = 1.0 - generator.random(2 * len(levels))
    noise = noise_sigma_db * _box_muller(uniforms).reshape(-1, 2)

    return [
        SweepObservation(
            pump_w=pump,
            measured_minus_db=measured.minus_db + float(delta[0]),
            measured_plus_db=measured.plus_db + float(delta[1]),
        )
        for pump, measured, delta in zip(pumps, levels, noise, strict=True)
    ]


def synth_sweep(
    a: float,
    rho: float,
    g_power: float,
    pumps: Sequence[float],
    noise_sigma_db: float,
    seed: int,
) -> list[SweepObservation]:
    """Sweep of the fitted model: one constant loss rho on both sides of the chain."""
    if not (a >= 0 and 0 <= rho < 1):
        raise DomainError(f"need a >= 0 and rho in [0, 1), got a={a}, rho={rho}")
    capped_gain(g_power)
    chain = ChainConfig(
        generator=OpaParams(shg_coeff_per_watt=a, effective_loss=rho),
        detection_power_gain=g_power,
        effective_chain_loss=rho,
    )
    return synth_chain_sweep(chain, pumps, noise_sigma_db, seed)
