"""
Transverse-mode bookkeeping for the quasi-single-mode argument.

Hermite-Gauss profiles in one lateral coordinate stand in for the guided
modes. A symmetric pump cannot drive pair generation into a mode pair of odd
total parity, which is what keeps the antisymmetric mode dark.
"""

import math
from collections.abc import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import eval_hermite, factorial

from sqzchain.core.errors import DomainError
from sqzchain.models import NoiseLevels, TransverseMode

DOMAIN_WIDTHS = 12.0
OVERLAP_ABS_TOL = 1e-10
WEIGHT_SUM_TOL = 1e-9


def mode_profile(mode: TransverseMode, x: float | np.ndarray) -> float | np.ndarray:
    """Unit-norm Hermite-Gauss field of the given order and width."""
    norm = 1.0 / math.sqrt(
        2.0**mode.order * float(factorial(mode.order)) * math.sqrt(math.pi) * mode.width
    )
    u = np.asarray(x, dtype=float) / mode.width
    value = norm * eval_hermite(mode.order, u) * np.exp(-0.5 * u**2)
    return float(value) if np.ndim(value) == 0 else value


def triple_overlap(p: TransverseMode, m: TransverseMode, n: TransverseMode) -> float:
    """Integral of the product of three mode profiles over the lateral axis."""
    if p.width == m.width == n.width and (p.order + m.order + n.order) % 2 == 1:
        # odd integrand
        return 0.0

    half_span = DOMAIN_WIDTHS * max(p.width, m.width, n.width)

    def integrand(x: float) -> float:
        return float(mode_profile(p, x) * mode_profile(m, x) * mode_profile(n, x))

    value, _ = quad(
        integrand,
        -half_span,
        half_span,
        epsabs=OVERLAP_ABS_TOL,
        epsrel=OVERLAP_ABS_TOL,
        limit=200,
    )
    return float(value)


def pump_coupling_table(
    max_order: int, width: float = 1.0
) -> dict[tuple[int, int], float]:
    """Overlap of a fundamental pump with every signal mode pair up to max_order."""
    if max_order < 0:
        raise DomainError(f"max_order must be nonnegative, got {max_order}")
    pump = TransverseMode(order=0, width=width)
    table = {}
    for m in range(max_order + 1):
        for n in range(m, max_order + 1):
            table[(m, n)] = triple_overlap(
                pump,
                TransverseMode(order=m, width=width),
                TransverseMode(order=n, width=width),
            )
    return table


def multimode_noise(per_mode: Sequence[tuple[NoiseLevels, float]]) -> NoiseLevels:
    if not per_mode:
        raise DomainError("at least one mode is required")
    weights = np.array([weight for _, weight in per_mode], dtype=float)
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise DomainError("mode weights must be nonnegative")
    if abs(float(np.sum(weights)) - 1.0) > WEIGHT_SUM_TOL:
        raise DomainError(f"mode weights must sum to 1, got {float(np.sum(weights))}")
    r_minus = float(np.dot(weights, [levels.r_minus for levels, _ in per_mode]))
    r_plus = float(np.dot(weights, [levels.r_plus for levels, _ in per_mode]))
    return NoiseLevels(r_minus=r_minus, r_plus=r_plus)
