from collections.abc import Sequence
from math import (
    isfinite,
    log,
    nan,
    sqrt,
)

from scipy.stats import linregress

from zakharov.schemas import FrozenSchema


class OrderFit(FrozenSchema):
    slope: float
    intercept: float
    r2: float
    stderr: float
    degenerate: bool = False


DEGENERATE = OrderFit(slope=nan, intercept=nan, r2=nan, stderr=nan, degenerate=True)


def coupling_constant(dim: int) -> float:
    # κ in N = κ τ^{-1/2}
    return 2.0 if dim == 1 else sqrt(2.0)


def round_even(value: float) -> int:
    return max(4, 2 * round(value / 2))


def coupled_resolution(tau: float, kappa: float) -> int:
    return round_even(kappa / sqrt(tau))


def _usable(taus: Sequence[float], errors: Sequence[float]) -> bool:
    return len(taus) >= 2 and all(isfinite(error) and error > 0 for error in errors) and len(set(taus)) >= 2


def fit_order(taus: Sequence[float], errors: Sequence[float]) -> OrderFit:
    if len(taus) != len(errors):
        raise ValueError(f"Got {len(taus)} time steps but {len(errors)} errors")

    if not _usable(taus, errors):
        return DEGENERATE

    result = linregress([log(tau) for tau in taus], [log(error) for error in errors])

    return OrderFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        r2=float(result.rvalue) ** 2,
        # two points fit exactly
        stderr=float(result.stderr) if len(taus) > 2 else 0.0,
    )


def pairwise_orders(taus: Sequence[float], errors: Sequence[float]) -> list[float]:
    orders = []

    for (tau_a, error_a), (tau_b, error_b) in zip(zip(taus, errors), zip(taus[1:], errors[1:])):
        if error_a > 0 and error_b > 0 and tau_a != tau_b:
            orders.append(log(error_b / error_a) / log(tau_b / tau_a))
        else:
            orders.append(nan)

    return orders
