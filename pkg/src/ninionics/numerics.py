"""Small numerical helpers: Richardson extrapolation, angle reduction, worker pools."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

from .errors import DomainError

_T = TypeVar("_T")
_R = TypeVar("_R")

TWO_PI = 2.0 * math.pi


def richardson_limit(values: Sequence[float], ratio: float,
                     orders: Sequence[int] = (1, 2)) -> float:
    """Extrapolate f(eps) -> f(0) from samples at geometrically shrinking eps.

    `values[i]` holds f at eps0 / ratio**i (largest regulator first). Each
    tableau stage eliminates the error term eps**orders[stage]; eliminating a
    power that is absent from the true error series is harmless.
    """
    if ratio <= 1.0:
        raise DomainError("extrapolation ratio must exceed 1")
    col = list(values)
    if len(col) < 2:
        return float(col[0])
    for k in orders[: len(col) - 1]:
        w = ratio ** k
        col = [(w * col[i + 1] - col[i]) / (w - 1.0) for i in range(len(col) - 1)]
    return float(col[-1])


def geometric_regulators(eps_values: Sequence[float]) -> float:
    """Validate a strictly decreasing geometric regulator ladder; return its ratio."""
    if len(eps_values) < 2:
        raise DomainError("need at least two regulator values to extrapolate")
    if any(e <= 0.0 for e in eps_values):
        raise DomainError("regulator values must be positive")
    ratios = [eps_values[i] / eps_values[i + 1] for i in range(len(eps_values) - 1)]
    if any(r <= 1.0 for r in ratios):
        raise DomainError("regulator values must decrease strictly")
    if any(abs(r / ratios[0] - 1.0) > 1e-9 for r in ratios):
        raise DomainError("regulator values must form a geometric progression")
    return ratios[0]


def principal_angle(x: float) -> float:
    """Reduce an angle in radians to the principal interval (-pi, pi]."""
    y = math.remainder(x, TWO_PI)
    if y <= -math.pi:
        y += TWO_PI
    return y


def worker_count() -> int:
    """Worker cap from NINIONICS_THREADS; defaults to 1 (sequential)."""
    raw = os.environ.get("NINIONICS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def ordered_map(fn: Callable[[_T], _R], items: Iterable[_T],
                max_workers: int | None = None) -> list[_R]:
    """Map preserving input order.

    Uses a thread pool when more than one worker is allowed; results are
    collected in submission order, so output never depends on thread count.
    """
    seq = list(items)
    n = worker_count() if max_workers is None else max_workers
    if n <= 1 or len(seq) <= 1:
        return [fn(x) for x in seq]
    with ThreadPoolExecutor(max_workers=min(n, len(seq))) as pool:
        return list(pool.map(fn, seq))
