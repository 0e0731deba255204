"""One-dimensional root finding and minimisation used by the Orlicz norms"""

import math
from typing import Callable, NamedTuple, Tuple

from kernel_chain.errors import BracketFailure

PHI_RATIO = 2 / (1 + math.sqrt(5))
MAX_ITERATIONS = 500


def bisect_increasing(
    f: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    rel_tol: float = 1e-12,
    abs_tol: float = 0.0,
) -> float:
    """
    Solve f(x) = target for nondecreasing f with f(lo) <= target <= f(hi).

    Stops when the bracket is below tolerance or can no longer be split in
    floating point.
    """
    for _ in range(MAX_ITERATIONS):
        if hi - lo <= max(abs_tol, rel_tol * abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def expand_upper(
    f: Callable[[float], float], target: float, start: float = 1.0
) -> float:
    """Smallest start·2^j with f >= target"""
    hi = start
    while f(hi) < target:
        hi *= 2.0
        if math.isinf(hi):
            raise BracketFailure(f"No upper bracket for target {target}")
    return hi


def expand_lower(
    f: Callable[[float], float], target: float, start: float = 1.0
) -> float:
    """Largest start·2^-j with f < target"""
    lo = start
    while f(lo) >= target:
        lo *= 0.5
        if lo == 0.0:
            return 0.0
    return lo


class GoldenResult(NamedTuple):
    argmin: float
    minimum: float
    iterations: int


def golden_section(
    f: Callable[[float], float], x_lo: float, x_hi: float, tol: float = 1e-12
) -> GoldenResult:
    """
    Golden-section search for the minimum of a unimodal f on [x_lo, x_hi].

    Ties (including two infinite values) shrink the interval from above, so a
    function that is +inf to the right of its minimum is handled.
    """
    x1 = x_hi - PHI_RATIO * (x_hi - x_lo)
    x2 = x_lo + PHI_RATIO * (x_hi - x_lo)
    f1, f2 = f(x1), f(x2)
    iteration = 0
    while iteration < MAX_ITERATIONS and abs(x_hi - x_lo) > tol:
        if f2 >= f1:
            x_hi, x2, f2 = x2, x1, f1
            x1 = x_hi - PHI_RATIO * (x_hi - x_lo)
            f1 = f(x1)
        else:
            x_lo, x1, f1 = x1, x2, f2
            x2 = x_lo + PHI_RATIO * (x_hi - x_lo)
            f2 = f(x2)
        iteration += 1
    if f1 <= f2:
        return GoldenResult(x1, f1, iteration)
    return GoldenResult(x2, f2, iteration)


def bracket_minimum(
    f: Callable[[float], float], x_lo: float, x_hi: float, samples: int = 64
) -> Tuple[float, float]:
    """
    Locate an interior minimum of f on a uniform sample grid.

    Returns the sub-interval around the best sample; raises BracketFailure if
    the best sample is an end point, i.e. no interior minimum is bracketed.
    """
    step = (x_hi - x_lo) / (samples - 1)
    xs = [x_lo + i * step for i in range(samples)]
    values = [f(x) for x in xs]
    best = min(range(samples), key=values.__getitem__)
    if best == 0 or best == samples - 1 or math.isinf(values[best]):
        raise BracketFailure(
            f"Minimum not bracketed in [{x_lo}, {x_hi}] (best sample at {xs[best]})"
        )
    return xs[best - 1], xs[best + 1]
