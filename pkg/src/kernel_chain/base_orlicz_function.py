import logging
from abc import abstractmethod
from typing import Optional, Union

import numpy as np

from kernel_chain import solvers
from kernel_chain.errors import InvalidParameter

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# log grid used for the numeric spot checks at construction
SPOT_CHECK_GRID = np.logspace(-6, 6, 97)
CONVEXITY_RTOL = 1e-9
ROOT_TOL = 1e-12


class BaseOrliczFunction:
    """Base class for Orlicz functions φ: [0, ∞) -> [0, ∞)"""

    # True: Δ2 holds analytically, False: fails analytically, None: unknown
    delta2_structural: Optional[bool] = None

    def __call__(self, x: ArrayLike) -> ArrayLike:
        with np.errstate(over="ignore", invalid="ignore"):
            values = self.evaluate(np.asarray(x, dtype=float))
        if np.ndim(values) == 0:
            return float(values)
        return values

    @abstractmethod
    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """φ on a nonnegative array; must return +inf instead of overflowing"""
        pass

    @property
    @abstractmethod
    def spec(self) -> str:
        """Specifier string in the `power:<p>`, `powerlog:<p>`, `expml` grammar"""
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec!r})"

    def inverse(self, y: float) -> float:
        """The unique x >= 0 with φ(x) = y, by bisection after bracket expansion"""
        if y < 0:
            raise InvalidParameter(f"φ^-1 is only defined for y >= 0, got {y}")
        if y == 0:
            return 0.0
        if self(1.0) >= y:
            lo = solvers.expand_lower(self.__call__, y)
            hi = 1.0 if lo == 0.0 else 2.0 * lo
        else:
            hi = solvers.expand_upper(self.__call__, y)
            lo = 0.5 * hi
        return solvers.bisect_increasing(self.__call__, y, lo, hi, rel_tol=ROOT_TOL)

    def spot_check(self) -> None:
        """
        Numeric sanity checks of the Orlicz axioms on a log grid.

        Checks φ(0) = 0, positivity, monotonicity, midpoint convexity and
        growth of φ(x)/x. Raises InvalidParameter on the first violation.
        """
        xs = SPOT_CHECK_GRID
        values = self(xs)
        if self(0.0) != 0.0:
            raise InvalidParameter(f"{self.spec}: φ(0) must be 0")
        finite = np.isfinite(values)
        # below 1 the values may underflow to 0 in floating point
        if np.any(values[finite & (xs >= 1)] <= 0):
            raise InvalidParameter(f"{self.spec}: φ(x) must be positive for x > 0")
        if np.any(np.diff(values[finite]) < 0):
            raise InvalidParameter(f"{self.spec}: φ must be nondecreasing")
        mids = self(0.5 * (xs[:-1] + xs[1:]))
        chords = 0.5 * (values[:-1] + values[1:])
        both = np.isfinite(mids) & np.isfinite(chords)
        if np.any(mids[both] > chords[both] * (1 + CONVEXITY_RTOL)):
            raise InvalidParameter(
                f"{self.spec}: φ fails the midpoint convexity check"
            )
        slopes = values[finite] / xs[finite]
        if slopes.size >= 2 and not slopes[0] < slopes[-1]:
            raise InvalidParameter(f"{self.spec}: φ(x)/x must grow from 0 to ∞")
        logger.debug(f"{self.spec}: spot checks passed")
