from fractions import Fraction
from typing import Union

import numpy as np

from kernel_chain.base_orlicz_function import BaseOrliczFunction
from kernel_chain.errors import InvalidParameter


class PowerLogFunction(BaseOrliczFunction):
    def __init__(self, p: Union[int, str, Fraction]) -> None:
        """
        φ(x) = x^p · ln(1 + x) for p >= 1.

        φ(2x)/φ(x) = 2^p · ln(1+2x)/ln(1+x) is bounded by 2^(p+1), so Δ2 holds.
        """
        p = Fraction(p)
        if p < 1:
            raise InvalidParameter(f"powerlog(p) needs p >= 1, got p={p}")
        self.p = p
        self._exponent = float(p)
        self.delta2_structural = True

    @property
    def spec(self) -> str:
        return f"powerlog:{self.p}"

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.power(x, self._exponent) * np.log1p(x)
