from fractions import Fraction
from typing import Union

import numpy as np

from kernel_chain.base_orlicz_function import BaseOrliczFunction
from kernel_chain.errors import InvalidParameter


class PowerFunction(BaseOrliczFunction):
    def __init__(self, p: Union[int, str, Fraction]) -> None:
        """
        φ(x) = x^p for p > 1.

        For p <= 1 the quotient φ(x)/x does not vanish at 0, so p = 1 is
        rejected. Δ2 holds with constant 2^p.
        """
        p = Fraction(p)
        if p <= 1:
            raise InvalidParameter(f"power(p) needs p > 1, got p={p}")
        self.p = p
        self._exponent = float(p)
        self.delta2_structural = True

    @property
    def spec(self) -> str:
        return f"power:{self.p}"

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.power(x, self._exponent)
