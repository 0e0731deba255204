import numpy as np

from kernel_chain.base_orlicz_function import BaseOrliczFunction


class ExpMinusLinearFunction(BaseOrliczFunction):
    """φ(x) = e^x - x - 1; grows faster than any power, so Δ2 fails"""

    delta2_structural = False

    @property
    def spec(self) -> str:
        return "expml"

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        # expm1 keeps precision near 0, where φ(x) ~ x²/2
        return np.expm1(x) - x
