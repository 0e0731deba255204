from typing import Callable, Optional

import numpy as np

from kernel_chain.base_orlicz_function import BaseOrliczFunction


class UserOrliczFunction(BaseOrliczFunction):
    def __init__(
        self,
        evaluate: Callable[[np.ndarray], np.ndarray],
        name: str,
        delta2: Optional[bool] = None,
    ) -> None:
        """
        Orlicz function supplied by the caller.

        `evaluate` must be vectorised over nonnegative arrays. `delta2` is the
        caller's attestation about the Δ2 condition (None: decide numerically).
        The Orlicz axioms are spot-checked when the function is registered.
        """
        self._evaluate = evaluate
        self.name = name
        self.delta2_structural = delta2

    @property
    def spec(self) -> str:
        return f"user:{self.name}"

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self._evaluate(x), dtype=float)
