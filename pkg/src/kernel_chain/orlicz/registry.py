from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np

from kernel_chain.base_orlicz_function import BaseOrliczFunction
from kernel_chain.errors import InvalidParameter
from kernel_chain.orlicz.exp_minus_linear_function import ExpMinusLinearFunction
from kernel_chain.orlicz.power_function import PowerFunction
from kernel_chain.orlicz.power_log_function import PowerLogFunction
from kernel_chain.orlicz.user_function import UserOrliczFunction

FAMILIES = ("power", "power_log", "exp_minus_linear")


def make_orlicz(
    family: str, p: Optional[Union[int, str, Fraction]] = None
) -> BaseOrliczFunction:
    """Build and spot-check a shipped Orlicz function"""
    family = family.lower()
    if family == "power":
        phi: BaseOrliczFunction = PowerFunction(_require(p, family))
    elif family in {"power_log", "powerlog"}:
        phi = PowerLogFunction(_require(p, family))
    elif family in {"exp_minus_linear", "expml"}:
        if p is not None:
            raise InvalidParameter("exp_minus_linear takes no parameter")
        phi = ExpMinusLinearFunction()
    else:
        raise InvalidParameter(
            f"Unknown Orlicz family '{family}'. Choose one of {FAMILIES}"
        )
    phi.spot_check()
    return phi


def register_orlicz(
    evaluate: Callable[[np.ndarray], np.ndarray],
    name: str,
    delta2: Optional[bool] = None,
) -> BaseOrliczFunction:
    """Wrap a caller-supplied φ after spot-checking the Orlicz axioms"""
    phi = UserOrliczFunction(evaluate, name, delta2)
    phi.spot_check()
    return phi


def parse_phi_spec(text: str) -> BaseOrliczFunction:
    """Parse `power:<p>`, `powerlog:<p>` or `expml`"""
    text = text.strip()
    if text == "expml":
        return make_orlicz("exp_minus_linear")
    family, sep, p = text.partition(":")
    if not sep or family not in {"power", "powerlog"} or not p:
        raise InvalidParameter(
            f"Unknown φ specifier '{text}'. Use power:<p>, powerlog:<p> or expml"
        )
    return make_orlicz(family, p)


def _require(p: Optional[Union[int, str, Fraction]], family: str) -> Fraction:
    if p is None:
        raise InvalidParameter(f"Orlicz family '{family}' needs a parameter p")
    try:
        return Fraction(p)
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidParameter(f"Bad parameter for '{family}': {p!r}") from e
