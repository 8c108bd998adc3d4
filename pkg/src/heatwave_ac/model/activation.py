"""
Temperature-driven AC activation probability.

A discrete three-parameter Weibull cumulative function of outdoor temperature:
zero below the threshold ``u``, otherwise
``1 - exp(-((T - u) / l) ** k * dt / tau_c)``.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class ActivationParams(BaseModel):
    """Weibull activation parameters (temperatures in degrees C, times in hours)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    u: float = Field(default=18.5, allow_inf_nan=False)
    l: float = Field(default=3.5, gt=0, allow_inf_nan=False)  # noqa: E741
    k: float = Field(default=3.5, gt=0, allow_inf_nan=False)
    dt: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    tau_c: float = Field(default=1.0, gt=0, allow_inf_nan=False)


def activation_probability(params: ActivationParams, temperature: float) -> float:
    """
    Probability that a present household switches its AC on.

    Args:
        params: Activation parameters
        temperature: Outdoor temperature in degrees C

    Returns:
        Probability in [0, 1)
    """
    if temperature < params.u:
        return 0.0
    with np.errstate(over="ignore"):
        exponent = np.power((temperature - params.u) / params.l, params.k)
        return float(-np.expm1(-exponent * (params.dt / params.tau_c)))


def activation_curve(params: ActivationParams, temperatures: np.ndarray) -> np.ndarray:
    """Element-wise ``activation_probability`` over an array of temperatures."""
    temperatures = np.asarray(temperatures, dtype=float)
    excess = np.maximum(temperatures - params.u, 0.0)
    with np.errstate(over="ignore"):
        exponent = np.power(excess / params.l, params.k)
        curve = -np.expm1(-exponent * (params.dt / params.tau_c))
    return np.where(temperatures < params.u, 0.0, curve)
