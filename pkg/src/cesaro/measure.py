"""Finite positive Borel measures on [0, 1).

Four shapes are supported: finite sums of point masses, power densities
``scale * (1 - t)**alpha dt``, Lebesgue measure ``dt``, and finite
mixtures of the above.  All of them admit closed forms for the moments
``mu_n = integral of t**n`` and for the tail mass ``mu([t, 1))``, which
is what the Carleson criteria consume.  Instances are frozen and safe to
share between threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from scipy.special import gammaln

from .errors import MeasureValidationError, ParameterError

__all__ = [
    "Atomic",
    "PowerDensity",
    "Lebesgue",
    "Mixture",
    "MeasureSpec",
    "MomentSequence",
    "moment",
    "moments",
    "moments_array",
    "tail_mass",
    "total_mass",
    "measure_from_dict",
    "measure_to_dict",
    "load_measure",
    "save_measure",
]


@dataclass(frozen=True)
class Atomic:
    """Point masses ``weights[i]`` at locations ``points[i]``, all in [0, 1)."""

    points: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(float(t) for t in self.points))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.points) != len(self.weights):
            raise MeasureValidationError(
                f"{len(self.points)} points but {len(self.weights)} weights"
            )
        if not self.points:
            raise MeasureValidationError("atomic measure needs at least one atom")
        for t in self.points:
            if not (0.0 <= t < 1.0) or not math.isfinite(t):
                raise MeasureValidationError(f"atom location {t!r} outside [0, 1)")
        for w in self.weights:
            if not (w > 0.0) or not math.isfinite(w):
                raise MeasureValidationError(f"atom weight {w!r} is not positive")
        if len(set(self.points)) != len(self.points):
            raise MeasureValidationError("atom locations must be distinct")


@dataclass(frozen=True)
class PowerDensity:
    """Absolutely continuous measure ``scale * (1 - t)**alpha dt`` on [0, 1).

    Integrable exactly when ``alpha > -1``; ``alpha = 0`` with ``scale = 1``
    is Lebesgue measure.
    """

    alpha: float
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "scale", float(self.scale))
        if not math.isfinite(self.alpha) or self.alpha <= -1.0:
            raise MeasureValidationError(f"alpha must exceed -1, got {self.alpha!r}")
        if not math.isfinite(self.scale) or self.scale <= 0.0:
            raise MeasureValidationError(f"scale must be positive, got {self.scale!r}")


@dataclass(frozen=True)
class Lebesgue:
    """Lebesgue measure ``dt`` restricted to [0, 1)."""


@dataclass(frozen=True)
class Mixture:
    """Finite sum of component measures."""

    components: tuple["MeasureSpec", ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise MeasureValidationError("mixture needs at least one component")
        for part in self.components:
            if not isinstance(part, (Atomic, PowerDensity, Lebesgue, Mixture)):
                raise MeasureValidationError(
                    f"mixture component {part!r} is not a measure"
                )


MeasureSpec = Union[Atomic, PowerDensity, Lebesgue, Mixture]


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``mu_0 .. mu_N`` with the evaluation method of each entry.

    Values are nonnegative and nonincreasing (the integrand ``t**n``
    decreases in ``n`` pointwise on [0, 1)); a measure with all its mass
    at ``t = 0`` hits zero from ``mu_1`` on.
    """

    values: tuple[float, ...]
    methods: tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> float:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def _check_order(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
        raise ParameterError(f"moment order must be a nonnegative integer, got {n!r}")
    return int(n)


def moments_array(mu: MeasureSpec, order: int) -> np.ndarray:
    """Moments ``mu_0 .. mu_order`` as a float array, by closed form."""
    order = _check_order(order)
    n = np.arange(order + 1, dtype=float)
    if isinstance(mu, Atomic):
        pts = np.asarray(mu.points)
        wts = np.asarray(mu.weights)
        # 0**0 = 1 by numpy convention, which is the right mu_0 here
        return (pts[None, :] ** n[:, None]) @ wts
    if isinstance(mu, Lebesgue):
        return 1.0 / (n + 1.0)
    if isinstance(mu, PowerDensity):
        a = mu.alpha
        return mu.scale * np.exp(gammaln(n + 1.0) + gammaln(a + 1.0) - gammaln(n + a + 2.0))
    if isinstance(mu, Mixture):
        total = np.zeros(order + 1)
        for part in mu.components:
            total += moments_array(part, order)
        return total
    raise ParameterError(f"not a measure: {mu!r}")


def moment(mu: MeasureSpec, n: int) -> float:
    """The moment ``integral of t**n d mu(t)``."""
    return float(moments_array(mu, _check_order(n))[-1])


def moments(mu: MeasureSpec, order: int) -> MomentSequence:
    values = moments_array(mu, order)
    return MomentSequence(
        values=tuple(float(v) for v in values),
        methods=("closed-form",) * len(values),
    )


def tail_mass(mu: MeasureSpec, t: float) -> float:
    """Mass of the interval ``[t, 1)``."""
    t = float(t)
    if not (0.0 <= t < 1.0):
        raise ParameterError(f"tail cut must lie in [0, 1), got {t!r}")
    if isinstance(mu, Atomic):
        return float(sum(w for p, w in zip(mu.points, mu.weights) if p >= t))
    if isinstance(mu, Lebesgue):
        return 1.0 - t
    if isinstance(mu, PowerDensity):
        return mu.scale * (1.0 - t) ** (mu.alpha + 1.0) / (mu.alpha + 1.0)
    if isinstance(mu, Mixture):
        return float(sum(tail_mass(part, t) for part in mu.components))
    raise ParameterError(f"not a measure: {mu!r}")


def total_mass(mu: MeasureSpec) -> float:
    return tail_mass(mu, 0.0)


def measure_to_dict(mu: MeasureSpec) -> dict:
    if isinstance(mu, Atomic):
        return {"type": "atomic", "points": list(mu.points), "weights": list(mu.weights)}
    if isinstance(mu, PowerDensity):
        return {"type": "power_density", "alpha": mu.alpha, "scale": mu.scale}
    if isinstance(mu, Lebesgue):
        return {"type": "lebesgue"}
    if isinstance(mu, Mixture):
        return {"type": "mixture", "components": [measure_to_dict(p) for p in mu.components]}
    raise ParameterError(f"not a measure: {mu!r}")


def measure_from_dict(data: dict) -> MeasureSpec:
    """Rebuild a measure from its JSON form; raises on unknown or bad fields."""
    if not isinstance(data, dict) or "type" not in data:
        raise MeasureValidationError(f"measure config must be an object with a 'type': {data!r}")
    kind = data["type"]
    extra = set(data) - {"type", "points", "weights", "alpha", "scale", "components"}
    if extra:
        raise MeasureValidationError(f"unknown measure fields: {sorted(extra)}")
    if kind == "atomic":
        return Atomic(points=data.get("points", ()), weights=data.get("weights", ()))
    if kind == "power_density":
        if "alpha" not in data:
            raise MeasureValidationError("power_density needs an 'alpha' field")
        return PowerDensity(alpha=data["alpha"], scale=data.get("scale", 1.0))
    if kind == "lebesgue":
        return Lebesgue()
    if kind == "mixture":
        parts = data.get("components", [])
        return Mixture(components=tuple(measure_from_dict(p) for p in parts))
    raise MeasureValidationError(f"unknown measure type {kind!r}")


def load_measure(path: str | Path) -> MeasureSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return measure_from_dict(json.load(fh))


def save_measure(mu: MeasureSpec, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(measure_to_dict(mu), fh, indent=2, sort_keys=True)
        fh.write("\n")
