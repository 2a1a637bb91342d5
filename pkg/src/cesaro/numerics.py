"""Quadrature against measures, disk grids, and dyadic growth classification.

The two workhorses are ``quad_measure`` (integrate a function against a
measure on [0, 1), with optional endpoint singularity, by Gauss-Jacobi
node escalation) and ``classify_growth`` (decide whether a trace sampled
at dyadic levels ``j`` stays bounded or grows like ``2**(j*epsilon)``).
Escalation failure is the divergence signal: a truly divergent integral
never passes the successive-agreement test, and ``NumericsError`` carries
the last two estimates out to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import InconclusiveGrowthError, NumericsError, ParameterError
from .measure import Atomic, Lebesgue, MeasureSpec, Mixture, PowerDensity

__all__ = [
    "QUAD_START_ORDER",
    "QUAD_MAX_ORDER",
    "GROWTH_THRESHOLD",
    "BOUNDED",
    "DIVERGENT",
    "quad_measure",
    "DiskGrid",
    "disk_grid",
    "disk_integral",
    "dyadic_radii",
    "GrowthReport",
    "classify_growth",
    "sup_on_dyadic_boundary",
]

QUAD_START_ORDER = 16
QUAD_MAX_ORDER = 8192
# slope threshold in log-space per dyadic level: growth below 2**(0.1*j) is noise
GROWTH_THRESHOLD = 0.1 * math.log(2.0)

BOUNDED = "bounded"
DIVERGENT = "divergent"

_LOG_FLOOR = 1e-300


@lru_cache(maxsize=None)
def _jacobi_rule(order: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    # nodes/weights for integral over [0,1] with weight (1-t)**alpha,
    # from the [-1,1] Jacobi rule via t = (x+1)/2
    x, w = roots_jacobi(order, alpha, 0.0)
    t = 0.5 * (x + 1.0)
    scaled = w * 0.5 ** (alpha + 1.0)
    t.setflags(write=False)
    scaled.setflags(write=False)
    return t, scaled


def _as_scalar(value):
    if np.iscomplexobj(value):
        return complex(value)
    return float(value)


def quad_measure(
    g: Callable[[np.ndarray], np.ndarray],
    mu: MeasureSpec,
    *,
    singular_exponent: float = 0.0,
    rtol: float = 1e-9,
    atol: float = 0.0,
    start_order: int = QUAD_START_ORDER,
    max_order: int = QUAD_MAX_ORDER,
):
    """Integrate ``g(t) * (1-t)**(-singular_exponent)`` against ``mu``.

    ``g`` must be vectorized over a node array.  Atomic parts are summed
    exactly.  Density parts absorb the singular factor into the Jacobi
    weight whenever the combined endpoint exponent stays integrable, and
    double the node count from ``start_order`` until two successive
    estimates agree to ``rtol``; running out of nodes raises
    ``NumericsError``, which is how a divergent integral announces itself.
    """
    r = float(singular_exponent)
    if isinstance(mu, Atomic):
        t = np.asarray(mu.points)
        w = np.asarray(mu.weights)
        vals = np.asarray(g(t))
        if r != 0.0:
            vals = vals * (1.0 - t) ** (-r)
        return _as_scalar(np.sum(w * vals))
    if isinstance(mu, Mixture):
        return _as_scalar(
            np.sum(
                np.asarray(
                    [
                        quad_measure(
                            g,
                            part,
                            singular_exponent=r,
                            rtol=rtol,
                            atol=atol,
                            start_order=start_order,
                            max_order=max_order,
                        )
                        for part in mu.components
                    ]
                )
            )
        )
    if isinstance(mu, Lebesgue):
        alpha, scale = 0.0, 1.0
    elif isinstance(mu, PowerDensity):
        alpha, scale = mu.alpha, mu.scale
    else:
        raise ParameterError(f"not a measure: {mu!r}")

    alpha_eff = alpha - r
    if alpha_eff > -1.0:
        weight_alpha, extra = alpha_eff, None
    else:
        # non-integrable endpoint exponent: evaluate the factor pointwise
        # and let the escalation fail, so divergence is observed not assumed
        weight_alpha, extra = alpha, -r

    prev = None
    est = None
    order = start_order
    while order <= max_order:
        t, w = _jacobi_rule(order, weight_alpha)
        vals = np.asarray(g(t))
        if extra is not None:
            vals = vals * (1.0 - t) ** extra
        new = scale * np.sum(w * vals)
        if est is not None and abs(new - est) <= rtol * max(abs(new), abs(est)) + atol:
            return _as_scalar(new)
        prev, est = est, new
        order *= 2
    message = (
        f"quadrature did not reach rtol={rtol:g} by {max_order} nodes"
    )
    if alpha_eff <= -1.0:
        message += f" (endpoint exponent {alpha_eff:g} is not integrable)"
    raise NumericsError(
        message,
        estimates=tuple(_as_scalar(v) for v in (prev, est) if v is not None),
    )


@dataclass(frozen=True, eq=False)
class DiskGrid:
    """Product quadrature on the unit disk for the normalized area measure.

    Gauss-Legendre in the radius, uniform in the angle; ``weights`` sum
    to 1 so that ``disk_integral(lambda z: 1, grid) == 1``.
    """

    radial_order: int
    angular: int
    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def build(cls, radial_order: int = 96, angular: int = 256) -> "DiskGrid":
        if radial_order < 1 or angular < 1:
            raise ParameterError("grid orders must be positive")
        x, v = roots_legendre(radial_order)
        radii = 0.5 * (x + 1.0)
        wr = 0.5 * v
        theta = 2.0 * np.pi * np.arange(angular) / angular
        nodes = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
        weights = ((2.0 * radii * wr)[:, None] / angular * np.ones(angular)[None, :]).ravel()
        nodes.setflags(write=False)
        weights.setflags(write=False)
        return cls(radial_order=radial_order, angular=angular, nodes=nodes, weights=weights)


@lru_cache(maxsize=None)
def disk_grid(radial_order: int = 96, angular: int = 256) -> DiskGrid:
    return DiskGrid.build(radial_order=radial_order, angular=angular)


def disk_integral(g: Callable[[np.ndarray], np.ndarray], grid: DiskGrid | None = None):
    """Integral of ``g`` over the unit disk against normalized area measure."""
    if grid is None:
        grid = disk_grid()
    vals = np.asarray(g(grid.nodes))
    return _as_scalar(np.sum(grid.weights * vals))


def dyadic_radii(depth: int, start_level: int = 1) -> np.ndarray:
    """Radii ``1 - 2**-j`` for ``j = start_level .. depth``."""
    if depth < start_level:
        raise ParameterError(f"depth {depth} below start level {start_level}")
    j = np.arange(start_level, depth + 1)
    return 1.0 - 0.5 ** j


@dataclass(frozen=True)
class GrowthReport:
    """Outcome of fitting ``log S_j`` against the dyadic level ``j``.

    ``exponent`` is the fitted growth ``epsilon`` in ``S_j ~ 2**(j*epsilon)``
    (``slope / log 2``); the verdict is ``bounded`` when the slope over the
    trailing half of the trace stays under ``threshold``.
    """

    levels: tuple[int, ...]
    values: tuple[float, ...]
    slope: float
    exponent: float
    verdict: str
    threshold: float
    notes: tuple[str, ...] = ()

    @property
    def bounded(self) -> bool:
        return self.verdict == BOUNDED

    def to_dict(self) -> dict:
        return {
            "levels": list(self.levels),
            "values": list(self.values),
            "slope": self.slope,
            "exponent": self.exponent,
            "verdict": self.verdict,
            "threshold": self.threshold,
            "notes": list(self.notes),
        }


def classify_growth(
    values: Sequence[float],
    levels: Iterable[int] | None = None,
    *,
    threshold: float = GROWTH_THRESHOLD,
    notes: Sequence[str] = (),
) -> GrowthReport:
    """Classify a dyadic trace as bounded or divergent.

    Any ``+inf`` sample short-circuits to divergent.  Otherwise a least
    squares line through ``(j, log S_j)`` over the trailing half of the
    finite samples decides: slope below ``threshold`` per level is
    bounded.  Fewer than 4 finite samples raise
    ``InconclusiveGrowthError``.
    """
    vals = np.asarray(list(values), dtype=float)
    if levels is None:
        lev = np.arange(1, vals.size + 1)
    else:
        lev = np.asarray(list(levels), dtype=int)
    if vals.shape != lev.shape:
        raise ParameterError(f"{vals.size} values but {lev.size} levels")
    note_list = list(notes)

    def report(slope: float, exponent: float, verdict: str) -> GrowthReport:
        return GrowthReport(
            levels=tuple(int(j) for j in lev),
            values=tuple(float(v) for v in vals),
            slope=slope,
            exponent=exponent,
            verdict=verdict,
            threshold=threshold,
            notes=tuple(note_list),
        )

    if vals.size and np.isposinf(vals).any():
        note_list.append("trace contains an infinite sample")
        return report(math.inf, math.inf, DIVERGENT)
    finite = np.isfinite(vals)
    if int(finite.sum()) < 4:
        raise InconclusiveGrowthError(
            f"only {int(finite.sum())} finite samples; need at least 4 to classify"
        )
    if float(np.max(vals[finite])) <= 0.0:
        note_list.append("trace is nonpositive")
        return report(0.0, 0.0, BOUNDED)
    idx = np.flatnonzero(finite)
    take = idx[-math.ceil(idx.size / 2):]
    y = np.log(np.maximum(vals[take], _LOG_FLOOR))
    slope = float(np.polyfit(lev[take].astype(float), y, 1)[0])
    exponent = slope / math.log(2.0)
    verdict = BOUNDED if slope < threshold else DIVERGENT
    return report(slope, exponent, verdict)


def sup_on_dyadic_boundary(
    h: Callable[[complex], float],
    depth: int = 18,
    angles: int = 1,
    *,
    start_level: int = 1,
    threshold: float = GROWTH_THRESHOLD,
    notes: Sequence[str] = (),
) -> GrowthReport:
    """Trace ``S_j = max over angles of h(a)`` at ``|a| = 1 - 2**-j``.

    With ``angles=1`` the probe points are real.  ``h`` returns a float
    and may return ``inf`` to mark a divergent sample.
    """
    if angles < 1:
        raise ParameterError(f"angles must be positive, got {angles}")
    radii = dyadic_radii(depth, start_level)
    theta = 2.0 * np.pi * np.arange(angles) / angles
    values = []
    for radius in radii:
        probes = radius * np.exp(1j * theta) if angles > 1 else np.asarray([radius + 0j])
        values.append(max(float(h(complex(a))) for a in probes))
    return classify_growth(
        values,
        range(start_level, depth + 1),
        threshold=threshold,
        notes=notes,
    )
