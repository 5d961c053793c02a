"""Noisy observation layer over a deterministic objective.

Solvers never see true objective values. Every query goes through
``NoisyBlackbox.observe``, which adds centred Gaussian noise of the
requested standard deviation and charges the equivalent Monte-Carlo draw
cost to a per-run ledger. Points outside the domain are reported as
infeasible at zero draw cost; the domain check itself is deterministic.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

from .exceptions import InvalidInputError, InvalidSigmaError

Point = tuple[float, ...]

VME_BASE_DRAWS = 1024.0
VME_BASE_SIGMA = 1800.0


def as_point(coords) -> Point:
    """Normalise a coordinate sequence to a finite float tuple."""
    pt = tuple(float(c) for c in coords)
    for c in pt:
        if not math.isfinite(c):
            raise InvalidInputError(f"point has non-finite coordinate: {pt}")
    return pt


def standard_normal(rng) -> float:
    """One N(0, 1) variate from a seeded generator, as a plain float."""
    return float(rng.standard_normal())


def draws_for_sigma(sigma: float) -> float:
    """Equivalent Monte-Carlo draw cost of one observation at ``sigma``.

    An estimate with standard deviation ``sigma`` costs ``1 / sigma**2``
    draws; the count is real-valued, not an integer.
    """
    if not sigma > 0:
        raise InvalidSigmaError(f"sigma must be positive, got {sigma}")
    return 1.0 / (sigma * sigma)


def vme_draws_for_sigma(sigma: float) -> float:
    """Draw cost under the asset-simulator preconditioning.

    Calibrated so that 2**10 draws correspond to sigma = 1800, with sigma
    halving whenever the draw count quadruples:
    ``N = 2**10 * 1800**2 / sigma**2``.
    """
    if not sigma > 0:
        raise InvalidSigmaError(f"sigma must be positive, got {sigma}")
    return VME_BASE_DRAWS * VME_BASE_SIGMA * VME_BASE_SIGMA / (sigma * sigma)


@dataclass(frozen=True)
class Observation:
    """One noisy evaluation: the value seen and the sigma it was requested at."""

    value: float
    sigma: float
    feasible: bool = True

    @staticmethod
    def infeasible() -> "Observation":
        return Observation(value=math.inf, sigma=math.inf, feasible=False)


@dataclass
class DrawLedger:
    """Exact running account of the equivalent Monte-Carlo draws consumed."""

    total_draws: float = 0.0
    per_eval_log: list[tuple[Point, float, float]] = field(default_factory=list)

    def charge(self, point: Point, sigma: float, draws: float) -> None:
        self.total_draws += draws
        self.per_eval_log.append((point, sigma, draws))


class NoisyBlackbox:
    """Solver-facing view of a problem: feasibility plus noisy observations.

    A blackbox instance (with its ledger) belongs to a single run and is
    used from one thread; independent runs build independent instances.
    """

    def __init__(
        self,
        truth: Callable[[Point], float],
        feasible: Callable[[Point], bool],
        dimension: int,
        sigma_max: float = 1.0,
        draw_cost: Callable[[float], float] = draws_for_sigma,
    ):
        self._truth = truth
        self._feasible = feasible
        self.dimension = int(dimension)
        self.sigma_max = float(sigma_max)
        self._draw_cost = draw_cost
        self.ledger = DrawLedger()

    def feasible(self, x: Point) -> bool:
        return bool(self._feasible(x))

    def observe(self, x: Point, sigma: float, rng) -> Observation:
        """Observe the objective at ``x`` with noise level ``sigma``.

        Feasible points return ``truth(x) + z * sigma`` with ``z`` standard
        normal and charge ``draw_cost(sigma)`` to the ledger. Infeasible
        points return an infeasible observation, consume no randomness and
        cost nothing.
        """
        if len(x) != self.dimension:
            raise InvalidInputError(
                f"point has dimension {len(x)}, expected {self.dimension}"
            )
        for c in x:
            if not math.isfinite(c):
                raise InvalidInputError(f"point has non-finite coordinate: {x}")
        if not sigma > 0 or sigma > self.sigma_max:
            raise InvalidSigmaError(
                f"sigma must lie in (0, {self.sigma_max}], got {sigma}"
            )
        if not self._feasible(x):
            return Observation.infeasible()
        value = self._truth(x) + standard_normal(rng) * sigma
        self.ledger.charge(x, sigma, self._draw_cost(sigma))
        return Observation(value=value, sigma=sigma, feasible=True)
