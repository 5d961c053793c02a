"""Binary-mesh geometry and the orthogonal poll-direction generator.

All trial points live on the lattice {center + delta_m * z, z integer}.
The frame size delta_p bounds how far candidates may stray from the
center (in max norm) and couples to the mesh size through
delta_m = min(delta_p, delta_p**2). Frame updates use powers of two only,
which keeps all mesh arithmetic exact in binary floating point.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .blackbox import Point
from .exceptions import InvalidInputError


class IterationStatus(Enum):
    SUCCESS = "S"
    FAILURE = "F"
    BARRIER = "B"


def mesh_size(delta_p: float) -> float:
    """Mesh size coupled to the frame size: min(delta_p, delta_p**2)."""
    if not delta_p > 0:
        raise InvalidInputError(f"delta_p must be positive, got {delta_p}")
    return min(delta_p, delta_p * delta_p)


@dataclass(frozen=True)
class PollSet:
    """2n mesh candidates around a center, with their integer mesh steps."""

    center: Point
    delta_p: float
    delta_m: float
    directions: tuple[tuple[float, ...], ...]
    points: tuple[Point, ...]


def generate_poll(center: Point, delta_p: float, rng) -> PollSet:
    """Candidates from a rounded random orthogonal basis, mirrored.

    The rows of the Householder reflection of a random unit direction are
    scaled to the frame radius in mesh units and rounded half away from
    zero, giving an integer basis whose +/- rows positively span R^n while
    every candidate stays on the mesh and inside the frame. A row rounded
    to zero is replaced by a signed axis row; a (rare) singular rounding
    falls back to the axis basis.
    """
    n = len(center)
    delta_m = mesh_size(delta_p)
    radius = max(1.0, math.floor(delta_p / delta_m))

    v = rng.standard_normal(n)
    norm = float(np.linalg.norm(v))
    while norm == 0.0:
        v = rng.standard_normal(n)
        norm = float(np.linalg.norm(v))
    v = v / norm
    house = np.eye(n) - 2.0 * np.outer(v, v)

    basis = np.copysign(np.floor(np.abs(radius * house) + 0.5), house)
    for i in range(n):
        if not basis[i].any():
            j = int(np.argmax(np.abs(house[i])))
            basis[i, j] = math.copysign(1.0, house[i, j])
    if radius < n and round(float(np.linalg.det(basis))) == 0:
        basis = radius * np.eye(n)

    steps = np.vstack([basis, -basis])
    center_arr = np.asarray(center, dtype=float)
    points = tuple(
        tuple(float(c) for c in center_arr + delta_m * z) for z in steps
    )
    directions = tuple(tuple(float(e) for e in z) for z in steps)
    return PollSet(
        center=tuple(center),
        delta_p=delta_p,
        delta_m=delta_m,
        directions=directions,
        points=points,
    )


def update_frame(
    delta_p: float,
    status: IterationStatus,
    p: float,
    beta_l: float,
    beta_u: float,
) -> float:
    """Next frame size after an iteration.

    Successes double the frame only when decisively better (p > beta_u);
    failures halve it only when decisively worse (p < beta_l); an all-
    infeasible poll halves it unconditionally.
    """
    if status is IterationStatus.SUCCESS:
        return 2.0 * delta_p if p > beta_u else delta_p
    if status is IterationStatus.FAILURE:
        return delta_p / 2.0 if p < beta_l else delta_p
    return delta_p / 2.0


def on_mesh(point: Point, origin: Point, delta: float, rel_tol: float = 1e-9) -> bool:
    """Check that ``point`` lies on the lattice origin + delta * Z^n.

    Mesh arithmetic with power-of-two sizes is exact in binary floating
    point except when an addition crosses a binade boundary, which rounds
    the sum by at most half an ulp. The off-lattice residual is therefore
    computed exactly (rational arithmetic) and compared against a
    coordinate-scale-relative tolerance: legitimate roundings sit around
    1e-16 of the coordinate scale, while genuine violations are fractions
    of ``delta``.
    """
    if not delta > 0:
        raise InvalidInputError(f"delta must be positive, got {delta}")
    d = Fraction(delta)
    for c, o in zip(point, origin):
        q = (Fraction(c) - Fraction(o)) / d
        nearest = round(q)
        residual = abs(q - nearest) * d  # exact off-lattice distance
        if residual > rel_tol * max(abs(c), abs(o), delta):
            return False
    return True
