"""Controlled Lorenz-family vector field and its basic geometry.

The model is the classical Lorenz system with a state feedback
u = M x + N y + P x z added to the second equation:

    x' = a (y - x)
    y' = (c + M) x + (N - 1) y - (1 - P) x z
    z' = -b z + x y

M = N = P = 0 recovers the Lorenz equations with the usual (sigma, r, b)
playing the roles of (a, c, b).  The Chen, Lu and T systems arise from
specific (M, N, P) choices, see :func:`from_preset`.  The field is
equivariant under the rotation (x, y, z) -> (-x, -y, z) for every
parameter choice, which the implementation preserves exactly in floating
point (all x/y-linear and x*z terms are products with sign-symmetric
rounding).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np


class State(NamedTuple):
    """A phase-space point."""

    x: float
    y: float
    z: float


class Preset(enum.Enum):
    """Named members of the family, as (M, N, P) mappings."""

    LORENZ = "lorenz"
    CHEN = "chen"
    LU = "lu"
    T_SYSTEM = "t"


@dataclass(frozen=True)
class SystemParams:
    """Parameters of the controlled system.

    a, b, c are the plant parameters; M, N, P are the feedback gains.
    All six must be finite reals.
    """

    a: float
    b: float
    c: float
    M: float = 0.0
    N: float = 0.0
    P: float = 0.0

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "M", "N", "P"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"parameter {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)


def from_preset(preset: Preset, a: float, b: float, c: float) -> SystemParams:
    """Build parameters for one of the named systems.

    Gains: Lorenz (0, 0, 0); Chen (-a, 1 + c, 0); Lu (-c, 1 + c, 0);
    T system (-a, 1, 1 - a).
    """
    if preset is Preset.LORENZ:
        gains = (0.0, 0.0, 0.0)
    elif preset is Preset.CHEN:
        gains = (-a, 1.0 + c, 0.0)
    elif preset is Preset.LU:
        gains = (-c, 1.0 + c, 0.0)
    elif preset is Preset.T_SYSTEM:
        gains = (-a, 1.0, 1.0 - a)
    else:
        raise TypeError(f"unknown preset {preset!r}")
    return SystemParams(a=a, b=b, c=c, M=gains[0], N=gains[1], P=gains[2])


def vector_field(p: SystemParams, s: State | tuple) -> State:
    """Right-hand side of the controlled system at state s."""
    x, y, z = s
    return State(
        p.a * (y - x),
        (p.c + p.M) * x + (p.N - 1.0) * y - (1.0 - p.P) * (x * z),
        -p.b * z + x * y,
    )


def _bound_rhs(p: SystemParams) -> Callable[[tuple], tuple]:
    """Closure over fixed parameters for integrator hot loops.

    Must produce bit-identical results to :func:`vector_field`; the
    grouped constants (c + M), (N - 1), (1 - P) below match the
    per-call expressions there.
    """
    a = p.a
    b = p.b
    cm = p.c + p.M
    n1 = p.N - 1.0
    pp = 1.0 - p.P

    def rhs(s: tuple) -> tuple:
        x, y, z = s
        return (a * (y - x), cm * x + n1 * y - pp * (x * z), -b * z + x * y)

    return rhs


def jacobian(p: SystemParams, s: State | tuple) -> np.ndarray:
    """Jacobian matrix of the vector field at state s (3x3 float array)."""
    x, y, z = s
    pp = 1.0 - p.P
    return np.array(
        [
            [-p.a, p.a, 0.0],
            [p.c + p.M - pp * z, p.N - 1.0, -pp * x],
            [y, x, -p.b],
        ]
    )


def apply_symmetry(s: State | tuple) -> State:
    """The order-two symmetry (x, y, z) -> (-x, -y, z)."""
    x, y, z = s
    return State(-x, -y, z)
