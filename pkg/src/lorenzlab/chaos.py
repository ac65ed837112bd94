"""Chaos diagnostics: largest Lyapunov exponent, regime labels, anticontrol.

The largest Lyapunov exponent is estimated by integrating the variational
system (base orbit plus one tangent vector) and renormalizing the tangent
at fixed intervals; the exponent is the time average of the logarithmic
growth between renormalizations after a transient is discarded.

Anticontrol here means pushing a globally stable plant (0 < c < 1, so the
origin attracts) across the pitchfork by feedback: with N = P = 0 and
M chosen near (1 - c) + margin the offset d = M + N + c - 1 reproduces the
margin as closely as the float grid allows, the origin becomes a saddle
and the symmetric pair appears.  Crossing the
pitchfork is necessary for a Lorenz-like attractor, not sufficient; b < 2a
is a further necessary condition for chaos, and an exponent run is the
only check performed here that positive entropy actually shows up.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .equilibria import EquilibriumKind, OriginClass, classify_origin, find_equilibria
from .errors import DegenerateBError, DivergedTrajectoryError, NotStableRegimeError
from .integrator import IntegratorSettings, TrajectoryStatus, _drive
from .lyapunov import certificate
from .model import State, SystemParams


@dataclass(frozen=True)
class LLEEstimate:
    """Largest Lyapunov exponent with its convergence history.

    ``history[k]`` is the running estimate after the (k+1)-th accumulated
    renormalization window; ``lambda1`` equals the final entry.
    """

    lambda1: float
    history: tuple[float, ...]
    transient_discarded: float
    horizon: float


class RegimeLabel(enum.Enum):
    PROVABLY_REGULAR = "provably_regular"
    CHAOS_CANDIDATE = "chaos_candidate"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class AnticontrolSuggestion:
    """Feedback gains that push a stable plant across the pitchfork."""

    params: SystemParams
    margin: float
    chaos_possible: bool  # necessary condition b < 2a on the plant
    origin_class: OriginClass
    equilibria_kind: EquilibriumKind
    note: str


def _variational_rhs(p: SystemParams):
    """Joint right-hand side for (x, y, z, dx, dy, dz)."""
    a = p.a
    b = p.b
    cm = p.c + p.M
    n1 = p.N - 1.0
    pp = 1.0 - p.P

    def rhs(s: tuple) -> tuple:
        x, y, z, dx, dy, dz = s
        return (
            a * (y - x),
            cm * x + n1 * y - pp * (x * z),
            -b * z + x * y,
            a * (dy - dx),
            (cm - pp * z) * dx + n1 * dy - pp * x * dz,
            y * dx + x * dy - b * dz,
        )

    return rhs


def largest_lyapunov_exponent(
    p: SystemParams,
    u0: State | tuple = State(1.0, 1.0, 1.0),
    settings: IntegratorSettings | None = None,
    renorm_interval: float = 1.0,
    horizon: float = 500.0,
    transient: float = 50.0,
) -> LLEEstimate:
    """Benettin-style estimate of the largest Lyapunov exponent.

    The tangent starts at (1, 0, 0) and is rescaled to unit length every
    ``renorm_interval`` time units; log-growth accumulates from the end of
    the transient to the horizon.  Raises DivergedTrajectoryError when the
    base orbit blows up or stops making progress.
    """
    if settings is None:
        settings = IntegratorSettings()
    if renorm_interval <= 0.0:
        raise ValueError("renorm_interval must be positive")
    if transient < 0.0 or horizon <= transient:
        raise ValueError("need horizon > transient >= 0")
    n_total = int(round(horizon / renorm_interval))
    n_trans = int(round(transient / renorm_interval))
    if n_total <= n_trans:
        raise ValueError("horizon leaves no window after the transient")

    f = _variational_rhs(p)
    s = (float(u0[0]), float(u0[1]), float(u0[2]), 1.0, 0.0, 0.0)
    dt = settings.dt_init
    log_sum = 0.0
    history: list[float] = []
    for w in range(n_total):
        res = _drive(f, s, settings, renorm_interval, record=False, dt_start=dt)
        if res.status is not TrajectoryStatus.COMPLETED_TSPAN:
            raise DivergedTrajectoryError(
                f"base orbit failed during window {w}: {res.status.value}"
            )
        dt = res.dt
        x, y, z, dx, dy, dz = res.state
        nrm = math.sqrt(dx * dx + dy * dy + dz * dz)
        if nrm == 0.0 or not math.isfinite(nrm):
            raise DivergedTrajectoryError("tangent vector degenerated")
        if w >= n_trans:
            log_sum += math.log(nrm)
            elapsed = (w + 1 - n_trans) * renorm_interval
            history.append(log_sum / elapsed)
        s = (x, y, z, dx / nrm, dy / nrm, dz / nrm)

    return LLEEstimate(
        lambda1=history[-1],
        history=tuple(history),
        transient_discarded=n_trans * renorm_interval,
        horizon=n_total * renorm_interval,
    )


def regime_classify(p: SystemParams, tol: float = 1e-12) -> RegimeLabel:
    """Conservative regime label from the certificate and the spectra.

    PROVABLY_REGULAR when the convergence certificate holds.  A chaos
    candidate needs the necessary condition b < 2a, the full symmetric
    triple of equilibria, and every one of them linearly unstable.  All
    remaining cases are UNDETERMINED.
    """
    cert = certificate(p, tol)
    if cert.converges_to_equilibria:
        return RegimeLabel.PROVABLY_REGULAR
    if cert.chaos_possible:
        try:
            eqs = find_equilibria(p)
        except DegenerateBError:
            return RegimeLabel.UNDETERMINED
        if eqs.kind is EquilibriumKind.TRIPLE:
            e_plus, e_minus = eqs.pair
            if (
                eqs.origin.unstable_dim >= 1
                and e_plus.unstable_dim >= 1
                and e_minus.unstable_dim >= 1
            ):
                return RegimeLabel.CHAOS_CANDIDATE
    return RegimeLabel.UNDETERMINED


def suggest_anticontrol(
    a: float, b: float, c: float, margin: float
) -> AnticontrolSuggestion:
    """Gains making the stable plant (0 < c < 1) cross the pitchfork.

    Sets N = P = 0 and M = (1 - c) + margin, then nudges M onto the float
    grid so the offset M + N + c - 1 reproduces ``margin`` exactly whenever
    some double M can (the offset lives on the grid of 1 + margin, which is
    coarser than the grid of margin itself for about half of all margins;
    those get the nearest representable offset).  Raises
    NotStableRegimeError unless 0 < c < 1.
    """
    if not (a > 0.0 and b > 0.0):
        raise ValueError("plant parameters a and b must be positive")
    if not margin > 0.0:
        raise ValueError("margin must be positive")
    if not 0.0 < c < 1.0:
        raise NotStableRegimeError(
            f"anticontrol assumes a stable plant with 0 < c < 1, got c = {c}"
        )
    # a residual-feedback iteration can limit-cycle when the correction
    # lands on a half-ulp tie, so search the grid around the seed instead;
    # the seed is within ~2 ulps of optimal, ties keep the earlier (lower
    # |k|, negative first) candidate
    m_seed = (1.0 - c) + margin
    step = math.ulp(m_seed)
    m_gain, best = m_seed, math.inf
    for k in (0, -1, 1, -2, 2, -3, 3, -4, 4):
        m_k = m_seed + k * step
        achieved = (m_k + 0.0) + c - 1.0  # same grouping as M + N + c - 1
        err = abs(achieved - margin)
        if err < best:
            m_gain, best = m_k, err
            if err == 0.0:
                break
    params = SystemParams(a=a, b=b, c=c, M=m_gain, N=0.0, P=0.0)
    chaos_possible = b < 2.0 * a
    if chaos_possible:
        tail = "b < 2a holds, so chaos is not excluded; confirm with an exponent run"
    else:
        tail = "b >= 2a, so trajectories still converge and chaos is excluded"
    return AnticontrolSuggestion(
        params=params,
        margin=margin,
        chaos_possible=chaos_possible,
        origin_class=classify_origin(params),
        equilibria_kind=find_equilibria(params).kind,
        note=(
            "pitchfork crossed: origin destabilized and the symmetric pair "
            "exists; crossing is necessary but not sufficient for chaos; "
            + tail
        ),
    )
