"""Global convergence certificate for the controlled family.

For a > 0 and P != 1 define

    V(x, y, z) = A (x - y)^2 + (b z - x^2)^2 + B (x^2 - K)^2

    A = b (b - 2a) / (1 - P),   B = (b - 2a) / (2a),
    K = b (M + N + c - 1) / (1 - P).

Along solutions the orbital derivative collapses to

    dV/dt = -2 A (a + 1 - N) (x - y)^2 - 2 b (b z - x^2)^2,

which is nonpositive whenever a > 0, b > 0, (b - 2a)/(1 - P) >= 0 and
N <= 1 + a.  Note the middle term must be (b z - x^2)^2, not
(z - x^2 / b)^2: only the former reproduces the displayed derivative,
as the test suite checks symbolically term by term.  Under these
hypotheses the system has no closed orbits and no homoclinic loops; if
additionally b >= 2a and P < 1 then V is radially unbounded and every
solution converges to an equilibrium, and if on top of that c + M > 0
and (M + N + c - 1)/(1 - P) > 0 the one-dimensional unstable manifold
of the origin closes up into a symmetric heteroclinic pair connecting
the origin to E+ and E-.

A flag being False means "not certified by these conditions", never a
claim that the property fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateParamsError, UnsupportedPresetError
from .model import Preset, State, SystemParams, vector_field


@dataclass(frozen=True)
class LyapunovCoefficients:
    """Weights of the three quadratic groups in V."""

    A: float
    B: float
    K: float


@dataclass(frozen=True)
class HypothesisFlags:
    """Nested hypothesis levels; each level implies the ones before it.

    lemma_ok: a > 0, b > 0, (b - 2a)/(1 - P) >= 0, N - 1 - a <= 0.
    conv_ok: lemma_ok plus b - 2a >= 0 and P < 1.
    het_ok: conv_ok plus c + M > 0 and (M + N + c - 1)/(1 - P) > 0.
    """

    lemma_ok: bool
    conv_ok: bool
    het_ok: bool


@dataclass(frozen=True)
class CertificateReport:
    """What the certificate established for one parameter choice."""

    flags: HypothesisFlags
    no_closed_orbits: bool
    no_homoclinic: bool
    converges_to_equilibria: bool
    heteroclinic_pair: bool
    chaos_possible: bool  # the necessary condition b < 2a


def lyapunov_coefficients(p: SystemParams) -> LyapunovCoefficients:
    """Coefficients (A, B, K) of V; requires a != 0 and P != 1."""
    if p.a == 0.0:
        raise DegenerateParamsError("a = 0: coefficient B is undefined")
    if p.P == 1.0:
        raise DegenerateParamsError("P = 1: coefficients A and K are undefined")
    one_minus_p = 1.0 - p.P
    b2a = p.b - 2.0 * p.a
    return LyapunovCoefficients(
        A=p.b * b2a / one_minus_p,
        B=b2a / (2.0 * p.a),
        K=p.b * (p.M + p.N + p.c - 1.0) / one_minus_p,
    )


def v_value(p: SystemParams, s: State | tuple) -> float:
    """V(s) = A (x - y)^2 + (b z - x^2)^2 + B (x^2 - K)^2."""
    co = lyapunov_coefficients(p)
    x, y, z = s
    g1 = x - y
    g2 = p.b * z - x * x
    g3 = x * x - co.K
    return co.A * (g1 * g1) + g2 * g2 + co.B * (g3 * g3)


def v_gradient(p: SystemParams, s: State | tuple) -> tuple[float, float, float]:
    """Exact gradient of V."""
    co = lyapunov_coefficients(p)
    x, y, z = s
    g1 = x - y
    g2 = p.b * z - x * x
    g3 = x * x - co.K
    return (
        2.0 * co.A * g1 - 4.0 * x * g2 + 4.0 * co.B * (x * g3),
        -2.0 * co.A * g1,
        2.0 * p.b * g2,
    )


def v_dot(p: SystemParams, s: State | tuple) -> float:
    """Orbital derivative dV/dt = grad V . f, by the chain rule."""
    gx, gy, gz = v_gradient(p, s)
    fx, fy, fz = vector_field(p, s)
    return gx * fx + gy * fy + gz * fz


def v_dot_closed_form(p: SystemParams, s: State | tuple) -> float:
    """The collapsed orbital derivative -2A(a+1-N)(x-y)^2 - 2b(bz-x^2)^2."""
    co = lyapunov_coefficients(p)
    x, y, z = s
    g1 = x - y
    g2 = p.b * z - x * x
    return -2.0 * co.A * (p.a + 1.0 - p.N) * (g1 * g1) - 2.0 * p.b * (g2 * g2)


def _strictly_positive(v: float, tol: float) -> bool:
    return v > tol * (1.0 + abs(v))


def _nonneg(v: float, tol: float) -> bool:
    return v >= -tol * (1.0 + abs(v))


def _nonpos(v: float, tol: float) -> bool:
    return v <= tol * (1.0 + abs(v))


def hypotheses_check(p: SystemParams, tol: float = 1e-12) -> HypothesisFlags:
    """Evaluate the nested hypothesis levels with a relative sign band.

    Strict inequalities must clear the band tol * (1 + |value|); non-strict
    ones may sit inside it.  P ~ 1 (where V degenerates) fails lemma_ok
    outright instead of passing vacuously through the sign of the ratio.
    """
    one_minus_p = 1.0 - p.P
    p_ok = abs(one_minus_p) > tol * (1.0 + abs(p.P))
    lemma_ok = (
        _strictly_positive(p.a, tol)
        and _strictly_positive(p.b, tol)
        and p_ok
        and _nonneg((p.b - 2.0 * p.a) / one_minus_p, tol)
        and _nonpos(p.N - 1.0 - p.a, tol)
    )
    conv_ok = (
        lemma_ok
        and _nonneg(p.b - 2.0 * p.a, tol)
        and _strictly_positive(one_minus_p, tol)
    )
    het_ok = (
        conv_ok
        and _strictly_positive(p.c + p.M, tol)
        and _strictly_positive((p.M + p.N + p.c - 1.0) / one_minus_p, tol)
    )
    return HypothesisFlags(lemma_ok=lemma_ok, conv_ok=conv_ok, het_ok=het_ok)


def certificate(p: SystemParams, tol: float = 1e-12) -> CertificateReport:
    """Bundle the hypothesis flags into the properties they certify."""
    flags = hypotheses_check(p, tol)
    return CertificateReport(
        flags=flags,
        no_closed_orbits=flags.lemma_ok,
        no_homoclinic=flags.lemma_ok,
        converges_to_equilibria=flags.conv_ok,
        heteroclinic_pair=flags.het_ok,
        chaos_possible=p.b < 2.0 * p.a,
    )


def corollary_check(
    preset: Preset, a: float, b: float, c: float, tol: float = 1e-12
) -> bool:
    """Preset-specific convergence conditions in the plant parameters.

    Lorenz: c > 1, b >= 2a, a > 0.  Chen: 2c - a > 0 and
    (b - 2a)(c - a) <= 0.  T system: c - a > 0 and b - 2a <= 0.
    The Lu preset has no such reduction here and raises.
    """
    if preset is Preset.LORENZ:
        return (
            _strictly_positive(c - 1.0, tol)
            and _nonneg(b - 2.0 * a, tol)
            and _strictly_positive(a, tol)
        )
    if preset is Preset.CHEN:
        return _strictly_positive(2.0 * c - a, tol) and _nonpos(
            (b - 2.0 * a) * (c - a), tol
        )
    if preset is Preset.T_SYSTEM:
        return _strictly_positive(c - a, tol) and _nonpos(b - 2.0 * a, tol)
    if preset is Preset.LU:
        raise UnsupportedPresetError(
            "no convergence conditions are defined for the Lu preset"
        )
    raise TypeError(f"unknown preset {preset!r}")
