"""Command-line workbench around the library.

Exit codes: 0 success, 2 usage error, 3 numerical or domain failure
(divergence, step limit, degenerate parameters and the like), 4 I/O
failure.  Output is plain text (JSON or CSV) with no terminal styling,
so NO_COLOR environments get exactly the same bytes as everyone else.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .chaos import largest_lyapunov_exponent, regime_classify, suggest_anticontrol
from .equilibria import classify_origin, find_equilibria, origin_eigenvalues
from .errors import (
    DegenerateBError,
    DegenerateParamsError,
    DivergedTrajectoryError,
    EigenvalueCollisionError,
    NotASaddleError,
    NotStableRegimeError,
    UnsupportedFormatError,
    UnsupportedPresetError,
)
from .integrator import (
    IntegratorMode,
    IntegratorSettings,
    TrajectoryStatus,
    integrate,
)
from .lyapunov import certificate
from .model import Preset, State, SystemParams, from_preset
from .orbits import Branch, branch_symmetry_deviation, trace_heteroclinic
from .serialize import emit, to_jsonable
from .sweep import TASKS, SweepAxis, SweepSpec, run_sweep

_NUMERICAL_ERRORS = (
    DegenerateBError,
    DegenerateParamsError,
    DivergedTrajectoryError,
    EigenvalueCollisionError,
    NotASaddleError,
    NotStableRegimeError,
    UnsupportedPresetError,
)


class _UsageError(Exception):
    pass


def _add_system_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("system")
    group.add_argument("--preset", choices=[p.value for p in Preset], default=None)
    group.add_argument("--a", type=float, required=True)
    group.add_argument("--b", type=float, required=True)
    group.add_argument("--c", type=float, required=True)
    group.add_argument("--M", type=float, default=None, help="feedback gain on x")
    group.add_argument("--N", type=float, default=None, help="feedback gain on y")
    group.add_argument("--P", type=float, default=None, help="feedback gain on x*z")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("output")
    group.add_argument("--format", choices=["json", "csv"], default="json")
    group.add_argument("--out", default=None, help="output path (default stdout)")


def _add_integrator_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("integrator")
    group.add_argument(
        "--mode", choices=["adaptive", "fixed_rk4"], default="adaptive"
    )
    group.add_argument("--dt", type=float, default=1e-3, help="initial/fixed step")
    group.add_argument("--rel-tol", type=float, default=1e-9)
    group.add_argument("--abs-tol", type=float, default=1e-12)
    group.add_argument("--t-max", type=float, default=200.0)
    group.add_argument("--max-steps", type=int, default=1_000_000)
    group.add_argument("--blowup-norm", type=float, default=1e6)


def _params(args: argparse.Namespace) -> SystemParams:
    if args.preset is not None:
        p = from_preset(Preset(args.preset), args.a, args.b, args.c)
        overrides = {
            name: getattr(args, name)
            for name in ("M", "N", "P")
            if getattr(args, name) is not None
        }
        return replace(p, **overrides) if overrides else p
    return SystemParams(
        a=args.a,
        b=args.b,
        c=args.c,
        M=args.M if args.M is not None else 0.0,
        N=args.N if args.N is not None else 0.0,
        P=args.P if args.P is not None else 0.0,
    )


def _settings(args: argparse.Namespace) -> IntegratorSettings:
    return IntegratorSettings(
        mode=IntegratorMode(args.mode),
        dt_init=args.dt,
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        t_max=args.t_max,
        max_steps=args.max_steps,
        blowup_norm=args.blowup_norm,
    )


def _cmd_equilibria(args) -> int:
    eqs = find_equilibria(_params(args), residual_tol=args.residual_tol)
    emit(eqs, args.format, args.out)
    return 0


def _cmd_classify(args) -> int:
    p = _params(args)
    payload = {
        "origin_class": classify_origin(p, tol=args.tol),
        "eigenvalues": list(origin_eigenvalues(p)),
    }
    emit(payload, args.format, args.out)
    return 0


def _cmd_certificate(args) -> int:
    emit(certificate(_params(args), tol=args.tol), args.format, args.out)
    return 0


def _cmd_simulate(args) -> int:
    trajectory = integrate(
        _params(args), State(args.x0, args.y0, args.z0), _settings(args)
    )
    emit(trajectory, args.format, args.out)
    if trajectory.status in (TrajectoryStatus.DIVERGED, TrajectoryStatus.STEP_LIMIT):
        return 3
    return 0


def _het_summary(result) -> dict:
    trajectory = result.trajectory
    return {
        "branch": result.branch,
        "epsilon": result.epsilon,
        "success": result.success,
        "certified": result.certified,
        "extremal_x": result.extremal_x,
        "terminal": result.terminal,
        "status": trajectory.status,
        "steps": len(trajectory.times) - 1,
        "final_time": trajectory.times[-1],
        "final_state": trajectory.states[-1],
    }


def _cmd_heteroclinic(args) -> int:
    p = _params(args)
    settings = _settings(args)
    kwargs = dict(
        epsilon=args.epsilon, settings=settings, capture_radius=args.capture_radius
    )
    if args.branch == "both":
        plus = trace_heteroclinic(p, Branch.PLUS_X, **kwargs)
        minus = trace_heteroclinic(p, Branch.MINUS_X, **kwargs)
        deviation = None
        if len(plus.trajectory.states) == len(minus.trajectory.states):
            deviation = branch_symmetry_deviation(plus, minus)
        payload = {
            "plus": _het_summary(plus),
            "minus": _het_summary(minus),
            "symmetry_deviation": deviation,
        }
        emit(payload, args.format, args.out)
        results = (plus, minus)
    else:
        branch = Branch.PLUS_X if args.branch == "plus" else Branch.MINUS_X
        result = trace_heteroclinic(p, branch, **kwargs)
        if args.format == "csv":
            emit(result.trajectory, "csv", args.out)
        else:
            emit(_het_summary(result), "json", args.out)
        results = (result,)
    bad = (TrajectoryStatus.DIVERGED, TrajectoryStatus.STEP_LIMIT)
    if any(r.trajectory.status in bad for r in results):
        return 3
    return 0


def _cmd_lle(args) -> int:
    estimate = largest_lyapunov_exponent(
        _params(args),
        u0=State(args.x0, args.y0, args.z0),
        settings=_settings(args),
        renorm_interval=args.renorm_interval,
        horizon=args.horizon,
        transient=args.transient,
    )
    emit(estimate, args.format, args.out)
    return 0


def _cmd_regime(args) -> int:
    emit({"regime": regime_classify(_params(args), tol=args.tol)}, args.format, args.out)
    return 0


def _cmd_suggest(args) -> int:
    suggestion = suggest_anticontrol(args.a, args.b, args.c, args.margin)
    payload = to_jsonable(suggestion)
    if args.verify_lle:
        estimate = largest_lyapunov_exponent(
            suggestion.params,
            settings=_settings(args),
            renorm_interval=args.renorm_interval,
            horizon=args.horizon,
            transient=args.transient,
        )
        payload["lle"] = estimate.lambda1
    emit(payload, args.format, args.out)
    return 0


def _parse_axis(text: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise _UsageError(f"--axis expects NAME:START:STOP:COUNT, got {text!r}")
    name, start, stop, count = parts
    try:
        return SweepAxis(name, float(start), float(stop), int(count))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _cmd_sweep(args) -> int:
    if not args.axis:
        raise _UsageError("at least one --axis is required")
    if len(args.axis) > 2:
        raise _UsageError("at most two --axis options are allowed")
    axes = tuple(_parse_axis(text) for text in args.axis)
    tasks = tuple(t.strip() for t in args.tasks.split(",") if t.strip())
    try:
        spec = SweepSpec(
            base=_params(args),
            axes=axes,
            tasks=tasks,
            seed=args.seed,
            settings=_settings(args),
            lle_renorm_interval=args.renorm_interval,
            lle_horizon=args.horizon,
            lle_transient=args.transient,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    result = run_sweep(spec, workers=args.workers)
    emit(result, args.format, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorenzlab",
        description="Equilibria, convergence certificates and chaos "
        "diagnostics for the feedback-controlled Lorenz family.",
        epilog="Output is plain JSON/CSV text; no color is ever emitted.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("equilibria", help="enumerate the equilibrium set")
    _add_system_flags(sp)
    _add_output_flags(sp)
    sp.add_argument("--residual-tol", type=float, default=1e-9)
    sp.set_defaults(func=_cmd_equilibria)

    sp = sub.add_parser("classify", help="linear type of the origin")
    _add_system_flags(sp)
    _add_output_flags(sp)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("certificate", help="convergence certificate flags")
    _add_system_flags(sp)
    _add_output_flags(sp)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=_cmd_certificate)

    sp = sub.add_parser("simulate", help="integrate one trajectory")
    _add_system_flags(sp)
    _add_output_flags(sp)
    _add_integrator_flags(sp)
    sp.add_argument("--x0", type=float, required=True)
    sp.add_argument("--y0", type=float, required=True)
    sp.add_argument("--z0", type=float, required=True)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser(
        "heteroclinic", help="trace the origin's unstable manifold branches"
    )
    _add_system_flags(sp)
    _add_output_flags(sp)
    _add_integrator_flags(sp)
    sp.add_argument("--branch", choices=["plus", "minus", "both"], default="both")
    sp.add_argument("--epsilon", type=float, default=None)
    sp.add_argument("--capture-radius", type=float, default=1e-6)
    sp.set_defaults(func=_cmd_heteroclinic)

    sp = sub.add_parser("lle", help="largest Lyapunov exponent")
    _add_system_flags(sp)
    _add_output_flags(sp)
    _add_integrator_flags(sp)
    sp.add_argument("--x0", type=float, default=1.0)
    sp.add_argument("--y0", type=float, default=1.0)
    sp.add_argument("--z0", type=float, default=1.0)
    sp.add_argument("--renorm-interval", type=float, default=1.0)
    sp.add_argument("--horizon", type=float, default=500.0)
    sp.add_argument("--transient", type=float, default=50.0)
    sp.set_defaults(func=_cmd_lle)

    sp = sub.add_parser("regime", help="provably regular / chaos candidate")
    _add_system_flags(sp)
    _add_output_flags(sp)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=_cmd_regime)

    sp = sub.add_parser(
        "suggest-anticontrol", help="feedback gains that cross the pitchfork"
    )
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--margin", type=float, required=True)
    sp.add_argument(
        "--verify-lle",
        action="store_true",
        help="also run the exponent on the suggested parameters",
    )
    _add_output_flags(sp)
    _add_integrator_flags(sp)
    sp.add_argument("--renorm-interval", type=float, default=1.0)
    sp.add_argument("--horizon", type=float, default=500.0)
    sp.add_argument("--transient", type=float, default=50.0)
    sp.set_defaults(func=_cmd_suggest)

    sp = sub.add_parser("sweep", help="grid sweep over one or two parameters")
    _add_system_flags(sp)
    _add_output_flags(sp)
    _add_integrator_flags(sp)
    sp.add_argument(
        "--axis",
        action="append",
        default=[],
        metavar="NAME:START:STOP:COUNT",
        help="sweep axis; repeat for a two-axis grid",
    )
    sp.add_argument("--tasks", default="equilibria", help=f"comma list from {TASKS}")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--renorm-interval", type=float, default=1.0)
    sp.add_argument("--horizon", type=float, default=500.0)
    sp.add_argument("--transient", type=float, default=50.0)
    sp.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERICAL_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
