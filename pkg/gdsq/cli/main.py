# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Command line front end.

Exit status: 0 when a check passes or a command completes, 2 when a check fails where
a pass is predicted, 3 when inconclusive, 1 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any, NamedTuple

import numpy as np

from .. import __version__
from ..composition import (
    Verdict,
    composed_evaluate,
    composition_jacobian,
    composition_jacobian_ad,
    image_gap,
    immersion_check,
    injective_immersion_check,
    injectivity_check,
)
from ..composition.immersion import DEFAULT_REFINE_ROUNDS
from ..composition.injectivity import DEFAULT_EXCLUSION, DEFAULT_STARTS
from ..exceptions import CollisionNotFoundError, ConfigError, GdsqError
from ..genericity import (
    construct_bad_p_immersion,
    construct_bad_p_injectivity,
    mc_genericity_immersion,
    mc_genericity_injectivity,
    pair_transversality_report,
)
from ..genericity.monte_carlo import DEFAULT_TRIALS
from ..manifolds import ParamManifold, manifold_from_descriptor
from ..maps import MAP_KIND_LIBRARY, GdsMap, map_from_descriptor, random_gds_map
from ..singularity import (
    classify_singular_point,
    conic_coefficients,
    det_jacobian,
    find_collision,
    is_singular_point,
    trace_singular_curve,
    verify_lemma_singular,
)
from ..singularity.lemmas import DEFAULT_ATTEMPTS
from ..singularity.tracing import DEFAULT_GRID, DEFAULT_STEP
from ..utils.linalg import smallest_singular_values
from .artifacts import dumps_report, write_csv, write_report, write_svg
from .config import THEOREMS, ExperimentConfig, load_config
from .plotting import svg_margin_histogram, svg_singular_curve

logger = logging.getLogger(__name__)

LOG_FORMAT: str = "[%(levelname)s] [%(name)s: %(funcName)s] %(message)s"

EXIT_OK: int = 0
EXIT_USAGE: int = 1
EXIT_FAILED: int = 2
EXIT_INCONCLUSIVE: int = 3


class Outcome(NamedTuple):
    """Result of a command: exit status, report body and optional CSV table and figure."""

    status: int
    result: dict[str, Any]
    header: tuple[str, ...] | None = None
    rows: list[tuple[Any, ...]] | None = None
    figure: str | None = None


def verdict_status(verdict: Verdict) -> int:
    """Exit status of a check verdict."""
    if verdict.passed:
        return EXIT_OK
    if verdict.failed:
        return EXIT_FAILED
    return EXIT_INCONCLUSIVE


################################################################################
## RESOLUTION
################################################################################
def _require(config: ExperimentConfig, name: str, command: str) -> Any:
    value = getattr(config, name)
    if value is None:
        raise ConfigError(f"Command {command!r} requires this option.", name)
    return value


def _manifold(config: ExperimentConfig, command: str) -> ParamManifold:
    return manifold_from_descriptor(_require(config, "manifold", command))


def _map(config: ExperimentConfig, command: str, dim: int | None) -> GdsMap:
    descriptor = _require(config, "map", command)
    return map_from_descriptor(descriptor, np.random.default_rng(config.seed), dim)


def _coefficients(config: ExperimentConfig, m: int) -> np.ndarray:
    """Coefficient matrix of the configured map, all ones if none is configured."""
    if config.map is None:
        return np.ones((m, m))
    if "A" in config.map:
        return np.asarray(config.map["A"], dtype=float)
    return MAP_KIND_LIBRARY[config.map["kind"]](np.zeros((m, m))).coefficients


def _params(config: ExperimentConfig, command: str, count: int) -> list[list[float]]:
    params = _require(config, "params", command)
    if len(params) < count:
        raise ConfigError(f"Command {command!r} requires {count} parameter points.", "params")
    return params[:count]


def _theorem(config: ExperimentConfig, command: str) -> str:
    theorem = _require(config, "theorem", command)
    if theorem not in THEOREMS:
        raise ConfigError(f"Unknown theorem {theorem!r}, expected one of {THEOREMS}.", "theorem")
    return theorem


################################################################################
## COMMANDS
################################################################################
def _eval(config: ExperimentConfig) -> Outcome:
    point = _require(config, "point", "eval")
    G = _map(config, "eval", len(point))  # pylint: disable=invalid-name
    return Outcome(
        EXIT_OK, {"map": G.to_descriptor(), "point": point, "value": G.evaluate(point)}
    )


def _jacobian(config: ExperimentConfig) -> Outcome:
    point = _require(config, "point", "jacobian")
    G = _map(config, "jacobian", len(point))  # pylint: disable=invalid-name
    closed_form, automatic = G.jacobian(point), G.jacobian_ad(point)
    return Outcome(
        EXIT_OK,
        {
            "map": G.to_descriptor(),
            "point": point,
            "jacobian": closed_form,
            "jacobian_ad": automatic,
            "max_abs_difference": float(np.abs(closed_form - automatic).max()),
        },
    )


def _compose_jacobian(config: ExperimentConfig) -> Outcome:
    f = _manifold(config, "compose-jacobian")
    G = _map(config, "compose-jacobian", f.ambient_dim)  # pylint: disable=invalid-name
    (q,) = _params(config, "compose-jacobian", 1)
    closed_form = composition_jacobian(G, f, q)
    automatic = composition_jacobian_ad(G, f, q)
    return Outcome(
        EXIT_OK,
        {
            "map": G.to_descriptor(),
            "manifold": f.to_dict(),
            "param": q,
            "value": composed_evaluate(G, f, q),
            "jacobian": closed_form,
            "jacobian_ad": automatic,
            "max_abs_difference": float(np.abs(closed_form - automatic).max()),
        },
    )


def _check_immersion(config: ExperimentConfig) -> Outcome:
    f = _manifold(config, "check-immersion")
    G = _map(config, "check-immersion", f.ambient_dim)  # pylint: disable=invalid-name
    report = immersion_check(
        G, f, config.grid, _default(config.refine, DEFAULT_REFINE_ROUNDS), config.tolerances
    )
    return Outcome(
        verdict_status(report.verdict),
        {"map": G.to_descriptor(), **report.to_dict()},
        (*(f"t{k + 1}" for k in range(f.dim)), "sigma_min"),
        report.sigma_grid(),
    )


def _check_injectivity(config: ExperimentConfig) -> Outcome:
    f = _manifold(config, "check-injectivity")
    G = _map(config, "check-injectivity", f.ambient_dim)  # pylint: disable=invalid-name
    report = injectivity_check(
        G,
        f,
        _default(config.delta, DEFAULT_EXCLUSION),
        _default(config.starts, DEFAULT_STARTS),
        config.grid,
        config.tolerances,
    )
    return Outcome(verdict_status(report.verdict), {"map": G.to_descriptor(), **report.to_dict()})


def _check_embedding(config: ExperimentConfig) -> Outcome:
    f = _manifold(config, "check-embedding")
    G = _map(config, "check-embedding", f.ambient_dim)  # pylint: disable=invalid-name
    report = injective_immersion_check(
        G,
        f,
        config.grid,
        _default(config.refine, DEFAULT_REFINE_ROUNDS),
        _default(config.delta, DEFAULT_EXCLUSION),
        _default(config.starts, DEFAULT_STARTS),
        config.tolerances,
    )
    return Outcome(
        verdict_status(report.verdict),
        {"map": G.to_descriptor(), **report.to_dict()},
        (*(f"t{k + 1}" for k in range(f.dim)), "sigma_min"),
        report.rank.sigma_grid(),
    )


def _singular_set(config: ExperimentConfig) -> Outcome:
    G = _map(config, "singular-set", 2)  # pylint: disable=invalid-name
    grid = config.grid if isinstance(config.grid, int) else DEFAULT_GRID
    curve = trace_singular_curve(
        G, config.window, _default(config.step, DEFAULT_STEP), config.tolerances, grid
    )
    return Outcome(
        EXIT_OK,
        {"map": G.to_descriptor(), **curve.to_dict()},
        ("x1", "x2", "class"),
        curve.rows(),
        svg_singular_curve(curve, G.centers),
    )


def _classify(config: ExperimentConfig) -> Outcome:
    point = _require(config, "point", "classify")
    G = _map(config, "classify", 2)  # pylint: disable=invalid-name
    conic = conic_coefficients(G)
    det = float(det_jacobian(G, point))
    singular = is_singular_point(G, point, config.tolerances, conic)
    label = classify_singular_point(G, point, config.tolerances, conic) if singular else None
    if not singular:
        logger.warning("Point %s is not on the singular set (det JG = %.3e).", point, det)
    return Outcome(
        EXIT_OK if singular else EXIT_INCONCLUSIVE,
        {
            "map": G.to_descriptor(),
            "point": point,
            "det_jacobian": det,
            "singular": singular,
            "class": label,
            "conic": conic.to_dict(),
        },
    )


def _verify_lemmas(config: ExperimentConfig) -> Outcome:
    rng = np.random.default_rng(config.seed)
    if config.map is not None:
        G = map_from_descriptor(config.map, rng, config.m)  # pylint: disable=invalid-name
    else:
        G = random_gds_map(_default(config.m, 2), rng)  # pylint: disable=invalid-name
    singularity = verify_lemma_singular(G, config.tolerances)
    result: dict[str, Any] = {"map": G.to_descriptor(), "singularity": singularity.to_dict()}
    try:
        collision = find_collision(
            G, _default(config.attempts, DEFAULT_ATTEMPTS), rng, config.tolerances
        )
        result["collision"] = collision.to_dict()
    except CollisionNotFoundError as error:
        logger.error("%s", error)
        collision, result["collision"] = None, {"error": str(error)}
    passed = singularity.passed and collision is not None
    return Outcome(EXIT_OK if passed else EXIT_FAILED, result)


def _mc(config: ExperimentConfig) -> Outcome:
    f = _manifold(config, "mc")
    theorem = _theorem(config, "mc")
    options = {
        "trials": _default(config.trials, DEFAULT_TRIALS),
        "distribution": config.distribution,
        "seed": config.seed,
        "override": config.override_hypothesis,
        "grid": config.grid,
        "tolerances": config.tolerances,
    }
    coefficients = _coefficients(config, f.ambient_dim)
    if theorem == "immersion":
        refine = _default(config.refine, DEFAULT_REFINE_ROUNDS)
        summary = mc_genericity_immersion(f, coefficients, refine_rounds=refine, **options)
    else:
        summary = mc_genericity_injectivity(
            f,
            coefficients,
            exclusion=_default(config.delta, DEFAULT_EXCLUSION),
            starts=_default(config.starts, DEFAULT_STARTS),
            **options,
        )
    status = verdict_status(summary.verdict) if summary.hypothesis_holds else EXIT_OK
    return Outcome(
        status,
        summary.to_dict(),
        ("trial", "margin", "verdict"),
        summary.rows(),
        svg_margin_histogram(summary.margins),
    )


def _bad_p(config: ExperimentConfig) -> Outcome:
    # pylint: disable=invalid-name
    f = _manifold(config, "bad-p")
    theorem = _theorem(config, "bad-p")
    coefficients = _coefficients(config, f.ambient_dim)
    if theorem == "immersion":
        (q0,) = _params(config, "bad-p", 1)
        G = GdsMap(coefficients, construct_bad_p_immersion(f, q0))
        report = immersion_check(
            G, f, config.grid, _default(config.refine, DEFAULT_REFINE_ROUNDS), config.tolerances
        )
        at_params = {
            "params": [q0],
            "sigma_min": float(smallest_singular_values(composition_jacobian(G, f, q0))),
        }
    else:
        q1, q2 = _params(config, "bad-p", 2)
        G = GdsMap(coefficients, construct_bad_p_injectivity(f, q1, q2))
        report = injectivity_check(
            G,
            f,
            _default(config.delta, DEFAULT_EXCLUSION),
            _default(config.starts, DEFAULT_STARTS),
            config.grid,
            config.tolerances,
        )
        at_params = {
            "params": [q1, q2],
            "image_gap": float(image_gap(G, f, q1, q2)),
            "transversality": pair_transversality_report(G, f, q1, q2, config.tolerances),
        }
    if report.verdict.failed:
        status = EXIT_OK
    elif report.verdict.passed:
        status = EXIT_FAILED
    else:
        status = EXIT_INCONCLUSIVE
    return Outcome(
        status,
        {"theorem": theorem, "map": G.to_descriptor(), "at_params": at_params, "check": report},
    )


COMMANDS: dict[str, Callable[[ExperimentConfig], Outcome]] = {
    "eval": _eval,
    "jacobian": _jacobian,
    "compose-jacobian": _compose_jacobian,
    "check-immersion": _check_immersion,
    "check-injectivity": _check_injectivity,
    "check-embedding": _check_embedding,
    "singular-set": _singular_set,
    "classify": _classify,
    "verify-lemmas": _verify_lemmas,
    "mc": _mc,
    "bad-p": _bad_p,
}


################################################################################
## API
################################################################################
def run(subcommand: str, config: ExperimentConfig) -> int:
    """Run a command and emit its artifacts.

    The JSON report is written to ``config.report`` (standard output if unset), CSV data
    to ``config.csv`` and the SVG figure to ``config.svg`` when the command produces them.

    Returns:
        The exit status.

    Raises:
        ConfigError: on unknown subcommands or missing options.
    """
    try:
        command = COMMANDS[subcommand]
    except KeyError as error:
        raise ConfigError(
            f"Unknown subcommand {subcommand!r}, expected one of {sorted(COMMANDS)}."
        ) from error
    logger.info("Running %s (seed %d)", subcommand, config.seed)
    outcome = command(config)
    document = {
        "command": subcommand,
        "version": __version__,
        "seed": config.seed,
        "status": outcome.status,
        "result": outcome.result,
    }
    if config.report:
        write_report(document, config.report)
    else:
        sys.stdout.write(dumps_report(document))
    if config.csv:
        if outcome.rows is None:
            logger.warning("Command %s produces no CSV data.", subcommand)
        else:
            write_csv(config.csv, outcome.header, outcome.rows)
    if config.svg:
        if outcome.figure is None:
            logger.warning("Command %s produces no figure.", subcommand)
        else:
            write_svg(config.svg, outcome.figure)
    return outcome.status


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per operation."""
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--config", help="JSON experiment configuration")
    options.add_argument("--seed", type=int, help="random seed (overrides the config)")
    options.add_argument("--m", type=int, help="dimension of random maps")
    options.add_argument("--manifold", help="specimen name")
    options.add_argument("--theorem", choices=THEOREMS, help="immersion or injectivity")
    options.add_argument("--trials", type=int, help="Monte Carlo trials")
    options.add_argument("--grid", type=int, help="grid points per axis")
    options.add_argument("--refine", type=int, help="refinement rounds")
    options.add_argument("--delta", type=float, help="exclusion radius")
    options.add_argument("--starts", type=int, help="descent starts")
    options.add_argument("--window", type=_window, help="x1_lo,x1_hi,x2_lo,x2_hi")
    options.add_argument("--step", type=float, help="continuation step")
    options.add_argument("--point", type=_vector, help="comma separated point")
    options.add_argument(
        "--param", type=_vector, action="append", help="comma separated parameter (repeatable)"
    )
    options.add_argument("--output", help="JSON report path")
    options.add_argument("--csv", help="CSV data path")
    options.add_argument("--svg", help="SVG figure path")
    options.add_argument(
        "--override-hypothesis", action="store_true", help="run despite dimension hypotheses"
    )
    options.add_argument("--verbose", "-v", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(
        prog="gdsq", description="Generalized distance-squared mapping laboratory."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[options], help=f"run {name}")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Console entry point."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING, format=LOG_FORMAT
    )
    overrides = {
        "seed": args.seed,
        "m": args.m,
        "manifold": args.manifold,
        "theorem": args.theorem,
        "trials": args.trials,
        "grid": args.grid,
        "refine": args.refine,
        "delta": args.delta,
        "starts": args.starts,
        "window": args.window,
        "step": args.step,
        "point": args.point,
        "params": args.param,
        "report": args.output,
        "csv": args.csv,
        "svg": args.svg,
        "override_hypothesis": args.override_hypothesis or None,
    }
    try:
        config = load_config(args.config).replicate(**overrides)
        return run(args.command, config)
    except (GdsqError, ValueError, TypeError) as error:
        logger.error("%s", error)
        return EXIT_USAGE


################################################################################
## AUXILIARY
################################################################################
def _default(value: Any, default: Any) -> Any:
    return default if value is None else value


def _vector(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",")]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"invalid comma separated numbers {text!r}") from error


def _window(text: str) -> list[list[float]]:
    values = _vector(text)
    if len(values) != 4:
        raise argparse.ArgumentTypeError("window requires four numbers x1_lo,x1_hi,x2_lo,x2_hi")
    return [values[:2], values[2:]]


if __name__ == "__main__":
    sys.exit(main())
