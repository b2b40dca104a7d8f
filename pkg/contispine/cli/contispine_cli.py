"""
Interface en ligne de commande de ContiSpine
contispine <design|statics|biomech|simulate|steer|sweep> --config <fichier> [surcharges]
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import yaml
from dotenv import load_dotenv

from ..config.scenario_config import ScenarioConfig
from ..exceptions import CalibrationError, ConfigError, ModelError, SimulationInstabilityError
from ..processing.command_processor import COMMANDS, CommandProcessor
from ..processing.sweep_processor import SWEEP_TARGETS, cmd_sweep
from ..ui.console_components import ConsoleComponents
from ..utils.constants import (
    ERROR_CONFIG_INVALID,
    EXIT_CONFIG_ERROR,
    EXIT_MODEL_FAILURE,
    EXIT_SUCCESS,
)

REFERENCE_CHOICES = ("impedance", "gravity", "gravity_stiffness")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _sweep_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="Fichier de scénario JSON ou YAML")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.CLE=VALEUR",
        help="Surcharge d'une clé de configuration (répétable)",
    )


def _add_simulation_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cycles", type=_positive_int, default=None, help="Nombre de cycles de stoop")
    loop = parser.add_mutually_exclusive_group()
    loop.add_argument("--open-loop", dest="controller", action="store_const", const="open_loop_current")
    loop.add_argument("--closed-loop", dest="controller", action="store_const", const="closed_loop_force")
    parser.add_argument("--reference", choices=REFERENCE_CHOICES, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contispine",
        description="Simulation d'un exosquelette continu inspiré de la colonne",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name in ("design", "biomech", "steer"):
        _add_common(subparsers.add_parser(name))

    statics = subparsers.add_parser("statics")
    _add_common(statics)
    statics.add_argument("--F-c", dest="F_c", type=float, default=None, help="Tension du câble (N)")

    simulate = subparsers.add_parser("simulate")
    _add_common(simulate)
    _add_simulation_flags(simulate)

    sweep = subparsers.add_parser("sweep")
    _add_common(sweep)
    _add_simulation_flags(sweep)
    sweep.add_argument("--param", required=True, help="Chemin pointé du paramètre (ex. plant.mu_theta)")
    sweep.add_argument("--values", required=True, nargs="+", type=_sweep_value)
    sweep.add_argument("--target", choices=SWEEP_TARGETS, default="simulate")
    sweep.add_argument("--workers", type=_positive_int, default=4)
    return parser


def _overrides(args: argparse.Namespace) -> List[str]:
    overrides = list(args.overrides)
    if getattr(args, "cycles", None) is not None:
        overrides.append(f"run.cycles={args.cycles}")
    if getattr(args, "controller", None) is not None:
        overrides.append(f"run.controller={args.controller}")
    if getattr(args, "reference", None) is not None:
        overrides.append(f"run.reference={args.reference}")
    return overrides


def run_command(args: argparse.Namespace) -> int:
    """Exécute la commande analysée et exporte ses résultats"""
    config = ScenarioConfig.from_sources(args.config, _overrides(args))
    ConsoleComponents.show_command_header(args.command, config.output_dir)

    if args.command == "sweep":
        tables = cmd_sweep(config, args.param, args.values, args.target, args.workers)
    elif args.command == "statics":
        tables = COMMANDS["statics"](config, args.F_c)
    else:
        tables = COMMANDS[args.command](config)

    files = CommandProcessor(config).run(args.command, tables)
    ConsoleComponents.show_summary(args.command, files)
    return EXIT_SUCCESS


def main(argv: Optional[List[str]] = None) -> int:
    """
    Point d'entrée de la CLI

    Returns:
        0 succès, 1 échec du modèle, 2 erreur de configuration ou d'usage
    """
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_SUCCESS if e.code == 0 else EXIT_CONFIG_ERROR

    try:
        return run_command(args)
    except (ConfigError, CalibrationError) as e:
        print(f"{ERROR_CONFIG_INVALID}: {e}")
        return EXIT_CONFIG_ERROR
    except SimulationInstabilityError as e:
        print(f"💥 Simulation instable (ligne {e.tick}): {e}")
        return EXIT_MODEL_FAILURE
    except ModelError as e:
        print(f"💥 Échec du modèle: {e}")
        return EXIT_MODEL_FAILURE
    except (FileNotFoundError, json.JSONDecodeError, yaml.YAMLError) as e:
        print(f"{ERROR_CONFIG_INVALID}: {e}")
        return EXIT_CONFIG_ERROR
    except ValueError as e:
        print(f"{ERROR_CONFIG_INVALID}: {e}")
        return EXIT_CONFIG_ERROR
    except KeyboardInterrupt:
        print("\n\n🛑 Exécution interrompue par l'utilisateur")
        return EXIT_MODEL_FAILURE


if __name__ == "__main__":
    sys.exit(main())
