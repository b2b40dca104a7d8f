"""
Validation de la configuration des scénarios
Clés inconnues, types des valeurs et énumérations, contrôlés contre les
valeurs par défaut
"""
from numbers import Real
from typing import Any, Dict

from ..control.control_reference import STIFFNESS_LAWS
from ..control.control_simulator import CONTROLLERS, REFERENCES
from ..exceptions import ConfigError
from ..utils.constants import SCHEMA_VERSION

# Énumérations contrôlées (chemin pointé → valeurs admises)
ENUMERATIONS = {
    "run.controller": CONTROLLERS,
    "run.reference": REFERENCES,
    "impedance.stiffness_law": STIFFNESS_LAWS,
}

# Valeurs entières strictement positives
POSITIVE_INTEGERS = (
    "geometry.n",
    "run.cycles",
    "biomech.samples_per_cycle",
    "steer.retraction_steps",
)


def _is_number(value: Any) -> bool:
    return isinstance(value, Real) and not isinstance(value, bool)


class ConfigValidator:
    """Validateur de la configuration fusionnée"""

    @staticmethod
    def validate_schema_version(config: Dict[str, Any], source: str = "configuration") -> None:
        """
        Vérifie la présence et la valeur de schema_version

        Raises:
            ConfigError: Si la version est absente ou non supportée
        """
        if "schema_version" not in config:
            raise ConfigError(f"{source}: schema_version is required")
        if config["schema_version"] != SCHEMA_VERSION:
            raise ConfigError(
                f"{source}: unsupported schema_version {config['schema_version']!r} "
                f"(expected {SCHEMA_VERSION})"
            )

    @staticmethod
    def validate(config: Dict[str, Any], defaults: Dict[str, Any]) -> None:
        """
        Valide la configuration complète

        Args:
            config: Configuration fusionnée
            defaults: Configuration par défaut (référence des clés et des types)

        Raises:
            ConfigError: Première incohérence trouvée, chemin pointé dans le message
        """
        ConfigValidator.validate_schema_version(config)
        ConfigValidator._validate_node(config, defaults, "")
        for path, allowed in ENUMERATIONS.items():
            value = ConfigValidator._lookup(config, path)
            if value not in allowed:
                raise ConfigError(f"{path} must be one of {list(allowed)}, got {value!r}")
        for path in POSITIVE_INTEGERS:
            value = ConfigValidator._lookup(config, path)
            if int(value) != value or value < 1:
                raise ConfigError(f"{path} must be an integer >= 1, got {value!r}")

    @staticmethod
    def _lookup(config: Dict[str, Any], path: str) -> Any:
        node = config
        for key in path.split("."):
            node = node[key]
        return node

    @staticmethod
    def _validate_node(node: Dict[str, Any], reference: Dict[str, Any], prefix: str) -> None:
        for key, value in node.items():
            path = f"{prefix}{key}"
            if key not in reference:
                raise ConfigError(f"unknown configuration key: {path}")
            expected = reference[key]
            if isinstance(expected, dict):
                if not isinstance(value, dict):
                    raise ConfigError(f"{path} must be a section")
                ConfigValidator._validate_node(value, expected, f"{path}.")
            else:
                ConfigValidator._validate_value(path, value, expected)

    @staticmethod
    def _validate_value(path: str, value: Any, expected: Any) -> None:
        if expected is None:
            if value is not None and not _is_number(value):
                raise ConfigError(f"{path} must be a number or null")
        elif isinstance(expected, bool):
            if not isinstance(value, bool):
                raise ConfigError(f"{path} must be true or false")
        elif _is_number(expected):
            if not _is_number(value):
                raise ConfigError(f"{path} must be a number")
        elif isinstance(expected, str):
            if not isinstance(value, str):
                raise ConfigError(f"{path} must be a string")
        elif isinstance(expected, list):
            if not isinstance(value, list) or not value:
                raise ConfigError(f"{path} must be a non-empty list")
            if not ConfigValidator._numeric_list(value):
                raise ConfigError(f"{path} must only contain numbers")

    @staticmethod
    def _numeric_list(values: list) -> bool:
        return all(
            ConfigValidator._numeric_list(item) if isinstance(item, list) else _is_number(item)
            for item in values
        )
