"""
Gestionnaire de configuration pour ContiSpine
Chargement JSON ou YAML, fusion avec les valeurs par défaut et surcharges
par chemins pointés
"""
from __future__ import annotations

import copy
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Tuple

import yaml

from ..exceptions import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).parent / "default_config.json"
YAML_SUFFIXES = (".yaml", ".yml")


class ConfigManager:
    """Gestionnaire de configuration des scénarios"""

    @staticmethod
    def load_config(config_path: str) -> Dict[str, Any]:
        """
        Charge la configuration depuis un fichier JSON ou YAML

        Args:
            config_path: Chemin vers le fichier de configuration

        Returns:
            Configuration sous forme de dictionnaire
        """
        path = Path(config_path)
        try:
            with open(path, encoding="utf-8") as file:
                if path.suffix.lower() in YAML_SUFFIXES:
                    config = yaml.safe_load(file)
                else:
                    config = json.load(file)
            print(f"✅ Configuration chargée depuis: {config_path}")
        except FileNotFoundError:
            print(f"❌ Fichier de configuration introuvable: {config_path}")
            raise
        except yaml.YAMLError as e:
            print(f"❌ Erreur de format YAML: {e}")
            raise
        except json.JSONDecodeError as e:
            print(f"❌ Erreur de format JSON: {e}")
            raise
        if not isinstance(config, dict):
            raise ConfigError(f"{config_path}: the configuration must be a mapping")
        return config

    @staticmethod
    def load_default_config() -> Dict[str, Any]:
        """
        Charge la configuration par défaut livrée avec le paquet

        Returns:
            Configuration par défaut
        """
        if not DEFAULT_CONFIG_PATH.exists():
            print("❌ Fichier default_config.json introuvable")
            print("💡 Réinstallez le paquet contispine")
            raise FileNotFoundError(f"Configuration manquante: {DEFAULT_CONFIG_PATH}")
        with open(DEFAULT_CONFIG_PATH, encoding="utf-8") as file:
            return json.load(file)

    @staticmethod
    def merge_config(defaults: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
        """Fusion récursive : les sections utilisateur complètent les défauts"""
        merged = copy.deepcopy(defaults)
        for key, value in overrides.items():
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key] = ConfigManager.merge_config(merged[key], value)
            else:
                merged[key] = copy.deepcopy(value)
        return merged

    @staticmethod
    def parse_override(expression: str) -> Tuple[str, Any]:
        """
        Découpe une surcharge "section.clé=valeur"

        La valeur est lue comme du JSON (nombres, booléens, listes, null),
        sinon gardée telle quelle.
        """
        if "=" not in expression:
            raise ConfigError(f"override '{expression}' must look like section.key=value")
        path, raw = expression.split("=", 1)
        path = path.strip()
        if not path:
            raise ConfigError(f"override '{expression}' has an empty path")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        return path, value

    @staticmethod
    def set_path(config: Dict[str, Any], path: str, value: Any) -> Dict[str, Any]:
        """
        Copie de la configuration avec la valeur remplacée au chemin pointé

        Raises:
            ConfigError: Si le chemin ne désigne pas une clé existante
        """
        updated = copy.deepcopy(config)
        node = updated
        keys = path.split(".")
        for key in keys[:-1]:
            if not isinstance(node.get(key), dict):
                raise ConfigError(f"unknown configuration path: {path}")
            node = node[key]
        if keys[-1] not in node:
            raise ConfigError(f"unknown configuration path: {path}")
        node[keys[-1]] = value
        return updated

    @staticmethod
    def get_path(config: Dict[str, Any], path: str) -> Any:
        node: Any = config
        for key in path.split("."):
            if not isinstance(node, dict) or key not in node:
                raise ConfigError(f"unknown configuration path: {path}")
            node = node[key]
        return node

    @staticmethod
    def apply_overrides(config: Dict[str, Any], expressions: Iterable[str]) -> Dict[str, Any]:
        for expression in expressions:
            path, value = ConfigManager.parse_override(expression)
            config = ConfigManager.set_path(config, path, value)
        return config
