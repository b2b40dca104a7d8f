"""
Scénario validé et construction des objets du domaine
Les degrés des fichiers sont convertis en radians ici, nulle part ailleurs
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ..biomech.biomech_lumbar_model import Anthropometrics, MomentArms, default_moment_arms
from ..control.control_plant import PlantParams
from ..control.control_reference import ImpedanceParams
from ..control.control_simulator import ControllerParams, SensorNoise, SimulationParams
from ..exceptions import ConfigError
from ..mechanism.mechanism_cable import calibrate_hole_radius
from ..mechanism.mechanism_kinematics import DiscGeometry
from ..mechanism.mechanism_statics import TendonLoad, moment_arms_from_geometry
from ..utils.constants import ENV_OUTPUT_DIR
from .config_manager import ConfigManager
from .config_validator import ConfigValidator

REFERENCE_ALIASES = {"gravity": "gravity_stiffness"}


def _domain(builder, *args, **kwargs):
    try:
        return builder(*args, **kwargs)
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(str(e)) from e


class ScenarioConfig:
    """Configuration complète d'un scénario, validée"""

    def __init__(self, data: Dict[str, Any], defaults: Optional[Dict[str, Any]] = None):
        self.defaults = defaults if defaults is not None else ConfigManager.load_default_config()
        reference = data.get("run", {}).get("reference")
        if reference in REFERENCE_ALIASES:
            data = ConfigManager.set_path(data, "run.reference", REFERENCE_ALIASES[reference])
        ConfigValidator.validate(data, self.defaults)
        self.data = data

    @classmethod
    def from_sources(
        cls,
        config_path: Optional[str] = None,
        overrides: Iterable[str] = (),
    ) -> ScenarioConfig:
        """
        Défauts, puis fichier utilisateur, puis surcharges, puis environnement

        Args:
            config_path: Fichier JSON/YAML (schema_version obligatoire)
            overrides: Expressions "section.clé=valeur"

        Returns:
            ScenarioConfig validée
        """
        defaults = ConfigManager.load_default_config()
        data = defaults
        if config_path:
            user = ConfigManager.load_config(config_path)
            ConfigValidator.validate_schema_version(user, config_path)
            data = ConfigManager.merge_config(defaults, user)
        data = ConfigManager.apply_overrides(data, overrides)
        output_dir = os.getenv(ENV_OUTPUT_DIR)
        if output_dir:
            data = ConfigManager.set_path(data, "run.output_dir", output_dir)
        return cls(data, defaults)

    def get(self, path: str) -> Any:
        return ConfigManager.get_path(self.data, path)

    def with_value(self, path: str, value: Any) -> ScenarioConfig:
        """Nouveau scénario avec une valeur remplacée (balayages)"""
        return ScenarioConfig(ConfigManager.set_path(self.data, path, value), self.defaults)

    def canonical_json(self) -> str:
        return json.dumps(self.data, sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()

    # Mécanisme

    def _geometry_section(self) -> Dict[str, Any]:
        return self.data["geometry"]

    def geometry(self, calibrate: bool = True) -> DiscGeometry:
        """
        Géométrie de la chaîne

        Si geometry.rho est null, il est calibré sur steer.calibration ; sans
        calibration (calibrate=False) r/2 sert de valeur provisoire, le rayon
        des trous n'intervenant pas dans β.

        Raises:
            ConfigError: Valeur physique invalide
            CalibrationError: Calibration infaisable
        """
        section = self._geometry_section()
        psi_limit = section["psi_limit_deg"]
        rho = section["rho"]
        provisional = rho if rho is not None else section["r"] / 2.0
        geom = _domain(
            DiscGeometry,
            r=section["r"],
            d=section["d"],
            l=section["l"],
            rho=provisional,
            n=section["n"],
            e=tuple(section["e"]),
            psi_limit=math.radians(psi_limit) if psi_limit is not None else None,
        )
        if rho is None and calibrate:
            geom = geom.with_rho(calibrate_hole_radius(self.calibration_pairs(), geom))
        return geom

    def calibration_pairs(self) -> List[Tuple[float, float]]:
        """Couples (rétraction en m, flexion totale en rad)"""
        pairs = []
        for pair in self.data["steer"]["calibration"]:
            if len(pair) != 2:
                raise ConfigError("steer.calibration entries must be [retraction_m, bend_deg]")
            pairs.append((float(pair[0]), math.radians(pair[1])))
        return pairs

    def requirements(self) -> Dict[str, Tuple[str, float, bool]]:
        section = self.data["design"]["requirements"]
        return {
            "sagittal_flexion": ("sagittal", float(section["sagittal_flexion_deg"]), True),
            "lateral_flexion": ("frontal", float(section["lateral_flexion_deg"]), True),
            "transverse_rotation": ("transverse", float(section["transverse_rotation_deg"]), False),
        }

    def tendon_load(self, geom: Optional[DiscGeometry] = None, F_c: Optional[float] = None) -> TendonLoad:
        """
        Tension et bras de levier ; r1, r2 null → déduits de la géométrie
        """
        section = self.data["statics"]
        r1, r2 = section["r1"], section["r2"]
        if r1 is None or r2 is None:
            geom = geom or self.geometry()
            derived = _domain(moment_arms_from_geometry, geom, math.radians(section["bend_deg"]))
            r1 = derived[0] if r1 is None else r1
            r2 = derived[1] if r2 is None else r2
        tension = section["F_c"] if F_c is None else F_c
        return _domain(TendonLoad, F_c=float(tension), r1=float(r1), r2=float(r2))

    # Biomécanique

    def anthropometrics(self) -> Anthropometrics:
        return _domain(Anthropometrics, **self.data["anthropometrics"])

    def moment_arms(self, anthro: Optional[Anthropometrics] = None) -> MomentArms:
        section = self.data["moment_arms"]
        return _domain(
            default_moment_arms,
            anthro or self.anthropometrics(),
            load_offset=section["load_offset"],
            body_com_fraction=section["body_com_fraction"],
            D_e=section["D_e"],
            D_exo=section["D_exo"],
            r_l=section["r_l"],
        )

    @property
    def cycle_s(self) -> float:
        return float(self.data["trajectory"]["cycle_s"])

    @property
    def theta_max(self) -> float:
        return math.radians(self.data["trajectory"]["theta_max_deg"])

    # Commande

    def impedance(self) -> ImpedanceParams:
        section = dict(self.data["impedance"])
        section["theta_r"] = math.radians(section.pop("theta_r_deg"))
        return _domain(ImpedanceParams, **section)

    def plant(self) -> PlantParams:
        return _domain(PlantParams, **self.data["plant"])

    def controller_params(self) -> ControllerParams:
        return _domain(ControllerParams, **self.data["controller"])

    def sensor_noise(self) -> SensorNoise:
        section = self.data["run"]["sensor_noise"]
        return _domain(
            SensorNoise,
            force_std=section["force_std"],
            angle_std=math.radians(section["angle_std_deg"]),
            seed=int(section["seed"]),
        )

    def simulation_params(self) -> SimulationParams:
        run = self.data["run"]
        return _domain(
            SimulationParams,
            plant=self.plant(),
            impedance=self.impedance(),
            control=self.controller_params(),
            noise=self.sensor_noise(),
            r_l=self.moment_arms().r_l,
            cycle_s=self.cycle_s,
            theta_max=self.theta_max,
            high_level_hz=run["high_level_hz"],
            plant_hz=run["plant_hz"],
        )

    # Exécution

    @property
    def cycles(self) -> int:
        return int(self.data["run"]["cycles"])

    @property
    def controller(self) -> str:
        return self.data["run"]["controller"]

    @property
    def reference(self) -> str:
        return self.data["run"]["reference"]

    @property
    def output_dir(self) -> str:
        return self.data["run"]["output_dir"]

    @property
    def excel(self) -> bool:
        return bool(self.data["run"]["excel"])

    @property
    def manifest(self) -> bool:
        return bool(self.data["run"]["manifest"])

    @property
    def progress(self) -> bool:
        return bool(self.data["run"]["progress"])
