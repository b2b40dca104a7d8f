"""
Exceptions du projet ContiSpine
Distingue les erreurs de configuration (code 2) des erreurs de modèle (code 1)
"""
from typing import Optional


class ContispineError(Exception):
    """Erreur racine de ContiSpine"""


class ConfigError(ContispineError, ValueError):
    """Configuration invalide, clé inconnue ou valeur hors domaine"""


class ModelError(ContispineError, RuntimeError):
    """Échec d'un modèle physique ou numérique"""


class JointLimitError(ModelError):
    """Une ou plusieurs articulations dépassent leur butée mécanique"""

    def __init__(self, message: str, joints: tuple = ()):
        super().__init__(message)
        self.joints = joints

    def __reduce__(self):
        return type(self), (self.args[0], self.joints)


class CalibrationError(ModelError, ValueError):
    """Calibration du rayon des trous de câble impossible"""


class NonPlanarConfigurationError(ModelError, ValueError):
    """Configuration hors du plan sagittal (statique plane uniquement)"""


class SimulationInstabilityError(ModelError):
    """Divergence de la simulation (NaN ou force hors bornes)"""

    def __init__(self, message: str, tick: Optional[int] = None):
        super().__init__(message)
        self.tick = tick

    def __reduce__(self):
        return type(self), (self.args[0], self.tick)
