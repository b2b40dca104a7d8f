#!/usr/bin/env python3
"""
Constantes globales pour éviter la duplication de code
Valeurs de conception de l'exosquelette et conventions de sortie
"""

# Version du schéma de configuration
SCHEMA_VERSION = 1

# Codes de sortie de la CLI
EXIT_SUCCESS = 0
EXIT_MODEL_FAILURE = 1
EXIT_CONFIG_ERROR = 2

# Variable d'environnement (seule lue par l'outil)
ENV_OUTPUT_DIR = "CONTISPINE_OUTPUT_DIR"

# Chemins d'export
EXPORTS_CONTISPINE_PATH = "exports/contispine"
MANIFEST_FILENAME = "run_manifest.json"

# Statuts d'exigence
STATUS_YES = "yes"
STATUS_NO = "no"
STATUS_REPORTED = "n/a"

# Exigences de mobilité (degrés)
REQUIRED_SAGITTAL_FLEXION_DEG = 70.0
REQUIRED_LATERAL_FLEXION_DEG = 20.0
REQUIRED_TRANSVERSE_ROTATION_DEG = 90.0

# Inversion numérique
BISECTION_TOLERANCE_RAD = 1e-6
BISECTION_MAX_ITER = 200

# Loi de raideur gravitaire F_r = 20·θ̇ + 200·sin θ
GRAVITY_LAW_DAMPING = 20.0
GRAVITY_LAW_STIFFNESS = 200.0

# Cible de suivi en force (N)
TRACKING_RMS_TARGET_N = 6.63
NOMINAL_PEAK_FORCE_N = 200.0

# Réduction de compression visée pour 250 N d'assistance (%)
COMPRESSION_REDUCTION_TARGET_PERCENT = 30.0

# Messages d'erreur standardisés
ERROR_CONFIG_INVALID = "❌ Configuration invalide"

# Configuration par défaut
DEFAULT_EXCEL_ENGINE = "openpyxl"
