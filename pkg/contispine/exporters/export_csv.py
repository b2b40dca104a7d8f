"""
Exporteur CSV des tables de résultats
Ligne d'en-têtes, ligne d'unités, données ; UTF-8, fins de ligne LF, noms de
fichiers fixes pour des sorties identiques octet par octet
"""
from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import numpy as np
import pandas as pd
import scipy

from .. import __version__
from ..utils.constants import EXPORTS_CONTISPINE_PATH, MANIFEST_FILENAME, SCHEMA_VERSION


@dataclass(frozen=True)
class ResultTable:
    """Table nommée avec une unité par colonne ("-" si sans dimension)"""

    name: str
    frame: pd.DataFrame
    units: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.units) - set(self.frame.columns)
        if unknown:
            raise ValueError(f"units given for unknown columns: {sorted(unknown)}")

    @property
    def filename(self) -> str:
        return f"{self.name}.csv"

    @property
    def columns(self) -> List[str]:
        return [str(column) for column in self.frame.columns]

    def units_row(self) -> List[str]:
        return [self.units.get(column, "-") for column in self.columns]

    def to_csv_text(self) -> str:
        """En-têtes, unités puis données"""
        buffer = io.StringIO()
        pd.DataFrame([self.units_row()], columns=self.columns).to_csv(
            buffer, index=False, lineterminator="\n"
        )
        self.frame.to_csv(buffer, index=False, header=False, lineterminator="\n")
        return buffer.getvalue()


def read_result_csv(path: Path) -> pd.DataFrame:
    """Relit un CSV exporté (la ligne d'unités est ignorée)"""
    return pd.read_csv(path, skiprows=[1])


class CsvExporter:
    """Écrit les tables d'une commande dans le répertoire de sortie"""

    def __init__(self, export_dir: Optional[Path] = None):
        self.export_dir = Path(export_dir) if export_dir is not None else Path(EXPORTS_CONTISPINE_PATH)
        self.export_dir.mkdir(parents=True, exist_ok=True)

    def write_table(self, table: ResultTable) -> Path:
        path = self.export_dir / table.filename
        with open(path, "w", encoding="utf-8", newline="") as file:
            file.write(table.to_csv_text())
        print(f"✅ {len(table.frame)} lignes → {path}")
        return path

    def write_tables(self, tables: Iterable[ResultTable]) -> List[Path]:
        return [self.write_table(table) for table in tables]

    def write_manifest(self, command: str, config_digest: str, files: Iterable[Path]) -> Path:
        """
        Manifeste de l'exécution : commande, empreinte de la configuration,
        versions ; aucun horodatage
        """
        manifest = {
            "command": command,
            "schema_version": SCHEMA_VERSION,
            "config_sha256": config_digest,
            "files": sorted(Path(path).name for path in files),
            "versions": {
                "contispine": __version__,
                "numpy": np.__version__,
                "pandas": pd.__version__,
                "scipy": scipy.__version__,
            },
        }
        path = self.export_dir / MANIFEST_FILENAME
        with open(path, "w", encoding="utf-8", newline="\n") as file:
            json.dump(manifest, file, indent=2, sort_keys=True)
            file.write("\n")
        print(f"📋 Manifeste → {path}")
        return path
