"""
Export Excel optionnel des tables de résultats
Un classeur par commande, une feuille par table, filtre automatique et
première ligne figée
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

import pandas as pd
from openpyxl.utils import get_column_letter

from ..utils.constants import DEFAULT_EXCEL_ENGINE
from .export_csv import ResultTable

# Limite de longueur des noms de feuilles Excel
MAX_SHEET_NAME = 31


class ExcelExporter:
    """Exporteur Excel simplifié"""

    @staticmethod
    def export_tables(
        tables: Iterable[ResultTable],
        output_path: Path,
        enable_autofilter: bool = True,
        freeze_first_row: bool = True,
    ) -> str:
        """
        Export des tables vers un classeur

        Args:
            tables: Tables à exporter (les vides sont ignorées)
            output_path: Fichier .xlsx de sortie
            enable_autofilter: Activer le filtre automatique
            freeze_first_row: Figer la première ligne

        Returns:
            Chemin du fichier créé ou chaîne vide en cas d'erreur
        """
        tables = [table for table in tables if not table.frame.empty]
        if not tables:
            print("⚠️ Aucune table à exporter vers Excel")
            return ""

        try:
            output_path = Path(output_path)
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with pd.ExcelWriter(output_path, engine=DEFAULT_EXCEL_ENGINE) as writer:
                for table in tables:
                    sheet_name = table.name[:MAX_SHEET_NAME]
                    table.frame.to_excel(writer, sheet_name=sheet_name, index=False)
                    ExcelExporter._apply_basic_formatting(
                        writer.sheets[sheet_name], enable_autofilter, freeze_first_row
                    )
            print(f"✅ Excel exporté: {output_path.name}")
            return str(output_path)

        except Exception as e:
            print(f"❌ Erreur export Excel: {e}")
            return ""

    @staticmethod
    def _apply_basic_formatting(worksheet, enable_autofilter: bool, freeze_first_row: bool):
        """Applique le formatage de base à la feuille Excel"""
        if not worksheet or worksheet.max_row <= 1:
            return

        if enable_autofilter:
            max_col_letter = get_column_letter(worksheet.max_column)
            worksheet.auto_filter.ref = f"A1:{max_col_letter}{worksheet.max_row}"

        if freeze_first_row:
            worksheet.freeze_panes = "A2"
