"""
Composants d'affichage console pour ContiSpine
Sépare la présentation de l'orchestration des commandes
"""
from datetime import datetime
from pathlib import Path
from typing import Iterable

from .. import __version__


class ConsoleComponents:
    """Gestionnaire des composants d'interface utilisateur"""

    # Commandes proposées par le menu interactif
    MENU_COMMANDS = {
        "1": ("design", "Conception : amplitude β(r, d) et exigences de mobilité"),
        "2": ("statics", "Statique : efforts par disque et réaction de base"),
        "3": ("biomech", "Biomécanique : efforts lombaires avec/sans assistance"),
        "4": ("simulate", "Commande : simulation des cycles de stoop"),
        "5": ("steer", "Direction : rétraction du câble → flexion"),
    }

    @staticmethod
    def show_welcome_banner():
        """Bannière d'accueil"""
        print("\n")
        print("           🦴 MAESTRO CONTISPINE")
        print("     Exosquelette continu inspiré de la colonne")
        print("")
        print(f"    🕒 {datetime.now().strftime('%d/%m/%Y à %H:%M:%S')}  ⚡ v{__version__}  🎯 Ready")
        print("    " + "─" * 45)
        print("\n")

    @staticmethod
    def show_main_menu() -> str:
        """Menu des commandes, retourne le nom de la commande choisie"""
        print("           COMMANDES DISPONIBLES")
        print("    " + "─" * 35)
        print("")
        for key, (_, label) in ConsoleComponents.MENU_COMMANDS.items():
            print(f"    {key}️⃣ {label}")
        print("")
        print("    " + "─" * 43)

        choice = ConsoleComponents._get_menu_choice(
            list(ConsoleComponents.MENU_COMMANDS.keys()),
            "🎯 Votre choix (1-5) ► ",
        )
        return ConsoleComponents.MENU_COMMANDS[choice][0]

    @staticmethod
    def show_command_header(command: str, output_dir: str):
        print(f"\n🚀 Commande '{command}'")
        print(f"   📁 Sortie: {output_dir}")

    @staticmethod
    def show_summary(command: str, files: Iterable[Path]):
        """Résumé de fin de commande"""
        files = list(files)
        print("\n" + "=" * 60)
        print(f"🦴 CONTISPINE - {command.upper()} TERMINÉ AVEC SUCCÈS !")
        print("=" * 60)
        for path in files:
            print(f"   • {Path(path).name}")
        if files:
            print(f"\n📁 Fichiers disponibles dans: {Path(files[0]).parent}")

    @staticmethod
    def _get_menu_choice(valid_choices: list, prompt: str) -> str:
        """Helper pour obtenir un choix valide dans une liste"""
        while True:
            choice = input(f"\n    {prompt}").strip()
            if choice in valid_choices:
                return choice
            print(f"    ❌ Choix invalide, veuillez saisir {' ou '.join(valid_choices)}")
