#!/usr/bin/env python3
"""
🦴 MAESTRO CONTISPINE - Orchestrateur interactif
Menu des commandes de simulation, délègue le calcul au processeur de commandes
"""

import sys
from pathlib import Path

from dotenv import load_dotenv

# Ajouter les dossiers au path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from contispine.config.scenario_config import ScenarioConfig
from contispine.exceptions import ContispineError
from contispine.processing.command_processor import COMMANDS, CommandProcessor
from contispine.ui.console_components import ConsoleComponents


class MaestroContispineOrchestrator:
    """
    🦴 MAESTRO CONTISPINE - Orchestrateur des commandes
    Le menu choisit la commande, le processeur l'exécute et l'exporte
    """

    def __init__(self, config_path: str | None = None):
        self.project_root = Path(__file__).parent
        self.config_path = config_path
        self.menu = ConsoleComponents()

    def run_interactive(self) -> bool:
        """Point d'entrée principal avec menu"""
        self.menu.show_welcome_banner()
        command = self.menu.show_main_menu()
        return self._execute_command(command)

    def _execute_command(self, command: str) -> bool:
        try:
            config = ScenarioConfig.from_sources(self.config_path)
        except (ContispineError, ValueError, FileNotFoundError) as e:
            print(f"❌ Configuration invalide: {e}")
            return False

        self.menu.show_command_header(command, config.output_dir)
        try:
            tables = COMMANDS[command](config)
            files = CommandProcessor(config).run(command, tables)
        except ContispineError as e:
            print(f"💥 Échec de '{command}': {e}")
            return False

        self.menu.show_summary(command, files)
        return True


def main():
    """Fonction principale"""
    # Charger les variables d'environnement
    load_dotenv()

    config_path = sys.argv[1] if len(sys.argv) > 1 else None
    orchestrator = MaestroContispineOrchestrator(config_path)

    try:
        success = orchestrator.run_interactive()
        if success:
            print("\n✨ Mission accomplie avec succès !")
        else:
            print("\n❌ Mission échouée")
            sys.exit(1)

    except KeyboardInterrupt:
        print("\n\n🛑 Exécution interrompue par l'utilisateur")
        sys.exit(1)
    except Exception as e:
        print(f"\n💥 Erreur critique: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
