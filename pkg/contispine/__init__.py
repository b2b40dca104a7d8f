"""
ContiSpine - simulation d'un exosquelette continu inspiré de la colonne
Cinématique de la chaîne de disques, statique du câble, biomécanique lombaire
et commande en force avec hystérésis de câble Bowden
"""

__version__ = "1.0.0"
