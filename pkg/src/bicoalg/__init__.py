"""Exact verification of bicoalgebroids, Yetter-Drinfeld modules and scalar extensions."""

__version__ = "0.1.0"
