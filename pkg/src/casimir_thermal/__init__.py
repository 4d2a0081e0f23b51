"""Thermal Casimir interaction between parallel metal plates."""

__version__ = "0.1.0"
