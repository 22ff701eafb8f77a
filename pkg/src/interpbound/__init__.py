"""Desk-scale workbench for quantum query lower bounds on polynomial interpolation."""

__version__ = "0.1.0"
