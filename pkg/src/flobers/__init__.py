"""Exact decategorified flobers: hyperplane arrangements, perverse-sheaf
diagrams over their face posets, and root-system dictionaries."""

__version__ = "0.1.0"
