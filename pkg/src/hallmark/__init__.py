"""Classify finite groups by Hall-subgroup existence properties, with a
brute-force permutation-group oracle for small cases."""

__version__ = "0.1.0"
