"""Coupled Friedkin-Johnsen popularity dynamics."""

__version__ = "0.1.0"
