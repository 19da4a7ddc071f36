"""Test package for the popularity dynamics model."""
