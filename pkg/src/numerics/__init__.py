"""Numerical kernels of the popularity-dynamics model."""
