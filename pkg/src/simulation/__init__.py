"""Trajectory simulation, convergence detection and theory verification."""
