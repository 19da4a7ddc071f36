"""Command handlers for the popdyn command-line interface."""

from src.handlers.equilibrium import cmd_equilibrium, predict_equilibrium
from src.handlers.gen_graph import cmd_gen_graph
from src.handlers.series import cmd_series
from src.handlers.simulate import cmd_simulate
from src.handlers.sweep import cmd_sweep
from src.handlers.verify import cmd_verify

__all__ = [
    "cmd_simulate",
    "cmd_equilibrium",
    "predict_equilibrium",
    "cmd_verify",
    "cmd_series",
    "cmd_gen_graph",
    "cmd_sweep",
]
