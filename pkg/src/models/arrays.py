"""Annotated numpy array types for use as pydantic fields."""

from typing import Annotated, Any

import numpy as np
from pydantic import BeforeValidator, PlainSerializer


def as_readonly_float_array(value: Any) -> np.ndarray:
    """
    Convert a nested sequence or array to a read-only float64 array.

    The copy keeps models independent from the caller's buffer, and the
    write flag makes them safe to share between threads.
    """
    array = np.array(value, dtype=np.float64, copy=True)
    if not np.all(np.isfinite(array)):
        raise ValueError("array contains non-finite values")
    array.setflags(write=False)
    return array


def _to_list(array: np.ndarray) -> Any:
    return array.tolist()


FloatArray = Annotated[
    np.ndarray,
    BeforeValidator(as_readonly_float_array),
    PlainSerializer(_to_list, return_type=list),
]
