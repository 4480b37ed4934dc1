"""Batched interval evaluation of straight-line programs.

The compiled extension is used when it was built; otherwise the numpy
fallback is selected.  Set ``CENTER_ORDER_PURE_PYTHON=1`` to force the
fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernel_py
from .program import Builder, Program, Reg

BACKEND = "python"
_impl = _kernel_py.eval_intervals

if os.environ.get("CENTER_ORDER_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._ckernel import eval_intervals as _c_eval
    except ImportError:
        pass
    else:
        _impl = _c_eval
        BACKEND = "cython"


def run(prog: Program, in_lo, in_hi, backend: str | None = None):
    """Interval bounds of the program outputs for each input box."""
    fn = _impl
    if backend == "python":
        fn = _kernel_py.eval_intervals
    elif backend == "cython":
        from ._ckernel import eval_intervals as fn  # noqa: F811
    return fn(prog.ops, prog.arg1, prog.arg2, prog.consts, prog.outputs, in_lo, in_hi)


def interval_signs(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """+1 / -1 where the enclosure excludes zero, 0 where it is ambiguous."""
    return np.where(lo > 0, 1, np.where(hi < 0, -1, 0)).astype(np.int8)


__all__ = ["BACKEND", "Builder", "Program", "Reg", "interval_signs", "run"]
