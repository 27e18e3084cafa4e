"""Kernel selection: the compiled core when built, else the numpy fallback.

Set ``SMALLBALL_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _mc_kernel_py

if os.environ.get("SMALLBALL_PURE_PYTHON", "") not in ("", "0"):
    partial_norms_p = _mc_kernel_py.partial_norms_p
    BACKEND = "python"
else:
    try:
        from ._mc_kernel import partial_norms_p
        BACKEND = "cython"
    except ImportError:
        partial_norms_p = _mc_kernel_py.partial_norms_p
        BACKEND = "python"

__all__ = ["partial_norms_p", "BACKEND"]
