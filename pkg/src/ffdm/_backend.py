"""Kernel backend selection.

The compiled extension is used when it imports; setting ``FFDM_PURE_PYTHON``
forces the pure-Python kernels.
"""
import os

from . import _kernels_py


def load(name=None):
    """Return the kernel module for ``"compiled"``, ``"python"`` or the default."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _kernels
        return _kernels
    if name is not None:
        raise ValueError(f"unknown backend {name!r}")
    if os.environ.get("FFDM_PURE_PYTHON"):
        return _kernels_py
    try:
        from . import _kernels
    except ImportError:
        return _kernels_py
    return _kernels


kernels = load()
