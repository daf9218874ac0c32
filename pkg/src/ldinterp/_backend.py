"""Select the kernel implementation at import time.

The compiled extension is used when it was built; ``LDINTERP_BACKEND=python``
forces the numpy fallback and ``LDINTERP_BACKEND=compiled`` makes a missing
extension an import error.
"""

import importlib
import logging
import os

from . import _kernels_py

log = logging.getLogger(__name__)


def _load_compiled():
    return importlib.import_module("ldinterp._kernels")


def available_backends():
    names = ["python"]
    try:
        _load_compiled()
    except ImportError:
        pass
    else:
        names.insert(0, "compiled")
    return names


def get_kernels(name=None):
    """Return the kernel module called ``name`` (``"compiled"`` or ``"python"``)."""
    if name is None or name == "auto":
        try:
            return _load_compiled()
        except ImportError:
            log.debug("compiled kernels unavailable, using numpy fallback")
            return _kernels_py
    if name == "python":
        return _kernels_py
    if name == "compiled":
        return _load_compiled()
    raise ValueError(f"unknown backend {name!r}")


kernels = get_kernels(os.environ.get("LDINTERP_BACKEND") or None)
