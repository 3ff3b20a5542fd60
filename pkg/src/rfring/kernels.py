"""Backend selection for the group-table kernels.

The compiled extension is preferred; set ``RFRING_PURE_PYTHON=1`` to force
the numpy fallback. ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

if os.environ.get("RFRING_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

fill_mul_table = _impl.fill_mul_table
is_associative_light = _impl.is_associative_light
conjugacy_labels = _impl.conjugacy_labels
class_constants = _impl.class_constants
element_orders = _impl.element_orders


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
        out["cython"] = _kernels
    except ImportError:
        pass
    return out
