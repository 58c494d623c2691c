"""Kernel backend selection.

Hot numeric kernels exist twice: a numba-jitted version and a pure-numpy
fallback with identical signatures.  The active backend is chosen once at
import from the ``RECONGLGAN_BACKEND`` environment variable:

    RECONGLGAN_BACKEND=numba   force numba (error if it cannot import)
    RECONGLGAN_BACKEND=numpy   force the pure-numpy fallback
    unset / "auto"             numba when importable, else numpy

``set_backend`` switches at runtime (used by tests and the benchmark).
"""

import os

from . import _kernels_numpy
from .errors import ConfigError

KERNEL_NAMES = (
    "im2col",
    "col2im",
    "avgpool2_forward",
    "avgpool2_backward",
    "maxpool2_forward",
    "maxpool2_backward",
    "sep_corr_valid",
    "directed_hausdorff_sq",
)

_active_name = None
_active_module = None


def _load_numba_module():
    from . import _kernels_numba  # deferred: jit compilation on first call
    return _kernels_numba


def available_backends():
    names = ["numpy"]
    try:
        _load_numba_module()
        names.insert(0, "numba")
    except ImportError:
        pass
    return names


def set_backend(name):
    """Activate a kernel backend ('numba', 'numpy', or 'auto')."""
    global _active_name, _active_module
    if name in (None, "", "auto"):
        try:
            _active_module = _load_numba_module()
            _active_name = "numba"
        except ImportError:
            _active_module = _kernels_numpy
            _active_name = "numpy"
    elif name == "numba":
        _active_module = _load_numba_module()
        _active_name = "numba"
    elif name == "numpy":
        _active_module = _kernels_numpy
        _active_name = "numpy"
    else:
        raise ConfigError(f"unknown kernel backend {name!r}; use 'numba', 'numpy' or 'auto'")
    return _active_name


def active_backend():
    """Name of the backend currently in use."""
    if _active_name is None:
        set_backend(os.environ.get("RECONGLGAN_BACKEND", "auto"))
    return _active_name


def kernels():
    """The active kernel module."""
    if _active_module is None:
        active_backend()
    return _active_module
