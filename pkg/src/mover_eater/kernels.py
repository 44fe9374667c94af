"""Backend selection for the enumeration kernels.

The compiled ``_kernels`` extension is preferred; the pure-Python
``_kernels_py`` twin is used when the extension was not built or when
``MOVER_EATER_PURE_PYTHON=1`` is set in the environment.
"""

import os

from . import _kernels_py

if os.environ.get("MOVER_EATER_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

mover_search = _impl.mover_search
eater_prefix_search = _impl.eater_prefix_search
EATER_EQUILIBRIUM = _kernels_py.EATER_EQUILIBRIUM
EATER_HALF_HALF = _kernels_py.EATER_HALF_HALF
