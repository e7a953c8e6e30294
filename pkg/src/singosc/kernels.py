"""Backend selection for the hot kernels.

The Cython extension is used when it was built; otherwise the NumPy
fallback is imported. Set ``SINGOSC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("SINGOSC_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

hyp1f1_series = _impl.hyp1f1_series
laguerre_recurrence = _impl.laguerre_recurrence
