"""Backend selection for the shooting kernels.

The compiled extension is used when it imported cleanly; otherwise the
pure-Python twin takes over with identical semantics, only slower.
Set ``DKP_SPECTRA_PURE_PYTHON=1`` to force the fallback, which the
benchmark and the parity tests rely on.
"""

import os

from . import _shoot_py

if os.environ.get("DKP_SPECTRA_PURE_PYTHON", "").strip() not in ("", "0"):
    _backend = _shoot_py
    BACKEND = "python"
else:
    try:
        from . import _shoot_cy as _backend  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _backend = _shoot_py
        BACKEND = "python"

VARIANT_APPROX = _shoot_py.VARIANT_APPROX
VARIANT_EXACT = _shoot_py.VARIANT_EXACT

w_value = _backend.w_value
shoot_kernel = _backend.shoot_kernel
