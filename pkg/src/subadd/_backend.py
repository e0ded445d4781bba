"""Scan-kernel backend selection.

Prefers the compiled extension ``subadd._gridscan``; falls back to the
NumPy implementation ``subadd._gridscan_py`` when the extension is absent
or when the environment variable ``SUBADD_PURE=1`` forces the fallback.

Both backends implement the identical ``scan_block`` contract (see
``_gridscan_py``'s docstring); ``BACKEND_NAME`` reports which one is
active (``"compiled"`` or ``"numpy-fallback"``).
"""

from __future__ import annotations

import os

from . import _gridscan_py

if os.environ.get("SUBADD_PURE") == "1":
    _impl = _gridscan_py
else:
    try:
        from . import _gridscan as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _gridscan_py

scan_block = _impl.scan_block
BACKEND_NAME: str = _impl.BACKEND_NAME

__all__ = ["scan_block", "BACKEND_NAME"]
