"""Kernel selection: compiled extension if available, pure Python otherwise.

Set PADIC_DEFORM_PURE=1 to force the pure-Python kernels (used by the
benchmark and by tests that compare the two implementations).
"""

import os

from . import _gfpoly_py

if os.environ.get("PADIC_DEFORM_PURE", "") == "1":
    _impl = _gfpoly_py
else:
    try:
        from . import _gfpoly as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _gfpoly_py

BACKEND = _impl.BACKEND
poly_mul = _impl.poly_mul
series_inv = _impl.series_inv


def implementations():
    """Both kernel modules, for equivalence tests and benchmarks."""
    mods = [_gfpoly_py]
    try:
        from . import _gfpoly  # type: ignore[attr-defined]
        mods.append(_gfpoly)
    except ImportError:
        pass
    return mods
