"""Kernel backend selection.

The compiled module is used when it was built and importable; setting the
environment variable ``HOLODIFF_PURE=1`` forces the pure-Python kernels.
"""

import os

if os.environ.get("HOLODIFF_PURE", "") not in ("", "0"):
    from ._kernels_py import axpy, content, conv, conv_trunc, inv_series, pseudo_divmod, taylor_shift

    BACKEND = "python"
else:
    try:
        from ._ckernels import axpy, content, conv, conv_trunc, inv_series, pseudo_divmod, taylor_shift

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._kernels_py import axpy, content, conv, conv_trunc, inv_series, pseudo_divmod, taylor_shift

        BACKEND = "python"

__all__ = [
    "BACKEND",
    "axpy",
    "content",
    "conv",
    "conv_trunc",
    "inv_series",
    "pseudo_divmod",
    "taylor_shift",
]
