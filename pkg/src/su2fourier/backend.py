"""Selects the compiled kernel extension, falling back to the numpy versions.

Set SU2FOURIER_BACKEND=python or =compiled to override; the default prefers
the compiled extension when it imports cleanly.
"""

import os

from . import _kernels_py

_requested = os.environ.get("SU2FOURIER_BACKEND", "").strip().lower()

if _requested == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "SU2FOURIER_BACKEND=compiled but the su2fourier._kernels "
                "extension is not built; run `pip install -e . --no-build-isolation`"
            )
        _impl = _kernels_py

chebu_design = _impl.chebu_design
chebu_weighted_sums = _impl.chebu_weighted_sums
chebu_segment_sums = _impl.chebu_segment_sums
weighted_design_product = _impl.weighted_design_product


def backend_name():
    return _impl.BACKEND


def get_backend(name):
    """Return the kernel module for an explicit backend name (benchmarks/tests)."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
