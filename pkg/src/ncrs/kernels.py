"""Backend selection for the pointwise ansatz kernels.

The compiled extension is used when importable; otherwise the numpy twin.
Set ``NCRS_BACKEND=python`` to force the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("NCRS_BACKEND", "").lower() == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
mollifier = _impl.mollifier
mollifier_d = _impl.mollifier_d
heps = _impl.heps
heps_d = _impl.heps_d
ansatz_values = _impl.ansatz_values
residual_density = _impl.residual_density


def backends():
    """Return the importable kernel modules keyed by name."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
