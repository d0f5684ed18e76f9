"""Kernel dispatch: compiled Cython module when importable, pure Python otherwise.

Set ``NLMOPT_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
the backend-parity tests).
"""

import os

from . import _kernels_py

if os.environ.get("NLMOPT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

bareiss_det = _impl.bareiss_det
bareiss_rank = _impl.bareiss_rank
gram_det = _impl.gram_det
newton_monomial = _impl.newton_monomial


def available_backends():
    """Map backend name -> kernel module for every backend importable here."""
    found = {"python": _kernels_py}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
