"""Kernel backend selection.

Imports the compiled _corekernels extension when it was built, otherwise the
pure-Python reference implementation. SEMILAURENT_PURE=1 forces the fallback
(useful for benchmarking and for debugging the compiled twin).
"""

import os

if os.environ.get("SEMILAURENT_PURE") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _corekernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
convolve_trunc = _impl.convolve_trunc
invert_unit_trunc = _impl.invert_unit_trunc
polymul_reduce = _impl.polymul_reduce
