"""Backend selection for the hot kernels.

Prefers the compiled extension (ratspec._kernels); falls back to the pure
Python twin. Setting RATSPEC_PURE=1 in the environment forces the fallback,
which is useful for benchmarking and for verifying backend equivalence.
"""

import os

if os.environ.get("RATSPEC_PURE"):
    from ratspec import _kernels_py as _impl
else:
    try:
        from ratspec import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from ratspec import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
rref = _impl.rref
matmul = _impl.matmul
