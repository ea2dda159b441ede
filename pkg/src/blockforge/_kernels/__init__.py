"""Kernel backend selection.

Imports the compiled Cython core when available, otherwise the numpy
fallback.  Set BLOCKFORGE_PURE=1 to force the fallback (used by the
benchmark and by tests that compare the two backends).
"""

import os

from . import pure

if os.environ.get("BLOCKFORGE_PURE"):
    _impl = pure
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = pure

BACKEND = _impl.BACKEND
rref = _impl.rref
reduce_vector = _impl.reduce_vector
convolve = _impl.convolve


def backends():
    """All importable backends, for parity tests and benchmarks."""
    found = {"pure": pure}
    try:
        from . import _core

        found["compiled"] = _core
    except ImportError:
        pass
    return found
