"""Sweep kernel selection.

The compiled extension is preferred when it imported cleanly; the pure
Python twin is the fallback and the reference for its behaviour.  Set
DPX_FORCE_PURE=1 to skip the extension, which the equivalence tests and
the benchmark use to pin the two against each other.
"""

import os

from . import _sweep_py

if os.environ.get("DPX_FORCE_PURE", "") not in ("", "0"):
    _impl = _sweep_py
else:
    try:
        from . import _sweep as _impl
    except ImportError:
        _impl = _sweep_py

COMPILED = _impl.COMPILED
propagate_seed = _impl.propagate_seed
magma_passes_axioms = _impl.magma_passes_axioms
sweep_range = _impl.sweep_range

pure = _sweep_py
