"""Pick the compiled series kernel when importable, else the numpy fallback."""

import os

from . import _kernels_py

NEWTON, DR, H, DH_R, DH_RHO = (_kernels_py.NEWTON, _kernels_py.DR, _kernels_py.H,
                               _kernels_py.DH_R, _kernels_py.DH_RHO)

_compiled = None
if os.environ.get("ANNULUS_GREEN_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

if _compiled is not None:
    series_eval = _compiled.series_eval
    gegenbauer_table = _compiled.gegenbauer_table
    BACKEND = "cython"
else:
    series_eval = _kernels_py.series_eval
    gegenbauer_table = _kernels_py.gegenbauer_table
    BACKEND = "python"


def implementations():
    """Available ``{name: series_eval}`` pairs, for benchmarks and cross-checks."""
    out = {"python": _kernels_py.series_eval}
    if _compiled is not None:
        out["cython"] = _compiled.series_eval
    return out
