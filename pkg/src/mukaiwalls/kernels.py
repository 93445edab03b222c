"""Hot loops, dispatched to the compiled extension when it is importable.

The compiled versions work in 64-bit integers; calls whose intermediate
values could overflow are routed to the pure-Python implementation.
"""

from . import _pykernels
from ._pykernels import (  # noqa: F401
    DECOMPOSITION,
    ISOTROPIC,
    NONE,
    ORTHOGONAL_SPHERICAL,
    SPHERICAL,
)

try:
    from . import _ckernels
except ImportError:  # no compiler at install time
    _ckernels = None

HAVE_COMPILED = _ckernels is not None
_LIMIT = 1 << 62
_backend = "compiled" if HAVE_COMPILED else "python"


def backend():
    return _backend


def set_backend(name):
    """Select "compiled" or "python"; returns the previous choice."""
    global _backend
    if name not in ("compiled", "python"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "compiled" and not HAVE_COMPILED:
        raise RuntimeError("compiled kernels are not available in this install")
    prev, _backend = _backend, name
    return prev


def _scan_fits(V, U, h22):
    nU = -U
    return nU * (V * V + 8 * V + 8) < _LIMIT and V * h22 < _LIMIT


def wall_scan(V, U, h11, h21, h22, divisorial=True):
    if _backend == "compiled" and _scan_fits(V, U, h22):
        return tuple(_ckernels.wall_scan(V, U, h11, h21, h22, divisorial))
    return _pykernels.wall_scan(V, U, h11, h21, h22, divisorial)


def _box_fits(gram, D, two_c, r, bound):
    rho = len(gram)
    if rho > 8:
        return False
    g = max(abs(a) for row in gram for a in row)
    d = max(abs(a) for a in D)
    row = rho * g * bound
    dl = rho * rho * g * d * bound
    return row < _LIMIT and dl * abs(two_c) < _LIMIT and r < _LIMIT


def star_box_scan(gram, D, two_c, r, bound):
    if _backend == "compiled" and _box_fits(gram, D, two_c, r, bound):
        return _ckernels.star_box_scan(gram, D, two_c, r, bound)
    return _pykernels.star_box_scan(gram, D, two_c, r, bound)
