"""Kernel backend selection.

The compiled Cython kernels are used when the extension was built; otherwise
the numpy implementation is used. ``use_backend`` switches explicitly (the
benchmark and the cross-backend tests rely on it).
"""
import logging

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_active = "cython" if _ckernels is not None else "python"
if _ckernels is None:
    log.debug("compiled CRF kernels unavailable; using numpy fallback")


def available() -> list:
    return sorted(BACKENDS)


def active_name() -> str:
    return _active


def kernels():
    return BACKENDS[_active]


def use_backend(name: str) -> str:
    """Select ``name`` and return the previously active backend."""
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} not available (have: {', '.join(available())})")
    prev, _active = _active, name
    return prev
