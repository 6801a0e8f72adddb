"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
twin. ``QAPDELTA_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = ("auto", "compiled", "python")


def get_backend(name: str | None = None):
    name = name or os.environ.get("QAPDELTA_BACKEND", "auto")
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built; run `pip install -e .`")
        return _compiled
    return _compiled if _compiled is not None else _pykernels


def compiled_available() -> bool:
    return _compiled is not None
