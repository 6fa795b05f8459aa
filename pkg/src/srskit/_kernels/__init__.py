"""Hot-kernel backend selection.

The IK inner loop (backbone forward map, cost, complex-step gradient) has
two interchangeable implementations: a compiled Cython extension and a
pure-numpy reference. The compiled one is preferred when present; the
``SRSKIT_KERNEL`` environment variable ("auto", "compiled", "python")
overrides the choice.
"""

from __future__ import annotations

import os

from . import pyref

try:
    from . import _ccore
except ImportError:  # extension not built; fall back to numpy
    _ccore = None

_ALIASES = {
    "auto": "auto",
    "compiled": "compiled",
    "c": "compiled",
    "cython": "compiled",
    "python": "python",
    "numpy": "python",
    "pyref": "python",
}


def get_backend(name: str | None = None):
    """Return the kernel module to use; raises if a forced choice is absent."""
    raw = name or os.environ.get("SRSKIT_KERNEL", "auto")
    try:
        choice = _ALIASES[raw.lower()]
    except KeyError:
        raise ValueError(f"unknown kernel backend {raw!r}") from None
    if choice == "python":
        return pyref
    if choice == "compiled":
        if _ccore is None:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        return _ccore
    return _ccore if _ccore is not None else pyref


def backend_name(module) -> str:
    return "compiled" if module is _ccore and module is not None else "python"


def available_backends() -> list[str]:
    names = ["python"]
    if _ccore is not None:
        names.insert(0, "compiled")
    return names
