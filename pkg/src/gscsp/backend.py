"""Selects the compiled kernels when they were built, the pure-Python engines otherwise.

``GSCSP_BACKEND`` (``auto``, ``python`` or ``compiled``) overrides the choice
for the whole process; individual calls can pass ``backend=`` explicitly.
"""

from __future__ import annotations

import os

try:
    from . import _kernels as kernels
except ImportError:  # extension not built
    kernels = None

BACKENDS = ("auto", "python", "compiled")


def compiled_available() -> bool:
    return kernels is not None


def resolve(backend: str | None = None) -> str:
    choice = (backend or os.environ.get("GSCSP_BACKEND") or "auto").lower()
    if choice not in BACKENDS:
        raise ValueError(f"unknown backend {choice!r}; expected one of {BACKENDS}")
    if choice == "auto":
        return "compiled" if kernels is not None else "python"
    if choice == "compiled" and kernels is None:
        raise RuntimeError("the compiled kernels are not built; reinstall with Cython available")
    return choice


def invariants_requested() -> bool:
    return os.environ.get("GSCSP_CHECK_INVARIANTS", "").lower() in ("1", "true", "yes", "on")
