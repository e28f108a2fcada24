"""Kernel selection.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used. Set ``HERMCERT_PURE_PYTHON=1`` to
force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

python = _pykernels

try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and not os.environ.get("HERMCERT_PURE_PYTHON"):
    active = compiled
else:
    active = _pykernels

IMPLEMENTATION: str = active.IMPLEMENTATION


def available() -> list:
    """All importable kernel modules, pure Python first."""
    return [m for m in (_pykernels, compiled) if m is not None]
