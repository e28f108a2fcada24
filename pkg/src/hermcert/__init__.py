"""Growth-based non-Hermitianity certificates for locally compact groups.

Submodules:

* ``groups``, ``growth``, ``perron``: discrete group backends, ball
  enumeration and rigorous growth rates.
* ``algebra``, ``capacity``, ``simplex``: exact group-algebra arithmetic and
  capacity bounds for witness elements.
* ``criteria``, ``tree``, ``padic``: measure-level growth criteria.
* ``cli``: the ``hermcert`` command.
"""

__version__ = "0.1.0"

from .exact import Enclosure  # noqa: E402
from .kernels import IMPLEMENTATION as KERNEL  # noqa: E402

__all__ = ["Enclosure", "KERNEL", "__version__"]
