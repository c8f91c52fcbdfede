"""Integer kernels and rational scalar type, selected at import.

The ``gmp`` backend pairs the compiled GMP extension with ``gmpy2.mpq``
scalars; the ``python`` backend pairs the pure-Python kernels with
``fractions.Fraction``. Both scalar types compare and hash alike. Set
``MINNORM_BACKEND=python`` to force the fallback.
"""
import os
from fractions import Fraction

from . import _kernels_py

_impl = _kernels_py
Rational = Fraction
if os.environ.get("MINNORM_BACKEND", "").lower() != "python":
    try:
        from gmpy2 import mpq

        from . import _kernels
    except ImportError:  # extension not built or gmpy2 missing
        pass
    else:
        _impl = _kernels
        Rational = mpq

BACKEND = "python" if _impl is _kernels_py else "gmp"

gram = _impl.gram
solve = _impl.solve
rank = _impl.rank
dots = _impl.dots
combine = _impl.combine

__all__ = ["BACKEND", "Rational", "gram", "solve", "rank", "dots", "combine"]
