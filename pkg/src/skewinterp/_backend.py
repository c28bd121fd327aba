"""Kernel selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_kernels_py`` module is used.  Setting ``SKEWINTERP_PURE=1``
forces the fallback.
"""
import os

if os.environ.get("SKEWINTERP_PURE", "") not in ("", "0"):
    from . import _kernels_py as kernels
    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
        COMPILED = True
    except ImportError:
        from . import _kernels_py as kernels
        COMPILED = False

BACKEND = "cython" if COMPILED else "python"

qnorm = kernels.qnorm
qadd = kernels.qadd
qsub = kernels.qsub
qmul = kernels.qmul
qinv = kernels.qinv
qdot = kernels.qdot
rref = kernels.rref
ZERO = kernels.ZERO
ONE = kernels.ONE

__all__ = ["BACKEND", "COMPILED", "qnorm", "qadd", "qsub", "qmul", "qinv",
           "qdot", "rref", "ZERO", "ONE"]
