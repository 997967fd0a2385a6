"""Exact verification toolkit for F(4) contact geometry on jet superspaces.

Modules: ``scalar`` (the field Q(i, sqrt2)), ``superpoly`` and ``linalg`` (exact kernels),
``clifford``, ``rootkit``, ``f4``, ``spencer``, ``cubicforms``, ``jets``, ``pdesym`` and ``cli``.
"""
from __future__ import annotations

from .scalar import I, ONE, SQRT2, ZERO, Scalar
from .superpoly import SuperPoly, VarTable

__all__ = ["I", "ONE", "SQRT2", "ZERO", "Scalar", "SuperPoly", "VarTable"]
__version__ = "0.1.0"
