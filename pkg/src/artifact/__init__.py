"""Series, modular and L-function toolkit for extremal transitions of del Pezzo type."""

from __future__ import annotations

__version__ = "0.1.0"
