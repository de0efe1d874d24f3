"""Executable ZX-calculus with complex spider parameters."""

from __future__ import annotations

__version__ = "0.1.0"
