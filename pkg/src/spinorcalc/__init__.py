"""Exact-arithmetic cohomology calculator for the spinor tenfold, its Fano
linear sections, and their numerical Fourier-Mukai theory."""

__version__ = "0.1.0"

from . import bbw, intersect, mukai, rootdata, sections  # noqa: F401
