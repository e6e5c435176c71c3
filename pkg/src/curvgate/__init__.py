"""Curvature toolkit and hypothesis gates for stable minimal and CMC hypersurfaces."""

__version__ = "0.1.0"
