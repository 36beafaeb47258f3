"""Maximal cyclic covers of the Deligne-Lusztig curves: construction, point
counts, identity verification and ray-class-field checks."""

__version__ = "0.1.0"
