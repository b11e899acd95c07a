"""
SLPR Toolkit

Sliding line point regression geometry for scene text regions: polygon
encoding into the 32-parameter target, polygon restoration, rectangle and
polygonal NMS, regression losses and ICDAR-style evaluation.
"""

__version__ = "1.0.0"
