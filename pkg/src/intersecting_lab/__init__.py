"""intersecting-lab - exact search and proof replay for intersecting set families."""

__version__ = "0.1.0"
