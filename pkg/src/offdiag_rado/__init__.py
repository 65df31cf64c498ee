"""Two-color off-diagonal Rado numbers for x+y+c=z (red) and x+y+k=z (blue)."""

__version__ = "0.1.0"
