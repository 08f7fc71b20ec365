"""Osculating circlines, inscribed circles and vertex analysis for closed plane curves."""
__version__ = "0.1.0"
