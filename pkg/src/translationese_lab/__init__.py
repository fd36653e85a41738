"""translationese-lab: measure translationese, drive reduction backends, evaluate output."""

__version__ = "0.1.0"
