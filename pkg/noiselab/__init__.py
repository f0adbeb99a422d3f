"""Top-level package for noiselab."""

__author__ = """noiselab contributors"""
__email__ = "noiselab@users.noreply.github.com"
__version__ = '0.1.0'
