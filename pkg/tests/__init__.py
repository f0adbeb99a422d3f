"""Unit test package for noiselab."""
