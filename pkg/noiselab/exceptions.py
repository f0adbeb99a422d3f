"""
Author: noiselab contributors
Date: 2026-09-02 10:12:40
LastEditTime: 2026-10-09 16:31:05
LastEditors: noiselab contributors
Description: Error taxonomy shared by all noiselab modules
FilePath: /noiselab/noiselab/exceptions.py
Copyright (c) 2026 noiselab contributors. All rights reserved.
"""


class NoiseLabError(Exception):
    """Base class of every error raised on purpose by noiselab."""


class CapExceeded(NoiseLabError, ValueError):
    """A dense representation would exceed one of the configured caps."""

    def __init__(self, what, value, cap):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what}={value} exceeds the configured cap {cap}")


class DimensionMismatch(NoiseLabError, ValueError):
    pass


class LengthMismatch(NoiseLabError, ValueError):
    pass


class BadProbability(NoiseLabError, ValueError):
    pass


class BadWeights(NoiseLabError, ValueError):
    pass


class BadRange(NoiseLabError, ValueError):
    pass


class BadIndex(NoiseLabError, IndexError):
    pass


class EmptySet(NoiseLabError, ValueError):
    pass


class NotClifford(NoiseLabError, ValueError):
    pass


class MissingSuperop(NoiseLabError, ValueError):
    pass


class CalibrationFailed(NoiseLabError, RuntimeError):
    pass


class DegenerateMarginal(NoiseLabError, ValueError):
    pass


class NoConvergence(NoiseLabError, RuntimeError):
    pass


class PreconditionViolated(NoiseLabError, ValueError):
    pass


class UnknownPreset(NoiseLabError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown preset"


class ConfigParseError(NoiseLabError, ValueError):
    pass


class ConfigValidationError(NoiseLabError, ValueError):
    """Raised by the experiment-config loader; ``field`` is the dotted path."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
