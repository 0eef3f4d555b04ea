"""Exception types raised by nsea_df."""


class DeflectionRangeError(ValueError):
    """Deflection at or beyond +/- pi, where the two-bar geometry folds over."""


class TableRangeError(ValueError):
    """Requested torque amplitude lies outside the sampled torque table."""


class ConvergenceError(RuntimeError):
    """Iterative solver did not reach its tolerance within the iteration cap."""


class StepSizeError(ValueError):
    """Integration step too coarse for the excitation period."""


class WindowError(ValueError):
    """Time series does not cover the requested RMS window."""


class NoCrossingError(ValueError):
    """Gain row never falls through 0 dB on the scanned frequency grid."""


class ConfigError(ValueError):
    """Invalid or unparseable experiment configuration."""


class SweepError(RuntimeError):
    """One or more frequency-response cells failed.

    ``failures`` holds ``(amplitude_Nm, frequency_Hz, exception)`` tuples.
    """

    def __init__(self, failures):
        self.failures = list(failures)
        cells = ", ".join(
            f"({a:g} Nm, {f:g} Hz): {type(e).__name__}: {e}"
            for a, f, e in self.failures)
        super().__init__(f"{len(self.failures)} sweep cell(s) failed: {cells}")
