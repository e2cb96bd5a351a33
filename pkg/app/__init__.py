"""prclab: exact proper rainbow connection computations and claim sweeps."""

__version__ = "1.0.0"
