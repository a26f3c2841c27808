"""pSRAM performance model, roofline analysis and streaming mesh simulator."""

__version__ = "1.0.0"
