"""Function calculus, group operations and metrics for diffeomorphisms of ``I`` and ``S^1``."""

__version__ = "0.1.0"
