"""License plate recognition pipeline with an IoT-style tracing backend."""

__version__ = "0.1.0"
