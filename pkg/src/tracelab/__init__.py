"""tracelab: exact computational homological algebra over prime fields."""

__version__ = "0.1.0"
