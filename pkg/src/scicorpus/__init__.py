"""Tools for building multilingual scientific corpora from repository records."""

__version__ = "0.1.0"
