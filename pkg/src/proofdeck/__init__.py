"""Interactive proof documents: kernel, document engine, wire protocol, packages."""

__version__ = "0.1.0"
