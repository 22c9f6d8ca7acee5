"""Edge-colored graphs, oriented graphs, and their rainbow / directed cycles."""

__version__ = "0.1.0"
