"""Critical ideals of graphs, algebraic co-rank and critical groups."""

__version__ = "0.1.0"
