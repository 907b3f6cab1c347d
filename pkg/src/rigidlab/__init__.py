"""rigidlab: exact rigid-expansion calculus on simplicial graphs and curve graphs."""

__version__ = "0.1.0"
