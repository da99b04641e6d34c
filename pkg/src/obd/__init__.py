"""Open books, their Heegaard diagrams and contact classes in hat Heegaard Floer homology."""

__version__ = "0.1.0"
