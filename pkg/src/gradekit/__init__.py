"""Exact constructions, verification and classification of abelian group
gradings on matrix superalgebras."""

__version__ = "0.1.0"
