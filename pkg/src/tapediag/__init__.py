"""Tape diagrams over monoidal signatures, their matrix normal form, and a
decision procedure for the positive calculus of relations."""

__version__ = "0.1.0"
