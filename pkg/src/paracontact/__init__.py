"""Symbolic tensor calculus for paracontact metric manifolds and Yamabe-type solitons."""

__version__ = "0.1.0"
