"""Exact-arithmetic tools for the generalized Springer correspondence of
complex classical groups, extended quotients of tori, and the cuspidal
support calculus for enhanced Langlands parameters of split classical
p-adic groups."""

__version__ = "0.1.0"
