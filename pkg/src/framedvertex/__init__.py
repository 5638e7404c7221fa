"""Framed one-legged vertex amplitudes from topological recursion, checked against cut-and-join."""
