"""Recognizable subsets of numeric monoids: finite monoids, ultimately periodic
and periodic sets, rectangle unions over products, exponent sequences and a
brute-force verification suite."""

__version__ = "0.1.0"
