"""Exact-arithmetic toolkit for the two sides of cluster mirror
symmetry: seed mutation and toric models on one side, skeleta, disk
surgery, local systems and almost toric base diagrams on the other,
with cross-checks that the two transform consistently."""

__version__ = "0.1.0"
