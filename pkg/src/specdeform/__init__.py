"""specdeform: finite-scale workbench for deforming equivariant spectral
triples by monoidal equivalences and dual 2-cocycles."""

__version__ = "0.1.0"
