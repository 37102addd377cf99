"""tamefiber: an exact-computation workbench for tame local parameter
spaces, the q-fixed symmetric quotient ring, Deligne-Lusztig multiplicity
combinatorics, and finite-level deformation checks."""

__version__ = "0.1.0"
