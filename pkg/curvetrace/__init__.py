"""curvetrace: trace functions of multicurves on SU(2) character varieties."""

__version__ = "0.1.0"
__author__ = "Hassan"
__description__ = "Dehn coordinates, SU(2) trace functions and their Fourier isotypes, checked numerically."
