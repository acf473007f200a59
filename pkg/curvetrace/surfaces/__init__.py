"""Bundled pants decompositions and Dehn parameters."""
