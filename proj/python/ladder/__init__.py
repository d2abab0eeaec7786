"""Generalized ladder algebras: ordered factorizations, G_n functions,
coefficient triangles, rotations and phase operators."""

from ._ladder import *  # noqa: F401,F403
