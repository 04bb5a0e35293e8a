"""Exact certification toolkit for Enriques surface fibrations over P^1.

Builds the explicit polynomial families (pencil matrix, cover equations,
flat limit), certifies Galois groups of the 24-point cover through
Frobenius cycle types, and runs the intersection-ring, lattice and GF(2)
computations behind the even-index and integral Hodge defect statements.
"""

__version__ = "0.1.0"
