"""specgap: random regular graphs, long-range expansion, and nonlinear
Poincare constants for unconditional norms.

Submodules
----------
graphs      graph types, BFS balls, edge-list I/O
sampling    pairing-model sampling and exploration statistics
spectral    eigenvalues, Cheeger constants, spectral certificates
expansion   long-range expansion checking, fitting, sufficient conditions
norms       1-unconditional norm trees, cotype and concavity constants
poincare    Poincare-ratio evaluation, search, embeddings, distance sweeps
certify     instance-level certifier for the binary Poincare inequality
constants   log-space evaluation of the named constants
logspace    sign + log-magnitude scalar arithmetic
cli         command-line entry point
"""

__version__ = "0.1.0"

from .logspace import LogScalar  # noqa: F401
from .graphs import RegularGraph, MultiGraph  # noqa: F401
