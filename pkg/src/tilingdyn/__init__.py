"""tilingdyn: exact computation with substitution tilings and model sets.

Subsystems
----------
algebra       exact arithmetic in Q(lambda), Perron data, conjugate isolation
tiling        tiles, patches, windows, the two tiling metrics
substitution  substitution rules, supertiles, periodic points, patch language
delone        Delone / FLC / Meyer diagnostics for exact point sets
modelset      cut-and-project schemes, singular points, torus fibers
proximality   pair-overlap graph, coincidence rank, spectral verdict chain
spectrum      eigenvalue lattice, equicontinuous factor structure
cli           command-line pipeline (`tilingdyn` entry point)
"""

from .algebra import (
    AlgebraicNumber,
    Field,
    MinimalPolynomial,
    PerronData,
    conjugates,
    field_create,
    perron,
)

__all__ = [
    "AlgebraicNumber",
    "Field",
    "MinimalPolynomial",
    "PerronData",
    "conjugates",
    "field_create",
    "perron",
]

__version__ = "0.1.0"
