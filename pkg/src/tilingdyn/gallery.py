"""Canonical example systems and their calibrated cut-and-project schemes.

The Fibonacci windows are the exact self-similar acceptance intervals of the
golden-ratio vertex set: with s = conj(lambda)^2 = 2 - lambda they satisfy

    K_a = s K_a  u  (s K_a + conj(lambda))  u  s K_b
    K_b = (s K_a + 1)  u  (s K_b + 1)

with K_a = [-1, lambda-1], K_b = [lambda-1, lambda]; the tests verify these
identities exactly.  The puncture scheme shifts each component by half a tile
length (midpoint control points).
"""

from __future__ import annotations

from fractions import Fraction

from . import substitution
from .algebra import field_create
from .modelset import CutProjectScheme, WindowPiece


def fibonacci():
    return substitution.build("fibonacci", ["a", "b"], {"a": "ab", "b": "a"})


def thue_morse():
    return substitution.build("thue-morse", ["a", "b"], {"a": "ab", "b": "ba"})


def period_doubling():
    return substitution.build("period-doubling", ["a", "b"], {"a": "ab", "b": "aa"})


def silver_mean():
    # expansion 1 + sqrt(2), the Pell substitution
    return substitution.build("silver-mean", ["a", "b"], {"a": "aab", "b": "a"})


def non_pisot_example():
    # expansion (1 + sqrt 13)/2 with conjugate below -1
    return substitution.build("non-pisot", ["a", "b"], {"a": "abbb", "b": "a"})


def _fib_field():
    return field_create((-1, -1, 1))


def _fib_basis(fld):
    lam = fld.generator()
    return ((fld.one, fld.one), (lam, fld.star(lam)))


def fibonacci_vertex_scheme() -> CutProjectScheme:
    """Golden-ratio scheme whose model sets are Fibonacci tiling vertex sets."""
    fld = _fib_field()
    lam = fld.generator()
    piece = WindowPiece(-fld.one, lam)
    return CutProjectScheme("fibonacci-vertices", fld, _fib_basis(fld), (piece,))


def fibonacci_vertex_windows():
    """The per-tile-type acceptance intervals (K_a, K_b)."""
    fld = _fib_field()
    lam = fld.generator()
    return (
        WindowPiece(-fld.one, lam - 1, "a"),
        WindowPiece(lam - 1, lam, "b"),
    )


def fibonacci_puncture_scheme() -> CutProjectScheme:
    """Marked scheme reproducing midpoint punctures of the Fibonacci tiling.

    Each tile type keeps its vertex acceptance interval; accepted points are
    emitted at the vertex position plus half the tile length.
    """
    fld = _fib_field()
    lam = fld.generator()
    half_a = fld.from_rational(Fraction(1, 2))
    half_b = (lam - 1) / 2
    pieces = (
        WindowPiece(-fld.one, lam - 1, "a", half_a),
        WindowPiece(lam - 1, lam, "b", half_b),
    )
    return CutProjectScheme("fibonacci-punctures", fld, _fib_basis(fld), pieces)


SUBSTITUTION_FILES = {
    "fibonacci": """\
type = substitution
name = fibonacci
letters = a b
rule a = ab
rule b = a
expected_polynomial = -1 -1 1
""",
    "thue-morse": """\
type = substitution
name = thue-morse
letters = a b
rule a = ab
rule b = ba
expected_polynomial = -2 1
""",
    "period-doubling": """\
type = substitution
name = period-doubling
letters = a b
rule a = ab
rule b = aa
expected_polynomial = -2 1
""",
    "silver-mean": """\
type = substitution
name = silver-mean
letters = a b
rule a = aab
rule b = a
expected_polynomial = -1 -2 1
""",
    "non-pisot": """\
type = substitution
name = non-pisot
letters = a b
rule a = abbb
rule b = a
expected_polynomial = -3 -1 1
""",
}

SCHEME_FILES = {
    "fibonacci-vertices": """\
type = cut_project
name = fibonacci-vertices
polynomial = -1 -1 1
basis = 1, 1 ; r, 1-r
window = -1 .. r
""",
    "fibonacci-punctures": """\
type = cut_project
name = fibonacci-punctures
polynomial = -1 -1 1
basis = 1, 1 ; r, 1-r
piece a = -1 .. r-1 offset 1/2
piece b = r-1 .. r offset 1/2*r-1/2
""",
}
