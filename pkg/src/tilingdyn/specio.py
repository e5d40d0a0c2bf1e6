"""Human-editable input files with exact-arithmetic string literals.

Two file kinds share one key-value syntax (``key = value``, ``#`` comments):

substitution files::

    type = substitution
    name = fibonacci
    letters = a b
    rule a = ab
    rule b = a
    expected_polynomial = -1 -1 1      # optional, ascending coefficients

cut-and-project files::

    type = cut_project
    name = fibonacci-vertices
    polynomial = -1 -1 1
    basis = 1, 1 ; r, 1-r              # rows (physical, internal)
    window = -1 .. r-1                 # unmarked piece, repeatable
    piece a = -1 .. r-1 offset 1/2     # marked piece with control offset

Field elements use rationals, the generator symbol ``r``, ``+ - *``, powers
``r^2`` and parentheses, e.g. ``3/2-1/2*r``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import substitution as subst
from .algebra import AlgebraicNumber, Field, field_create
from .errors import SpecFileError
from .modelset import CutProjectScheme, WindowPiece

_TOKEN = re.compile(r"\s*(\d+|[r+\-*/^()])")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecFileError(f"bad character in field element: {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_field_element(text: str, fld: Field) -> AlgebraicNumber:
    """Parse an exact field-element literal."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise SpecFileError(f"malformed field element {text!r}")
        pos += 1
        return tok

    def parse_expr():
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term():
        node = parse_factor()
        while peek() == "*":
            take("*")
            node = node * parse_factor()
        return node

    def parse_factor():
        if peek() == "-":
            take("-")
            return -parse_factor()
        if peek() == "+":
            take("+")
            return parse_factor()
        return parse_atom()

    def parse_atom():
        tok = peek()
        if tok == "(":
            take("(")
            node = parse_expr()
            take(")")
            return node
        if tok == "r":
            take("r")
            base = fld.generator()
            if peek() == "^":
                take("^")
                exp = int(take())
                return base**exp
            return base
        if tok is not None and tok.isdigit():
            take()
            num = int(tok)
            if peek() == "/":
                take("/")
                den = int(take())
                return fld.from_rational(Fraction(num, den))
            return fld.from_rational(num)
        raise SpecFileError(f"malformed field element {text!r}")

    node = parse_expr()
    if pos != len(tokens):
        raise SpecFileError(f"trailing tokens in field element {text!r}")
    return node


def _parse_lines(text: str) -> list[tuple[str, str]]:
    pairs = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecFileError(f"expected 'key = value': {raw!r}")
        key, value = line.split("=", 1)
        pairs.append((key.strip(), value.strip()))
    return pairs


def _file_type(pairs) -> str:
    for k, v in pairs:
        if k == "type":
            return v
    return "substitution"


def load_substitution(text: str) -> subst.SubstitutionSystem:
    """Parse and build a substitution system from file text."""
    pairs = _parse_lines(text)
    if _file_type(pairs) != "substitution":
        raise SpecFileError("not a substitution file")
    name = "unnamed"
    letters: list = []
    marks: dict = {}
    rules: dict = {}
    expected_poly = None
    for key, value in pairs:
        if key == "type":
            continue
        elif key == "name":
            name = value
        elif key == "letters":
            letters = value.split()
        elif key.startswith("mark "):
            marks[key.split(None, 1)[1]] = value
        elif key.startswith("rule "):
            letter = key.split(None, 1)[1]
            rules[letter] = value.replace(" ", "")
        elif key == "expected_polynomial":
            expected_poly = tuple(int(c) for c in value.split())
        else:
            raise SpecFileError(f"unknown key {key!r} in substitution file")
    if not letters:
        raise SpecFileError("missing 'letters'")
    entries = [(lid, marks.get(lid)) for lid in letters]
    system = subst.build(name, entries, rules)
    if expected_poly is not None:
        got = system.field.minimal_polynomial.coefficients
        if got != expected_poly:
            raise SpecFileError(
                f"expansion polynomial {got} does not match expected "
                f"{expected_poly}"
            )
    return system


def _parse_piece(value: str, mark, fld: Field) -> WindowPiece:
    rest, _, off_text = value.partition(" offset ")
    lo_text, sep, hi_text = rest.partition("..")
    if not sep:
        raise SpecFileError(f"malformed window piece {value!r} (need 'lo .. hi')")
    lo = parse_field_element(lo_text.strip(), fld)
    hi = parse_field_element(hi_text.strip(), fld)
    off = parse_field_element(off_text.strip(), fld) if off_text else None
    return WindowPiece(lo, hi, mark, off)


def load_scheme(text: str) -> CutProjectScheme:
    """Parse a cut-and-project scheme from file text."""
    pairs = _parse_lines(text)
    if _file_type(pairs) != "cut_project":
        raise SpecFileError("not a cut_project file")
    name = "unnamed"
    fld: Field | None = None
    basis = None
    pieces: list[WindowPiece] = []
    for key, value in pairs:
        if key == "type":
            continue
        elif key == "name":
            name = value
        elif key == "polynomial":
            fld = field_create(tuple(int(c) for c in value.split()))
        elif key == "basis":
            if fld is None:
                raise SpecFileError("'polynomial' must precede 'basis'")
            rows = []
            for row in value.split(";"):
                comps = [parse_field_element(c.strip(), fld)
                         for c in row.split(",")]
                if len(comps) != 2:
                    raise SpecFileError("basis rows need 2 components")
                rows.append(tuple(comps))
            basis = tuple(rows)
        elif key == "window" or key.startswith("piece"):
            if fld is None:
                raise SpecFileError("'polynomial' must precede window pieces")
            mark = key.split(None, 1)[1] if key.startswith("piece ") else None
            pieces.append(_parse_piece(value, mark, fld))
        else:
            raise SpecFileError(f"unknown key {key!r} in cut_project file")
    if fld is None or basis is None or not pieces:
        raise SpecFileError("scheme needs 'polynomial', 'basis' and a window")
    if len(basis) != 2:
        raise SpecFileError("exactly 2 basis vectors required (1+1 dimensions)")
    return CutProjectScheme(name, fld, basis, tuple(pieces))


def load_file(text: str):
    """Dispatch on the 'type' key."""
    pairs = _parse_lines(text)
    kind = _file_type(pairs)
    if kind == "substitution":
        return load_substitution(text)
    if kind == "cut_project":
        return load_scheme(text)
    raise SpecFileError(f"unknown file type {kind!r}")
