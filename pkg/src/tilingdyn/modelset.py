"""Cut-and-project schemes with exact quadratic/rational data.

Physical and internal dimension are 1 (the fully implemented case); the
window is a finite union of closed internal intervals, optionally marked and
carrying a control-point offset per piece (multi-component model sets).  The
plain single-interval unmarked window is the default construction.

Membership, singularity and torus reduction are exact: singularity at x is
decided by solving the boundary-hit equation over the rationals, not by
numeric search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .algebra import AlgebraicNumber, Field, _solve_least
from .delone import PointSet
from .errors import (
    DegenerateWindow,
    DensityUndecided,
    ProjectionNotInjective,
    RegionTooLarge,
)

Boundary = Literal["closed", "keep_lower", "keep_upper"]


@dataclass(frozen=True)
class WindowPiece:
    """Closed internal interval with an optional mark and control offset.

    Membership of a lattice point is tested against [lo, hi] in internal
    space; accepted points are emitted at physical position + offset and
    labeled with the mark.
    """

    lo: AlgebraicNumber
    hi: AlgebraicNumber
    mark: Optional[str] = None
    offset: Optional[AlgebraicNumber] = None

    def length(self) -> AlgebraicNumber:
        return self.hi - self.lo


@dataclass(frozen=True, eq=False)
class CutProjectScheme:
    """Lattice in R x R with exact projections and an interval-union window."""

    name: str
    field: Field
    basis: tuple[tuple[AlgebraicNumber, AlgebraicNumber], ...]  # (phys, internal)
    pieces: tuple[WindowPiece, ...]

    @property
    def phys(self) -> tuple[AlgebraicNumber, AlgebraicNumber]:
        return (self.basis[0][0], self.basis[1][0])

    @property
    def internal(self) -> tuple[AlgebraicNumber, AlgebraicNumber]:
        return (self.basis[0][1], self.basis[1][1])

    def project_phys(self, i: int, j: int) -> AlgebraicNumber:
        return self.phys[0] * i + self.phys[1] * j

    def project_internal(self, i: int, j: int) -> AlgebraicNumber:
        return self.internal[0] * i + self.internal[1] * j


def interval_scheme(name: str, fld: Field, basis, lo, hi) -> CutProjectScheme:
    """Convenience constructor for the plain single-window scheme."""
    piece = WindowPiece(fld.coerce(lo), fld.coerce(hi))
    bs = tuple((fld.coerce(p), fld.coerce(q)) for p, q in basis)
    return CutProjectScheme(name, fld, bs, (piece,))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    injective_phys: bool
    injective_internal: bool
    dense_phys: bool
    dense_internal: bool
    window_ok: bool
    notes: tuple[str, ...]


def _ratio_is_rational(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """Exact test whether a/b is rational (b nonzero): coordinates parallel."""
    if b.is_zero():
        raise ZeroDivisionError
    return (a / b).is_rational()


def scheme_validate(s: CutProjectScheme) -> ValidationReport:
    """Exact validation of the standard cut-and-project assumptions.

    For a planar lattice with internal rank 1, injectivity and dense image
    of either projection are both equivalent to the irrationality of the
    component ratio, decided exactly on field coordinates.
    """
    notes = []
    p1, p2 = s.phys
    q1, q2 = s.internal
    det = p1 * q2 - p2 * q1
    if det.is_zero():
        raise ProjectionNotInjective("lattice basis is degenerate (det = 0)")

    def proj_ok(u1, u2) -> bool:
        if u1.is_zero() or u2.is_zero():
            return False
        return not _ratio_is_rational(u1, u2)

    inj_phys = proj_ok(p1, p2)
    inj_int = proj_ok(q1, q2)
    if not inj_phys:
        raise ProjectionNotInjective(
            "physical projection kills a nonzero lattice vector"
        )
    if not inj_int:
        raise ProjectionNotInjective(
            "internal projection kills a nonzero lattice vector"
        )
    window_ok = True
    for piece in s.pieces:
        if not (piece.lo < piece.hi):
            raise DegenerateWindow(
                f"window piece [{piece.lo.exact_str()}, {piece.hi.exact_str()}] "
                "is not the closure of its interior"
            )
    by_mark: dict = {}
    for piece in s.pieces:
        by_mark.setdefault(piece.mark, []).append(piece)
    for mark, group in by_mark.items():
        group = sorted(group, key=lambda p: p.lo.to_float())
        for a, b in zip(group, group[1:]):
            if not (a.hi <= b.lo):
                raise DegenerateWindow(
                    f"window pieces of mark {mark!r} overlap"
                )
    notes.append("stabilizer trivial: window is bounded and nonempty")
    return ValidationReport(
        ok=True,
        injective_phys=inj_phys,
        injective_internal=inj_int,
        dense_phys=inj_phys,
        dense_internal=inj_int,
        window_ok=window_ok,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class ModelSetEntry:
    position: AlgebraicNumber
    mark: Optional[str]
    lattice: tuple[int, int]
    piece_index: int


@dataclass(frozen=True, eq=False)
class ModelSetSample:
    scheme: CutProjectScheme
    shift: tuple[AlgebraicNumber, AlgebraicNumber]
    region: tuple[AlgebraicNumber, AlgebraicNumber]
    boundary: Boundary
    entries: tuple[ModelSetEntry, ...]

    def positions(self) -> tuple[AlgebraicNumber, ...]:
        return tuple(e.position for e in self.entries)

    def point_set(self) -> PointSet:
        lo, hi = self.region
        radius = max(abs(lo), abs(hi))
        return PointSet(self.positions(), radius)

    def marked_positions(self) -> tuple[tuple[Optional[str], AlgebraicNumber], ...]:
        return tuple((e.mark, e.position) for e in self.entries)


def _in_piece(value: AlgebraicNumber, piece: WindowPiece,
              boundary: Boundary) -> bool:
    if boundary == "closed":
        return piece.lo <= value <= piece.hi
    if boundary == "keep_lower":
        return piece.lo <= value < piece.hi
    return piece.lo < value <= piece.hi


def model_set(s: CutProjectScheme, shift, region, *,
              boundary: Boundary = "closed",
              budget: int = 2_000_000) -> ModelSetSample:
    """All points of the model set in the region, with exact membership.

    `shift` is the pair (physical, internal) of exact field elements; the
    window convention defaults to closed and can be switched to the one-sided
    limits used for fibers over singular torus points.
    """
    fld = s.field
    x_par = fld.coerce(shift[0])
    x_perp = fld.coerce(shift[1])
    lo, hi = fld.coerce(region[0]), fld.coerce(region[1])
    if not (lo <= hi):
        raise ValueError("empty region")
    p1, p2 = s.phys
    q1, q2 = s.internal
    det = p1 * q2 - p2 * q1
    entries = []
    for piece_index, piece in enumerate(s.pieces):
        off = piece.offset if piece.offset is not None else fld.zero
        phys_lo, phys_hi = lo - off - x_par, hi - off - x_par
        int_lo, int_hi = piece.lo - x_perp, piece.hi - x_perp
        # invert (i, j) = B^-1 (phys, internal) at the four corners
        i_bounds, j_bounds = [], []
        for u, v in itertools.product((phys_lo, phys_hi), (int_lo, int_hi)):
            i_val = (u * q2 - v * p2) / det
            j_val = (v * p1 - u * q1) / det
            i_bounds.append(i_val)
            j_bounds.append(j_val)
        i_min = min(i_bounds).floor()
        i_max = max(i_bounds).floor() + 1
        if (i_max - i_min) > budget:
            raise RegionTooLarge(
                f"lattice scan of {i_max - i_min} columns exceeds budget"
            )
        for i in range(i_min, i_max + 1):
            # internal constraint pins j for each i
            rem_lo = int_lo - q1 * i
            rem_hi = int_hi - q1 * i
            if q2.sign() < 0:
                rem_lo, rem_hi = rem_hi, rem_lo
            j_start = (rem_lo / q2).floor()
            j_stop = (rem_hi / q2).floor() + 1
            for j in range(j_start, j_stop + 1):
                internal = q1 * i + q2 * j + x_perp
                if not _in_piece(internal, piece, boundary):
                    continue
                pos = p1 * i + p2 * j + x_par + off
                if lo <= pos <= hi:
                    entries.append(
                        ModelSetEntry(pos, piece.mark, (i, j), piece_index)
                    )
    entries.sort(key=lambda e: (e.position.to_float(), e.mark or ""))
    entries = _sort_exact(entries)
    return ModelSetSample(s, (x_par, x_perp), (lo, hi), boundary, tuple(entries))


def _sort_exact(entries: list[ModelSetEntry]) -> list[ModelSetEntry]:
    # float presort above is nearly correct; fix rare near-ties exactly
    out = list(entries)
    for i in range(1, len(out)):
        j = i
        while j > 0 and out[j].position < out[j - 1].position:
            out[j], out[j - 1] = out[j - 1], out[j]
            j -= 1
    return out


# -- singular points -----------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryHit:
    lattice: tuple[int, int]
    piece_index: int
    edge: str  # "lo" | "hi"


@dataclass(frozen=True)
class SingularityCertificate:
    singular: bool
    hits: tuple[BoundaryHit, ...]
    method: str = "exact rational solve of the boundary-hit linear system"


def _integer_solutions(q1, q2, target) -> list[tuple[int, int]]:
    """Integer (i, j) with i*q1 + j*q2 = target, exact.

    With internal injectivity the solution over Q is unique (coordinates give
    an overdetermined full-rank system) except in the purely rational case,
    where a gcd argument applies.
    """
    d = q1.field.degree
    if d == 1:
        a, b, c = q1.as_rational(), q2.as_rational(), target.as_rational()
        from math import gcd

        den = a.denominator * b.denominator * c.denominator
        ai, bi, ci = int(a * den), int(b * den), int(c * den)
        g = gcd(ai, bi)
        if g == 0:
            return [(0, 0)] if ci == 0 else []
        if ci % g != 0:
            return []
        # one solution via the extended euclidean algorithm
        x0, y0 = _ext_gcd(ai, bi)
        scale = ci // g
        return [(x0 * scale, y0 * scale)]
    mat = [[q1.coords[i], q2.coords[i]] for i in range(d)]
    rhs = [target.coords[i] for i in range(d)]
    sol = _solve_least(mat, rhs, 2)
    if sol is None:
        return []
    i_val, j_val = sol
    if i_val.denominator != 1 or j_val.denominator != 1:
        return []
    return [(int(i_val), int(j_val))]


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def is_singular(s: CutProjectScheme, shift) -> SingularityCertificate:
    """Exact decision whether the internal coordinate hits window boundaries.

    Solves i*q1 + j*q2 = edge - x_perp for each window edge; with the
    validated injectivity the rational solution is unique, so the decision
    carries an explicit witness or a proof of absence.
    """
    fld = s.field
    x_perp = fld.coerce(shift[1])
    hits = []
    for piece_index, piece in enumerate(s.pieces):
        for edge_name, edge in (("lo", piece.lo), ("hi", piece.hi)):
            for (i, j) in _integer_solutions(
                s.internal[0], s.internal[1], edge - x_perp
            ):
                hits.append(BoundaryHit((i, j), piece_index, edge_name))
    return SingularityCertificate(bool(hits), tuple(hits))


# -- torus ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusPoint:
    """Point of (R x R) / lattice, exact fractional coordinates in [0, 1)."""

    scheme: CutProjectScheme
    frac_coords: tuple[AlgebraicNumber, AlgebraicNumber]
    representative: tuple[AlgebraicNumber, AlgebraicNumber]

    def __eq__(self, other):
        if not isinstance(other, TorusPoint):
            return NotImplemented
        return (
            self.scheme is other.scheme
            and self.frac_coords == other.frac_coords
        )

    def __hash__(self):
        return hash((id(self.scheme), self.frac_coords))


def torus_map(s: CutProjectScheme, shift) -> TorusPoint:
    """Reduce a point of R x R modulo the lattice to the fundamental domain."""
    fld = s.field
    x_par = fld.coerce(shift[0])
    x_perp = fld.coerce(shift[1])
    p1, p2 = s.phys
    q1, q2 = s.internal
    det = p1 * q2 - p2 * q1
    t1 = (x_par * q2 - x_perp * p2) / det
    t2 = (x_perp * p1 - x_par * q1) / det
    t1r = t1 - t1.floor()
    t2r = t2 - t2.floor()
    rep = (p1 * t1r + p2 * t2r, q1 * t1r + q2 * t2r)
    return TorusPoint(s, (t1r, t2r), rep)


def fiber(s: CutProjectScheme, xi: TorusPoint, region,
          budget: int = 2_000_000) -> list[ModelSetSample]:
    """All model sets over a torus point, on the region.

    Non-singular points have a unique preimage; at singular points the two
    one-sided window limits (keep lower edges / keep upper edges) realize the
    distinct local limits, which differ in finitely many points per region.
    """
    if xi.scheme is not s:
        raise ValueError("torus point belongs to a different scheme")
    cert = is_singular(s, xi.representative)
    if not cert.singular:
        return [model_set(s, xi.representative, region, budget=budget)]
    lower = model_set(s, xi.representative, region, boundary="keep_lower",
                      budget=budget)
    upper = model_set(s, xi.representative, region, boundary="keep_upper",
                      budget=budget)
    if lower.marked_positions() == upper.marked_positions():
        return [lower]
    return [lower, upper]


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    justification: str


def regularity(s: CutProjectScheme) -> RegularityVerdict:
    """Interval-union windows always have measure-zero (finite) boundary."""
    edges = 2 * len(s.pieces)
    return RegularityVerdict(
        True,
        f"window boundary is a finite set ({edges} interval endpoints); "
        "its Haar measure in the internal line is zero",
    )


def polygon_fiber_unsupported() -> None:
    raise DensityUndecided(
        "fiber enumeration is implemented for interval windows (internal "
        "rank 1) only; the polygonal case is not modeled"
    )
