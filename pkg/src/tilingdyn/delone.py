"""Finite-window diagnostics for Delone, FLC and Meyer properties.

The Meyer property is falsifiable but never provable from a finite window,
so the report exposes the uniform-discreteness margin of the difference set
across nested windows instead of a bare boolean; `meyer_consistent` demands
the margin to be constant over the last two window doublings.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import AlgebraicNumber
from .errors import WindowTooSmall
from .tiling import PunctureMap, TilingWindow


@dataclass(frozen=True)
class PointSet:
    """Sorted duplicate-free exact point set on a 1-D window."""

    points: tuple[AlgebraicNumber, ...]
    window_radius: AlgebraicNumber

    def __post_init__(self):
        for a, b in zip(self.points, self.points[1:]):
            if not (a < b):
                raise ValueError("points must be strictly increasing")

    def __len__(self):
        return len(self.points)

    def restrict(self, radius) -> "PointSet":
        rad = self.window_radius.field.coerce(radius)
        pts = tuple(p for p in self.points if -rad <= p <= rad)
        return PointSet(pts, rad)

    def gaps(self) -> list[AlgebraicNumber]:
        return [b - a for a, b in zip(self.points, self.points[1:])]


def punctures(window: TilingWindow, pmap: PunctureMap) -> PointSet:
    """Exact puncture positions of all tiles in the window."""
    pts = [pmap.puncture(t) for t in window.patch.tiles]
    return PointSet(tuple(sorted(pts)), window.radius)


def difference_set(ps: PointSet, cap) -> PointSet:
    """{x - y : x, y in the set, |x - y| <= cap}, exact and sorted."""
    from .algebra import sort_elements

    fld = ps.window_radius.field
    cap = fld.coerce(cap)
    if cap > 2 * ps.window_radius:
        raise ValueError("cap exceeds the window diameter")
    if not ps.points:
        return PointSet((), cap)
    out = {fld.zero}
    pts = ps.points
    floats = [p.to_float() for p in pts]
    cap_f = cap.to_float() + 1e-9
    for i, x in enumerate(pts):
        for k in range(i + 1, len(pts)):
            if floats[k] - floats[i] > cap_f:
                break
            d = pts[k] - x
            if d > cap:
                break
            out.add(d)
            out.add(-d)
    return PointSet(tuple(sort_elements(out)), cap)


def min_positive_gap(ps: PointSet) -> Optional[AlgebraicNumber]:
    gaps = [g for g in ps.gaps() if g.sign() > 0]
    return min(gaps) if gaps else None


def flc_class_count(ps: PointSet, radius) -> int:
    """Number of translational classes of local configurations at radius R."""
    fld = ps.window_radius.field
    rad = fld.coerce(radius)
    rad_f = rad.to_float()
    win_f = ps.window_radius.to_float()
    floats = [p.to_float() for p in ps.points]
    classes = set()
    for i, x in enumerate(ps.points):
        if abs(floats[i]) + rad_f > win_f - 1e-9:
            if abs(x) + rad > ps.window_radius:
                continue
        local = []
        for k, p in enumerate(ps.points):
            gap = abs(floats[k] - floats[i])
            if gap > rad_f + 1e-9:
                continue
            if gap > rad_f - 1e-9 and not (abs(p - x) <= rad):
                continue
            local.append(p - x)
        classes.add(tuple(local))
    return len(classes)


@dataclass(frozen=True)
class DeloneReport:
    r_packing: Optional[AlgebraicNumber]
    R_covering: Optional[AlgebraicNumber]
    flc_classes: tuple[tuple[float, int], ...]  # (radius, class count)
    meyer_gap: Optional[AlgebraicNumber]
    margins: tuple[tuple[float, float], ...]  # (window radius, margin) floats
    meyer_consistent: bool

    def summary(self) -> str:
        buf = []
        buf.append(f"r_packing          {_fmt(self.r_packing)}")
        buf.append(f"R_covering         {_fmt(self.R_covering)}")
        for rad, cnt in self.flc_classes:
            buf.append(f"flc_classes[{rad:g}]   {cnt}")
        buf.append(f"meyer_gap          {_fmt(self.meyer_gap)}")
        for rad, margin in self.margins:
            buf.append(f"margin[{rad:g}]        {margin:.9g}")
        buf.append(f"meyer_consistent   {str(self.meyer_consistent).lower()}")
        return "\n".join(buf)


def _fmt(x: Optional[AlgebraicNumber]) -> str:
    return "none" if x is None else f"{x.to_float():.9g} ({x.exact_str()})"


def meyer_diagnostic(ps: PointSet) -> DeloneReport:
    """Delone constants, FLC counts and Meyer margins on nested windows.

    The margin at radius R is the uniform-discreteness gap of the capped
    difference set of the R-restriction; it can only shrink as R grows.
    """
    if len(ps) < 8:
        raise WindowTooSmall("need at least 8 points for the diagnostic")
    gaps = ps.gaps()
    mean_gap = (ps.points[-1] - ps.points[0]) / (len(ps) - 1)
    if ps.window_radius < 10 * max(gaps):
        raise WindowTooSmall("window must be >= 10 covering radii")
    r_packing = min(gaps)
    R_covering = max(gaps) / 2
    radii = [mean_gap * 2, mean_gap * 4, mean_gap * 8]
    flc = tuple(
        (float(r.to_float()), flc_class_count(ps, r)) for r in radii
    )
    margins = []
    margin_values = []
    R = ps.window_radius
    for rad in (R / 4, R / 2, R):
        sub = ps.restrict(rad)
        if len(sub) < 2:
            continue
        diffs = difference_set(sub, rad / 2)
        margin = min_positive_gap(diffs)
        if margin is not None:
            margins.append((float(rad.to_float()), float(margin.to_float())))
            margin_values.append(margin)
    meyer_gap = margin_values[-1] if margin_values else None
    consistent = (
        len(margin_values) >= 3
        and margin_values[-1] == margin_values[-2]
    )
    return DeloneReport(
        r_packing=r_packing,
        R_covering=R_covering,
        flc_classes=flc,
        meyer_gap=meyer_gap,
        margins=tuple(margins),
        meyer_consistent=consistent,
    )


# -- 2-D point sets (rational / quadratic coordinate mode) -----------------------


@dataclass(frozen=True)
class PointSet2D:
    """Exact planar point set; supports difference sets and min gaps only."""

    points: tuple[tuple[AlgebraicNumber, AlgebraicNumber], ...]

    def __len__(self):
        return len(self.points)

    def difference_set(self, cap) -> "PointSet2D":
        if not self.points:
            return PointSet2D(())
        fld = self.points[0][0].field
        cap = fld.coerce(cap)
        seen = {(fld.zero, fld.zero)}
        pts = self.points
        for i, (xa, ya) in enumerate(pts):
            for xb, yb in pts[i + 1:]:
                dx, dy = xb - xa, yb - ya
                if abs(dx) <= cap and abs(dy) <= cap:
                    seen.add((dx, dy))
                    seen.add((-dx, -dy))
        ordered = sorted(seen, key=lambda p: (p[0].to_float(), p[1].to_float()))
        return PointSet2D(tuple(ordered))

    def min_gap_sq(self) -> Optional[AlgebraicNumber]:
        """Exact minimum squared Euclidean distance between distinct points."""
        best = None
        pts = self.points
        for i, (xa, ya) in enumerate(pts):
            for xb, yb in pts[i + 1:]:
                d2 = (xb - xa) ** 2 + (yb - ya) ** 2
                if best is None or d2 < best:
                    best = d2
        return best


# -- CSV export --------------------------------------------------------------------


def points_to_csv(ps: PointSet) -> str:
    """CSV with exact strings plus a float rendering column."""
    buf = io.StringIO()
    buf.write("exact,float\n")
    for p in ps.points:
        buf.write(f"{p.exact_str()},{p.to_float():.12g}\n")
    return buf.getvalue()
