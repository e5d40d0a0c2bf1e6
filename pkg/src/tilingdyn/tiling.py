"""Tiles, patches, finite tiling windows, and the two tiling metrics.

Everything is one-dimensional with exact interval supports in Q(lambda).
A window is the computational stand-in for a tiling restricted to a ball
around the origin; the metrics are therefore window evaluations and carry a
`window_limited` flag whenever the window may hide a smaller infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import AlgebraicNumber, Field
from .errors import RadiusExceedsWindow, WindowTooSmall

ROUNDING = Fraction(1, 1 << 48)  # outward rounding quantum for metric values


@dataclass(frozen=True)
class ProtoTile:
    """Prototile with 1-D support [0, length] and an optional mark."""

    id: str
    length: AlgebraicNumber
    mark: Optional[str] = None

    def __post_init__(self):
        if self.length.sign() <= 0:
            raise ValueError(f"prototile {self.id} needs positive length")

    def __repr__(self):
        return f"ProtoTile({self.id}, len={self.length.exact_str()})"


@dataclass(frozen=True)
class PlacedTile:
    proto: ProtoTile
    translate: AlgebraicNumber

    @property
    def start(self) -> AlgebraicNumber:
        return self.translate

    @property
    def end(self) -> AlgebraicNumber:
        return self.translate + self.proto.length

    def key(self):
        return (self.proto.id, self.translate)

    def shifted(self, v: AlgebraicNumber) -> "PlacedTile":
        return PlacedTile(self.proto, self.translate + v)

    def meets_closed_ball(self, radius) -> bool:
        """True iff the support intersects [-radius, radius]."""
        return self.start <= radius and self.end >= -radius

    def entry_radius(self) -> AlgebraicNumber:
        """Smallest R with the tile meeting the closed R-ball at 0."""
        zero = self.proto.length.field.zero
        s, e = self.start, self.end
        if s.sign() > 0:
            return s
        if e.sign() < 0:
            return -e
        return zero


class Patch:
    """Finite ordered collection of placed tiles with disjoint interiors."""

    __slots__ = ("tiles",)

    def __init__(self, tiles: Iterable[PlacedTile], *, validate: bool = True):
        ts = sorted(tiles, key=lambda t: t.translate)
        if validate:
            for a, b in zip(ts, ts[1:]):
                if a.end > b.start:
                    raise ValueError(
                        f"overlapping interiors: {a.proto.id}@{a.translate.exact_str()} "
                        f"vs {b.proto.id}@{b.translate.exact_str()}"
                    )
        self.tiles = tuple(ts)

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def __eq__(self, other):
        if not isinstance(other, Patch):
            return NotImplemented
        return [t.key() for t in self.tiles] == [t.key() for t in other.tiles]

    def __hash__(self):
        return hash(tuple(t.key() for t in self.tiles))

    def is_empty(self) -> bool:
        return not self.tiles

    def support(self) -> tuple[AlgebraicNumber, AlgebraicNumber]:
        if not self.tiles:
            raise ValueError("empty patch has no support")
        return self.tiles[0].start, self.tiles[-1].end

    def shifted(self, v: AlgebraicNumber) -> "Patch":
        return Patch((t.shifted(v) for t in self.tiles), validate=False)

    def restrict(self, radius) -> "Patch":
        return Patch(
            (t for t in self.tiles if t.meets_closed_ball(radius)), validate=False
        )

    def key_set(self) -> set:
        return {t.key() for t in self.tiles}

    def word(self) -> str:
        return "".join(t.proto.id for t in self.tiles)


@dataclass(frozen=True)
class TilingWindow:
    """An R-window of a tiling: patch covering at least [-radius, radius]."""

    patch: Patch
    radius: AlgebraicNumber
    generator: tuple = ("unknown",)

    def __post_init__(self):
        if self.patch.is_empty():
            raise ValueError("window patch must be nonempty")
        lo, hi = self.patch.support()
        if lo > -self.radius or hi < self.radius:
            raise ValueError("window patch does not cover [-radius, radius]")
        # normalize: keep exactly the tiles meeting the closed radius-ball
        object.__setattr__(self, "patch", self.patch.restrict(self.radius))

    def r_patch(self, radius) -> Patch:
        """Tiles meeting the closed ball of the given radius at the origin."""
        rad = self.radius.field.coerce(radius)
        if rad > self.radius:
            raise RadiusExceedsWindow(
                f"requested radius {rad.to_float():g} exceeds window "
                f"radius {self.radius.to_float():g}"
            )
        return self.patch.restrict(rad)

    def shifted(self, v: AlgebraicNumber) -> "TilingWindow":
        """Window of T - v, radius shrunk by |v|."""
        new_radius = self.radius - abs(v)
        if new_radius.sign() <= 0:
            raise WindowTooSmall("shift consumes the whole window")
        return TilingWindow(
            self.patch.shifted(-v), new_radius, self.generator + ("shift", v.exact_str())
        )


@dataclass(frozen=True)
class PunctureMap:
    """Translation-equivariant choice of an interior point per prototile."""

    offsets: dict

    def __post_init__(self):
        for pid, (proto, off) in self.offsets.items():
            if not (proto.length.field.zero < off < proto.length):
                raise ValueError(f"puncture for {pid} must be interior")

    def puncture(self, tile: PlacedTile) -> AlgebraicNumber:
        _, off = self.offsets[tile.proto.id]
        return tile.translate + off


def midpoint_puncture_map(alphabet: Sequence[ProtoTile]) -> PunctureMap:
    """Default puncture map: left endpoint shifted by half the tile length."""
    return PunctureMap(
        {p.id: (p, p.length / 2) for p in alphabet}
    )


# -- metric machinery ---------------------------------------------------------


@dataclass(frozen=True)
class MetricValue:
    """Directed-rounded rational metric evaluation on finite windows."""

    value: Fraction
    window_limited: bool
    exact: Optional[AlgebraicNumber] = None  # set where the value stays in the field

    def __float__(self):
        return float(self.value)


def _sqrt_upper(q: Fraction, quantum: Fraction = ROUNDING) -> Fraction:
    """Rational upper bound of sqrt(q), within one quantum."""
    if q < 0:
        raise ValueError("negative radicand")
    k = quantum.denominator  # power of two
    n = (q.numerator * k * k) // q.denominator
    return Fraction(math.isqrt(n) + 1, k)


def _round_up(q: Fraction, quantum: Fraction = ROUNDING) -> Fraction:
    return Fraction(math.ceil(q / quantum)) * quantum


def _upper(x: AlgebraicNumber, eps: Fraction = ROUNDING) -> Fraction:
    return x.approx(eps)[1]


def _lower(x: AlgebraicNumber, eps: Fraction = ROUNDING) -> Fraction:
    return x.approx(eps)[0]


@dataclass
class _Run:
    start: AlgebraicNumber
    end: AlgebraicNumber
    at_boundary: bool


def _agreement_runs(p1: Patch, p2: Patch, shift: AlgebraicNumber) -> list[_Run]:
    """Maximal intervals on which p1 and (p2 + shift) carry identical tiles.

    A run is a maximal block of consecutive common tiles of p1 (adjacent,
    no gaps); `at_boundary` marks runs touching the first or last tile of
    either restriction, where the true agreement may extend beyond the data.
    """
    shifted_keys = {(t.proto.id, t.translate + shift) for t in p2.tiles}
    runs: list[_Run] = []
    current: list[PlacedTile] = []
    for t in p1.tiles:
        if t.key() in shifted_keys:
            if current and not (current[-1].end == t.start):
                runs.append(_make_run(current, p1))
                current = []
            current.append(t)
        else:
            if current:
                runs.append(_make_run(current, p1))
                current = []
    if current:
        runs.append(_make_run(current, p1))
    return runs


def _make_run(tiles: list[PlacedTile], p1: Patch) -> _Run:
    at_boundary = tiles[0] is p1.tiles[0] or tiles[-1] is p1.tiles[-1]
    return _Run(tiles[0].start, tiles[-1].end, at_boundary)


def _candidate_eps(w: AlgebraicNumber, run: _Run) -> Fraction:
    """Upper bound of the minimal feasible eps for one alignment and run.

    Feasibility of eps (with optimal common slide) is the conjunction of
    four monotone constraints; the critical value of each is exact except
    for two square roots, bounded from above at the rounding quantum.
    """
    f = w.field
    zero = f.zero
    m = w if w.sign() < 0 else zero  # min(0, w)
    big = w if w.sign() > 0 else zero  # max(0, w)
    a, b = run.start, run.end
    gap_lo = _lower(b - a)
    eps = ROUNDING
    while gap_lo <= 0:
        eps /= 1 << 16
        gap_lo = _lower(b - a, eps)
    terms = [
        _upper(abs(w)),
        _round_up(Fraction(2) / gap_lo),
    ]
    for x in (a - m, big - b):
        xh = _upper(x)
        terms.append(_round_up(xh + _sqrt_upper(xh * xh + 2)))
    return max(terms)


def metric_d(w1: TilingWindow, w2: TilingWindow,
             shift_cap: Fraction = Fraction(2)) -> MetricValue:
    """Window evaluation of the tiling metric allowing small common translates.

    Minimizes eps/(eps+1) over configurations where, after translating each
    tiling by at most eps/2, the two agree on the closed 1/eps-ball.  All
    candidate alignments come from exact same-prototile translate differences;
    the returned rational is an outward-rounded upper bound of the candidate
    infimum and is flagged window-limited when the window may hide a smaller
    value.
    """
    fld = w1.radius.field
    common = min(w1.radius, w2.radius)
    if common < 1:
        raise WindowTooSmall("metric needs windows of radius >= 1")
    p1 = w1.patch.restrict(common)
    p2 = w2.patch.restrict(common)
    if p1 == p2:
        limited = not (w1.generator == w2.generator and w1.radius == w2.radius)
        return MetricValue(Fraction(0), limited, fld.zero)

    # candidate alignments: same-prototile translate differences, capped
    # (float prescreen with margin, then exact filtering)
    cap_f = float(shift_cap) + 1e-6
    shifts: dict = {}
    for t1 in p1.tiles:
        f1 = t1.translate.to_float()
        for t2 in p2.tiles:
            if t1.proto.id != t2.proto.id:
                continue
            if abs(f1 - t2.translate.to_float()) > cap_f:
                continue
            w = t1.translate - t2.translate
            if w not in shifts and abs(w) <= shift_cap:
                shifts[w] = True

    best: Fraction | None = None
    best_boundary = False
    for w in shifts:
        for run in _agreement_runs(p1, p2, w):
            eps = _candidate_eps(w, run)
            d = eps / (1 + eps)
            if best is None or d < best:
                best = d
                best_boundary = run.at_boundary
    if best is None:
        return MetricValue(Fraction(1), True, None)
    # the cap cannot hide a better candidate when the found value beats the
    # cap's own lower bound eps >= shift_cap
    cap_safe = best <= shift_cap / (1 + shift_cap)
    limited = best_boundary or not cap_safe
    return MetricValue(best, limited, None)


def metric_d0(w1: TilingWindow, w2: TilingWindow) -> MetricValue:
    """Window evaluation of the translate-free tiling metric.

    The value is 1/(1 + R) where R is the entry radius of the first tile on
    which the two windows disagree; agreement to the window edge returns the
    corresponding upper bound flagged window-limited.
    """
    fld = w1.radius.field
    common = min(w1.radius, w2.radius)
    if common < 1:
        raise WindowTooSmall("metric needs windows of radius >= 1")
    p1 = w1.patch.restrict(common)
    p2 = w2.patch.restrict(common)
    keys1, keys2 = p1.key_set(), p2.key_set()
    if keys1 == keys2:
        limited = not (w1.generator == w2.generator and w1.radius == w2.radius)
        return MetricValue(Fraction(0), limited, fld.zero)
    lonely = [t for t in list(p1.tiles) + list(p2.tiles)
              if t.key() not in (keys1 & keys2)]
    r_d = min(t.entry_radius() for t in lonely)
    exact = fld.one / (fld.one + r_d)
    return MetricValue(_round_up(_upper(exact)), False, exact)


# -- serialization -------------------------------------------------------------


def patch_to_text(patch: Patch) -> str:
    """Line-based exact patch serialization: 'proto_id<TAB>translate'."""
    return "".join(f"{t.proto.id}\t{t.translate.exact_str()}\n" for t in patch.tiles)


def patch_from_text(text: str, alphabet: Sequence[ProtoTile],
                    fld: Field) -> Patch:
    from .specio import parse_field_element

    protos = {p.id: p for p in alphabet}
    tiles = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        pid, raw = line.split("\t")
        tiles.append(PlacedTile(protos[pid], parse_field_element(raw, fld)))
    return Patch(tiles)


def patch_to_svg(patch: Patch, scale: float = 40.0) -> str:
    """Small standalone SVG picture of a patch (tiles as labeled boxes)."""
    if patch.is_empty():
        return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>'
    lo, hi = patch.support()
    x0, x1 = lo.to_float(), hi.to_float()
    width = (x1 - x0) * scale + 20
    palette = {}
    rects = []
    for t in patch.tiles:
        pid = t.proto.id
        if pid not in palette:
            hue = (37 * len(palette)) % 360
            palette[pid] = f"hsl({hue},60%,75%)"
        xs = (t.start.to_float() - x0) * scale + 10
        ws = (t.end.to_float() - t.start.to_float()) * scale
        rects.append(
            f'<rect x="{xs:.2f}" y="20" width="{ws:.2f}" height="40" '
            f'fill="{palette[pid]}" stroke="black"/>'
            f'<text x="{xs + ws / 2:.2f}" y="45" text-anchor="middle" '
            f'font-size="14">{pid}</text>'
        )
    origin = (0.0 - x0) * scale + 10
    rects.append(
        f'<line x1="{origin:.2f}" y1="10" x2="{origin:.2f}" y2="70" '
        'stroke="red" stroke-dasharray="3,2"/>'
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="80">'
        + "".join(rects)
        + "</svg>"
    )
