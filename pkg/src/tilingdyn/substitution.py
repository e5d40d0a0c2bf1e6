"""Substitution rules on 1-D prototiles: validation, supertiles, periodic
points, the allowed-patch language, and the Pisot-family screen.

Tile lengths are always forced to the Perron eigenvector of the
abelianization, which makes the support equation
sum of lengths over rule(i) = lambda * length(i) hold exactly.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import algebra
from .algebra import AlgebraicNumber, ComplexInterval, PerronData
from .errors import (
    EmptyRule,
    NotPrimitive,
    PeriodicTilingSpace,
    ResourceBudget,
)
from .tiling import Patch, PlacedTile, ProtoTile, TilingWindow


@dataclass(frozen=True, eq=False)
class SubstitutionSystem:
    """A validated substitution with exact Perron geometry.

    The abelianization uses the column convention: matrix[i][j] counts
    occurrences of letter i in rule(j).  Instances are handles: equality and
    hashing are by identity.
    """

    name: str
    alphabet: tuple[ProtoTile, ...]
    rule: dict  # letter -> rule word as a plain string
    expansion: AlgebraicNumber
    matrix: tuple[tuple[int, ...], ...]
    perron: PerronData
    primitivity_power: int
    _supertile_words: dict = field(default_factory=dict, compare=False, repr=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, compare=False, repr=False
    )

    @property
    def field(self):
        return self.expansion.field

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.alphabet)

    def proto(self, letter: str) -> ProtoTile:
        for p in self.alphabet:
            if p.id == letter:
                return p
        raise KeyError(letter)

    def length(self, letter: str) -> AlgebraicNumber:
        return self.proto(letter).length

    def min_length(self) -> AlgebraicNumber:
        return min(p.length for p in self.alphabet)

    def max_length(self) -> AlgebraicNumber:
        return max(p.length for p in self.alphabet)

    def is_constant_length(self) -> bool:
        ls = {len(self.rule[a]) for a in self.letters}
        return len(ls) == 1 and self.expansion.is_rational()

    def supertile_word(self, letter: str, level: int) -> str:
        """Letter sequence of the level-fold substitution image (cached)."""
        key = (letter, level)
        with self._lock:
            cached = self._supertile_words.get(key)
        if cached is not None:
            return cached
        if level == 0:
            word = letter
        else:
            prev = self.supertile_word(letter, level - 1)
            word = "".join(itertools.chain.from_iterable(self.rule[c] for c in prev))
        with self._lock:
            self._supertile_words.setdefault(key, word)
        return word


def build(name: str, letters: Sequence, rule: dict) -> SubstitutionSystem:
    """Validate a substitution spec and compute its exact Perron geometry.

    `letters` is a sequence of single-character ids or (id, mark) pairs;
    `rule` maps each id to a nonempty word over the ids.  Raises
    NotPrimitive, NotExpanding, EmptyRule or PeriodicTilingSpace on bad
    input.
    """
    ids = []
    marks = {}
    for entry in letters:
        if isinstance(entry, str):
            ids.append(entry)
            marks[entry] = None
        else:
            lid, mark = entry
            ids.append(lid)
            marks[lid] = mark
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate letters")
    if any(len(lid) != 1 for lid in ids):
        raise ValueError("letter ids must be single characters")
    for lid in ids:
        word = rule.get(lid)
        if not word:
            raise EmptyRule(f"letter {lid} has an empty or missing rule word")
        for c in word:
            if c not in ids:
                raise ValueError(f"rule for {lid} uses unknown letter {c}")
    n = len(ids)
    index = {lid: i for i, lid in enumerate(ids)}
    matrix = tuple(
        tuple(sum(1 for c in rule[ids[j]] if c == ids[i]) for j in range(n))
        for i in range(n)
    )
    k = algebra.primitivity_exponent(matrix)
    if k is None:
        raise NotPrimitive(f"{name}: no power of the abelianization is positive")
    pd = algebra.perron(matrix)
    lam = pd.eigenvalue
    lengths = pd.left_vector  # right Perron vector of the transpose
    alphabet = tuple(
        ProtoTile(lid, lengths[index[lid]], marks[lid]) for lid in ids
    )
    rule_t = {lid: "".join(rule[lid]) for lid in ids}
    sys = SubstitutionSystem(
        name=name,
        alphabet=alphabet,
        rule=rule_t,
        expansion=lam,
        matrix=matrix,
        perron=pd,
        primitivity_power=k,
    )
    # exact support equation: the Perron choice makes it an identity
    for lid in ids:
        total = sys.field.zero
        for c in rule_t[lid]:
            total = total + sys.length(c)
        if not (total == lam * sys.length(lid)):
            raise AssertionError(f"support equation failed for {lid}")
    if not is_aperiodic(sys):
        raise PeriodicTilingSpace(f"{name}: not aperiodic")
    return sys


def is_primitive(sys: SubstitutionSystem) -> tuple[bool, Optional[int]]:
    k = algebra.primitivity_exponent(sys.matrix)
    return (k is not None), k


# -- language ------------------------------------------------------------------


def _legal_two_words(sys: SubstitutionSystem) -> set[str]:
    """All legal 2-letter words, by closure of the 2-gram refinement map."""
    seed_level = sys.primitivity_power + 1
    current: set[str] = set()
    for a in sys.letters:
        w = sys.supertile_word(a, seed_level)
        current |= {w[i: i + 2] for i in range(len(w) - 1)}
    while True:
        nxt = set(current)
        for uv in current:
            img = "".join(sys.rule[c] for c in uv)
            nxt |= {img[i: i + 2] for i in range(len(img) - 1)}
        if nxt == current:
            return current
        current = nxt


def legal_words(sys: SubstitutionSystem, n: int) -> set[str]:
    """All legal words of length n.

    Every legal n-word sits inside the j-fold image of a legal 2-word once
    every letter's j-fold image has at least n letters, so the scan below is
    exhaustive.
    """
    if n <= 0:
        return {""}
    if n == 1:
        return set(sys.letters)
    two = _legal_two_words(sys)
    if n == 2:
        return two
    j = 1
    while min(len(sys.supertile_word(a, j)) for a in sys.letters) < n:
        j += 1
    out: set[str] = set()
    for uv in two:
        img = sys.supertile_word(uv[0], j) + sys.supertile_word(uv[1], j)
        out |= {img[i: i + n] for i in range(len(img) - n + 1)}
    return out


def complexity(sys: SubstitutionSystem, n: int) -> int:
    return len(legal_words(sys, n))


def is_aperiodic(sys: SubstitutionSystem) -> bool:
    """Screen for aperiodicity of the tiling space.

    Irrational expansion forces aperiodicity (a periodic hull would make
    lambda * L a multiple of the period L, hence lambda an integer).  For
    integer expansion the subshift is periodic iff the complexity function
    plateaus, which for a minimal subshift must happen by the scan bound.
    """
    if sys.field.degree > 1:
        return True
    scan_level = sys.primitivity_power + 3
    bound = max(len(sys.supertile_word(a, scan_level)) for a in sys.letters) + 1
    prev = complexity(sys, 1)
    for n in range(2, bound + 1):
        cur = complexity(sys, n)
        if cur == prev:
            return False
        prev = cur
    return True


# -- supertiles and periodic points ---------------------------------------------


def supertile(sys: SubstitutionSystem, letter: str, level: int) -> Patch:
    """The level-fold substitution image of a prototile, left endpoint at 0."""
    if level < 0:
        raise ValueError("level must be >= 0")
    word = sys.supertile_word(letter, level)
    tiles = []
    pos = sys.field.zero
    for c in word:
        proto = sys.proto(c)
        tiles.append(PlacedTile(proto, pos))
        pos = pos + proto.length
    return Patch(tiles, validate=False)


@dataclass(frozen=True, eq=False)
class PeriodicPoint:
    """Two-sided fixed seed x|y of a power of the substitution.

    The y supertiles grow to the right of the origin, the x supertiles to
    the left; the seed letters return to themselves after `period` steps.
    Instances are handles (identity equality); use .key() for value identity.
    """

    system: SubstitutionSystem
    left: str
    right: str
    period: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def label(self) -> str:
        return f"{self.left}|{self.right}"

    def window_at_level(self, m: int) -> TilingWindow:
        cached = self._cache.get(m)
        if cached is not None:
            return cached
        sys = self.system
        steps = self.period * m
        left_patch = supertile(sys, self.left, steps)
        _, left_span = left_patch.support()
        right_patch = supertile(sys, self.right, steps)
        _, right_span = right_patch.support()
        patch = Patch(
            list(left_patch.shifted(-left_span).tiles) + list(right_patch.tiles),
            validate=False,
        )
        radius = min(left_span, right_span)
        win = TilingWindow(
            patch, radius, ("periodic_point", sys.name, self.label, steps)
        )
        self._cache[m] = win
        return win

    def key(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"PeriodicPoint({self.label}, period={self.period})"


def _orbit_period(mapping: dict, start: str) -> Optional[int]:
    """Length of the cycle through `start` if start lies on one, else None."""
    seen = {start: 0}
    cur = start
    for step in range(1, len(mapping) + 2):
        cur = mapping[cur]
        if cur == start:
            return step
        if cur in seen:
            return None
        seen[cur] = step
    return None


def periodic_points(sys: SubstitutionSystem) -> list[PeriodicPoint]:
    """All boundary-seed periodic points x|y (legal 2-word xy, cyclic seeds).

    Every substitution-periodic tiling with a tile boundary at the origin
    arises from exactly one listed seed; interior fixed points are not
    modeled.
    """
    first = {a: sys.rule[a][0] for a in sys.letters}
    last = {a: sys.rule[a][-1] for a in sys.letters}
    legal2 = _legal_two_words(sys)
    out = []
    for x in sys.letters:
        px = _orbit_period(last, x)
        if px is None:
            continue
        for y in sys.letters:
            py = _orbit_period(first, y)
            if py is None:
                continue
            if x + y not in legal2:
                continue
            k = _lcm(px, py)
            out.append(PeriodicPoint(sys, x, y, k))
    return sorted(out, key=lambda p: (p.left, p.right))


def _lcm(a: int, b: int) -> int:
    g, x = a, b
    while x:
        g, x = x, g % x
    return a * b // g


def expand_to_radius(pp: PeriodicPoint, radius, *,
                     max_steps: int = 64) -> TilingWindow:
    """Window of the periodic tiling with radius >= the request."""
    sys = pp.system
    rad = sys.field.coerce(radius)
    if rad.sign() < 0:
        raise ValueError("radius must be >= 0")
    m = 0
    while True:
        steps = pp.period * m
        if steps > max_steps:
            raise ResourceBudget(
                f"expansion to radius {rad.to_float():g} exceeds {max_steps} steps"
            )
        growth = sys.expansion ** steps
        left_span = growth * sys.length(pp.left)
        right_span = growth * sys.length(pp.right)
        if left_span >= rad and right_span >= rad:
            return pp.window_at_level(m)
        m += 1


# -- allowed patches --------------------------------------------------------------


@dataclass(frozen=True)
class AllowedPatches:
    """Translational classes of R-patches, each anchored at its first tile."""

    radius: AlgebraicNumber
    classes: tuple[Patch, ...]
    scan_level: int
    scan_letter: str

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(p.word() for p in self.classes)


def allowed_patches(sys: SubstitutionSystem, radius) -> AllowedPatches:
    """All translational classes of R-patches occurring in the tiling space.

    Scans one deep supertile; the depth combines the primitivity power with
    the expansion growth needed for repetitivity (recorded in the result) and
    is checked by comparing against one extra level.
    """
    rad = sys.field.coerce(radius)
    if rad.sign() < 0:
        raise ValueError("radius must be >= 0")
    level = _repetitivity_level(sys, rad)
    letter = sys.letters[0]
    classes = _scan_classes(sys, letter, level, rad)
    deeper = _scan_classes(sys, letter, level + 1, rad)
    if {p.word() for p in classes} != {p.word() for p in deeper}:
        classes = deeper  # defensive: settle on the deeper scan
    ordered = tuple(sorted(classes, key=lambda p: p.word()))
    return AllowedPatches(rad, ordered, level, letter)


def _repetitivity_level(sys: SubstitutionSystem, rad) -> int:
    target = 4 * rad + 4 * sys.max_length()
    level = sys.primitivity_power
    while not ((sys.expansion ** level) * sys.min_length() >= target):
        level += 1
    return level + sys.primitivity_power


def _scan_classes(sys, letter, level, rad) -> set[Patch]:
    patch = supertile(sys, letter, level)
    tiles = patch.tiles
    endpoints = [t.start for t in tiles] + [tiles[-1].end]
    lo, hi = patch.support()
    # candidate ball centers: endpoints shifted by +-R plus generic midpoints
    candidates = []
    for e in endpoints:
        candidates.append(e + rad)
        candidates.append(e - rad)
    candidates.sort()
    centers = []
    margin = sys.max_length()
    for c1, c2 in zip(candidates, candidates[1:]):
        if c1 < c2:
            centers.append((c1 + c2) / 2)
    centers.extend(candidates)
    out: set[Patch] = set()
    for x in centers:
        if not (lo + margin <= x - rad and x + rad <= hi - margin):
            continue
        run = [t for t in tiles if t.start <= x + rad and t.end >= x - rad]
        if not run:
            continue
        anchor = run[0].start
        out.add(Patch([PlacedTile(t.proto, t.translate - anchor) for t in run],
                      validate=False))
    return out


# -- Pisot family screen ------------------------------------------------------------


@dataclass(frozen=True)
class PisotVerdict:
    is_pisot_family: bool
    degree: int
    multiplicity: int
    witness: Optional[ComplexInterval] = None
    reason: str = ""

    def __bool__(self):
        return self.is_pisot_family


def pisot_family_check(sys: SubstitutionSystem) -> PisotVerdict:
    """Decide whether the expansion's conjugate set is a Pisot family.

    Verdict is positive iff no conjugate other than the expansion itself has
    modulus >= 1.  Presence on the unit circle is excluded exactly first
    (reciprocal-polynomial test), after which interval refinement of the
    conjugate boxes terminates.
    """
    lam = sys.expansion
    coeffs = algebra.minimal_polynomial_of(lam)
    d = len(coeffs) - 1
    if algebra.unit_circle_root_count(coeffs) > 0:
        boxes = algebra.conjugates(lam)
        witness = _circle_witness(boxes)
        return PisotVerdict(False, d, 1, witness,
                            "a conjugate lies exactly on the unit circle")
    boxes = algebra.conjugates(lam)
    lam_lo, lam_hi = lam.approx(Fraction(1, 1 << 20))
    for box in boxes:
        if box.is_real() and box.re[0] <= lam_hi and box.re[1] >= lam_lo:
            continue  # the distinguished root itself
        while True:
            lo, hi = box.modulus_sq_bounds()
            if hi < 1:
                break
            if lo > 1:
                return PisotVerdict(False, d, 1, box,
                                    "conjugate with modulus > 1")
            box = box.refine()
    return PisotVerdict(True, d, 1, None, "all other conjugates inside the circle")


def _circle_witness(boxes) -> ComplexInterval:
    for box in boxes:
        lo, hi = box.modulus_sq_bounds()
        if lo <= 1 <= hi:
            return box
    return boxes[0]


def compose(sys: SubstitutionSystem, power: int) -> SubstitutionSystem:
    """The substitution iterated `power` times, rebuilt from scratch."""
    if power < 1:
        raise ValueError("power must be >= 1")
    new_rule = {a: sys.supertile_word(a, power) for a in sys.letters}
    letters = [(p.id, p.mark) for p in sys.alphabet]
    return build(f"{sys.name}^{power}", letters, new_rule)
