"""Exact arithmetic in the real number field Q(lambda) of an expansion factor.

Elements are stored as rational coordinate vectors in the power basis
1, lambda, ..., lambda^(d-1) of a monic irreducible integer polynomial with a
distinguished real root > 1 (the largest real root).  All ring operations,
equality tests and sign computations are exact; numeric values are only ever
derived from refinable rational isolating intervals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .errors import NoRealRootAboveOne, NotExpanding, NotPrimitive, ReduciblePolynomial

_X = sympy.Symbol("x")

Rat = Fraction
Interval = tuple[Fraction, Fraction]


def _to_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, sympy.Rational):
        return Fraction(int(q.p), int(q.q))
    raise TypeError(f"not an exact rational: {q!r}")


def _ival_add(a: Interval, b: Interval) -> Interval:
    return (a[0] + b[0], a[1] + b[1])


def _ival_mul(a: Interval, b: Interval) -> Interval:
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))




@dataclass(frozen=True)
class MinimalPolynomial:
    """Monic irreducible integer polynomial, coefficients ascending."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        cs = self.coefficients
        if len(cs) < 2:
            raise ReduciblePolynomial("polynomial must have positive degree")
        if cs[-1] != 1:
            raise ReduciblePolynomial(f"polynomial is not monic: {cs}")
        poly = self.as_poly()
        if not poly.is_irreducible:
            raise ReduciblePolynomial(f"polynomial factors over Q: {poly.as_expr()}")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def as_poly(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coefficients)), _X, domain="ZZ")

    def __str__(self) -> str:
        return str(self.as_poly().as_expr())


def _real_root_intervals(poly: sympy.Poly) -> list[Interval]:
    out = []
    for (a, b), _mult in poly.intervals():
        out.append((_to_fraction(a), _to_fraction(b)))
    return out


class Field:
    """Handle for Q(lambda) with the distinguished (largest) real root."""

    def __init__(self, minimal_polynomial: MinimalPolynomial):
        self.minimal_polynomial = minimal_polynomial
        self.degree = minimal_polynomial.degree
        self._poly = minimal_polynomial.as_poly()
        roots = _real_root_intervals(self._poly)
        if not roots:
            raise NoRealRootAboveOne(
                f"{minimal_polynomial} has no real root at all"
            )
        self._root_intervals = roots
        # Distinguished root is the largest real root; require it > 1 after
        # refining the top interval clear of 1.
        lo, hi = roots[-1]
        while lo <= 1 < hi:
            lo, hi = self._refine(lo, hi)
        if hi <= 1:
            raise NoRealRootAboveOne(
                f"largest real root of {minimal_polynomial} is not > 1"
            )
        self._root_intervals[-1] = (lo, hi)
        self._reduction = self._reduction_rows()
        self.zero = AlgebraicNumber(self, (Fraction(0),) * self.degree)
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self.one = AlgebraicNumber(self, tuple(one))

    # -- construction -----------------------------------------------------

    def element(self, coords: Iterable) -> AlgebraicNumber:
        cs = tuple(_to_fraction(c) for c in coords)
        if len(cs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(cs)}")
        return AlgebraicNumber(self, cs)

    def from_rational(self, q) -> AlgebraicNumber:
        cs = [Fraction(0)] * self.degree
        cs[0] = _to_fraction(q)
        return AlgebraicNumber(self, tuple(cs))

    def generator(self) -> AlgebraicNumber:
        if self.degree == 1:
            return self.from_rational(-self.minimal_polynomial.coefficients[0])
        cs = [Fraction(0)] * self.degree
        cs[1] = Fraction(1)
        return AlgebraicNumber(self, tuple(cs))

    def coerce(self, value) -> AlgebraicNumber:
        if isinstance(value, AlgebraicNumber):
            if value.field is not self:
                raise TypeError("element of a different field")
            return value
        return self.from_rational(value)

    # -- reduction table ----------------------------------------------------

    def _reduction_rows(self) -> list[tuple[Fraction, ...]]:
        # rows[i] = coordinates of lambda^(d+i) for i = 0..d-2
        d = self.degree
        cs = self.minimal_polynomial.coefficients
        rows: list[tuple[Fraction, ...]] = []
        current = tuple(Fraction(-c) for c in cs[:-1])  # lambda^d
        rows.append(current)
        for _ in range(d - 2):
            shifted = (Fraction(0),) + current[:-1]
            top = current[-1]
            current = tuple(
                shifted[j] + top * rows[0][j] for j in range(d)
            )
            rows.append(current)
        return rows

    # -- root bookkeeping ---------------------------------------------------

    def _refine(self, lo: Fraction, hi: Fraction) -> Interval:
        quarter = (hi - lo) / 4
        s, t = self._poly.refine_root(
            sympy.Rational(lo.numerator, lo.denominator),
            sympy.Rational(hi.numerator, hi.denominator),
            eps=sympy.Rational(quarter.numerator, quarter.denominator),
        )
        return (_to_fraction(s), _to_fraction(t))

    def refine_root_interval(self, index: int, eps: Fraction) -> Interval:
        lo, hi = self._root_intervals[index]
        while hi - lo > eps:
            lo, hi = self._refine(lo, hi)
            self._root_intervals[index] = (lo, hi)
        return lo, hi

    def real_root_count(self) -> int:
        return len(self._root_intervals)

    def root_interval(self, eps: Fraction, index: int | None = None) -> Interval:
        """Rational isolating interval of width <= eps (default: distinguished root)."""
        if index is None:
            index = len(self._root_intervals) - 1
        return self.refine_root_interval(index, eps)

    # -- embeddings ----------------------------------------------------------

    def evaluate_interval(self, coords: Sequence[Fraction], eps: Fraction,
                          index: int | None = None) -> Interval:
        """Interval of width <= eps around sum coords[i] * root^i."""
        if self.degree == 1:
            v = coords[0]
            return (v, v)
        scale = sum(abs(c) for c in coords) + 1
        root_eps = eps / (scale * self.degree * 4)
        while True:
            rl, rh = self.root_interval(root_eps, index)
            acc: Interval = (coords[-1], coords[-1])
            for c in reversed(coords[:-1]):
                acc = _ival_mul(acc, (rl, rh))
                acc = _ival_add(acc, (c, c))
            if acc[1] - acc[0] <= eps:
                return acc
            root_eps /= 16

    def star(self, x: "AlgebraicNumber") -> "AlgebraicNumber":
        """Galois conjugation for quadratic fields (identity in degree 1).

        Maps lambda to its algebraic conjugate -c1 - lambda, i.e. the internal
        space embedding used by quadratic cut-and-project schemes.
        """
        if self.degree == 1:
            return x
        if self.degree != 2:
            raise ValueError("star map implemented for degree <= 2 only")
        c1 = self.minimal_polynomial.coefficients[1]
        a, b = x.coords
        return self.element((a - b * c1, -b))

    def __repr__(self):
        return f"Field({self.minimal_polynomial})"


class AlgebraicNumber:
    """Immutable element of a Field, exact in the power basis."""

    __slots__ = ("field", "coords", "_hash", "_float")

    def __init__(self, field: Field, coords: tuple[Fraction, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_float", None)

    def __setattr__(self, *a):
        raise AttributeError("AlgebraicNumber is immutable")

    # -- ring structure -----------------------------------------------------

    def _coerce(self, other) -> "AlgebraicNumber | None":
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field:
                raise TypeError("mixing elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(
            self.field, tuple(a + b for a, b in zip(self.coords, o.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(
            self.field, tuple(a - b for a, b in zip(self.coords, o.coords))
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return AlgebraicNumber(self.field, (self.coords[0] * o.coords[0],))
        conv = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        conv[i + j] += a * b
        rows = self.field._reduction
        out = conv[:d]
        for i in range(d, 2 * d - 1):
            c = conv[i]
            if c:
                row = rows[i - d]
                for j in range(d):
                    out[j] += c * row[j]
        return AlgebraicNumber(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        d = self.field.degree
        if d == 1:
            return AlgebraicNumber(self.field, (1 / self.coords[0],))
        # Solve (multiplication-by-self) y = 1 over Q.
        cols = []
        for j in range(d):
            basis = [Fraction(0)] * d
            basis[j] = Fraction(1)
            col = self * AlgebraicNumber(self.field, tuple(basis))
            cols.append(col.coords)
        mat = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [Fraction(0)] * d
        rhs[0] = Fraction(1)
        sol = _solve_rational(mat, rhs)
        return AlgebraicNumber(self.field, tuple(sol))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.coords[0]

    def sign(self, embedding: int | None = None) -> int:
        """Exact sign of the real embedding (default: distinguished root)."""
        if self.is_zero():
            return 0
        if self.is_rational():
            c = self.coords[0]
            return (c > 0) - (c < 0)
        if embedding is None:
            f = self._float
            # cached floats are midpoints of certified 2^-60 intervals, so
            # anything clear of zero by 1e-12 is decided
            if f is not None and (f > 1e-12 or f < -1e-12):
                return 1 if f > 0 else -1
        eps = Fraction(1, 1 << 32)
        while True:
            lo, hi = self.field.evaluate_interval(self.coords, eps, embedding)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            # The value is provably nonzero (power basis is a Q-basis), so
            # refinement terminates.
            eps /= Fraction(1 << 32)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, AlgebraicNumber) else other
        if o is None or not isinstance(o, AlgebraicNumber):
            return NotImplemented
        if o.field is not self.field:
            return False
        return self.coords == o.coords

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((id(self.field), self.coords))
            object.__setattr__(self, "_hash", h)
        return h

    def _cmp(self, other) -> int:
        """-1/0/+1 comparison with a certified float fast path.

        Cached floats are midpoints of rigorous 2^-60 intervals, so a gap
        above the relative margin decides the order; near-ties fall back to
        the exact sign of the difference.
        """
        o = self._coerce(other)
        if self.coords == o.coords:
            return 0
        fa, fb = self.to_float(), o.to_float()
        margin = 1e-9 * max(1.0, abs(fa), abs(fb))
        if fa < fb - margin:
            return -1
        if fa > fb + margin:
            return 1
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- numerics --------------------------------------------------------------

    def approx(self, eps: Fraction = Fraction(1, 1 << 48),
               embedding: int | None = None) -> Interval:
        if self.is_rational():
            c = self.coords[0]
            return (c, c)
        return self.field.evaluate_interval(self.coords, eps, embedding)

    def to_float(self) -> float:
        cached = self._float
        if cached is None:
            lo, hi = self.approx(Fraction(1, 1 << 60))
            cached = float((lo + hi) / 2)
            object.__setattr__(self, "_float", cached)
        return cached

    __float__ = to_float

    def floor(self) -> int:
        if self.is_rational():
            c = self.coords[0]
            return c.numerator // c.denominator
        eps = Fraction(1, 1 << 16)
        while True:
            lo, hi = self.approx(eps)
            flo = lo.numerator // lo.denominator
            fhi = hi.numerator // hi.denominator
            if flo == fhi:
                return flo
            eps /= Fraction(1 << 16)

    # -- formatting --------------------------------------------------------------

    def exact_str(self) -> str:
        """Canonical exact string, e.g. '1/2-3/2*r+r^2' (r = field generator)."""
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            if i == 0:
                terms.append((c, ""))
            elif i == 1:
                terms.append((c, "r"))
            else:
                terms.append((c, f"r^{i}"))
        if not terms:
            return "0"
        parts = []
        for k, (c, sym) in enumerate(terms):
            mag = abs(c)
            if sym and mag == 1:
                body = sym
            elif sym:
                body = f"{mag}*{sym}"
            else:
                body = str(mag)
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("-" if c < 0 else "+") + body)
        return "".join(parts)

    def __repr__(self):
        return f"<{self.exact_str()} ~ {self.to_float():.6f}>"


def sort_elements(items: Iterable[AlgebraicNumber]) -> list[AlgebraicNumber]:
    """Exact ascending sort: float presort, exact fix of near-ties."""
    out = sorted(items, key=lambda x: x.to_float())
    for i in range(1, len(out)):
        j = i
        while j > 0 and out[j]._cmp(out[j - 1]) < 0:
            out[j], out[j - 1] = out[j - 1], out[j]
            j -= 1
    return out


def min_element(items: Iterable[AlgebraicNumber]) -> AlgebraicNumber:
    lst = list(items)
    if not lst:
        raise ValueError("empty")
    best = lst[0]
    for x in lst[1:]:
        if x._cmp(best) < 0:
            best = x
    return best


def max_element(items: Iterable[AlgebraicNumber]) -> AlgebraicNumber:
    lst = list(items)
    if not lst:
        raise ValueError("empty")
    best = lst[0]
    for x in lst[1:]:
        if x._cmp(best) > 0:
            best = x
    return best


# -- rational linear algebra -----------------------------------------------


def _solve_rational(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular rational system by Gaussian elimination."""
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def solve_homogeneous(rows: list[list], zero, one) -> list | None:
    """One nonzero kernel vector of a rank-deficient square system, or None.

    Works over any exact field given its zero/one; used with AlgebraicNumber
    entries for Perron eigenvectors.
    """
    n = len(rows)
    a = [row[:] for row in rows]
    pivots: list[tuple[int, int]] = []
    col = 0
    for col in range(n):
        piv = next(
            (r for r in range(len(pivots), n) if not (a[r][col] == zero)), None
        )
        if piv is None:
            continue
        r0 = len(pivots)
        a[r0], a[piv] = a[piv], a[r0]
        inv = one / a[r0][col]
        a[r0] = [v * inv for v in a[r0]]
        for r in range(n):
            if r != r0 and not (a[r][col] == zero):
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[r0])]
        pivots.append((r0, col))
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(n) if c not in pivot_cols]
    if not free:
        return None
    fc = free[0]
    vec = [zero] * n
    vec[fc] = one
    for r, c in pivots:
        vec[c] = -a[r][fc]
    return vec


# -- fields and Perron data ---------------------------------------------------

_field_cache: dict[tuple[int, ...], Field] = {}


def field_create(poly: MinimalPolynomial | Sequence[int]) -> Field:
    """Create (or fetch) the field Q(lambda) for a monic integer polynomial.

    The distinguished embedding sends the generator to the largest real root,
    which must exceed 1.
    """
    if not isinstance(poly, MinimalPolynomial):
        poly = MinimalPolynomial(tuple(int(c) for c in poly))
    key = poly.coefficients
    if key not in _field_cache:
        _field_cache[key] = Field(poly)
    return _field_cache[key]


@dataclass(frozen=True)
class PerronData:
    eigenvalue: AlgebraicNumber
    right_vector: tuple[AlgebraicNumber, ...]
    left_vector: tuple[AlgebraicNumber, ...]
    matrix: tuple[tuple[int, ...], ...]
    field: Field


def primitivity_exponent(matrix: Sequence[Sequence[int]]) -> int | None:
    """Minimal k with matrix^k entrywise positive, or None (Wielandt bound)."""
    n = len(matrix)
    bound = (n - 1) ** 2 + 1
    cur = [[bool(v) for v in row] for row in matrix]
    base = [row[:] for row in cur]
    for k in range(1, bound + 1):
        if all(all(row) for row in cur):
            return k
        if k == bound:
            return None
        cur = [
            [any(cur[i][t] and base[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return None


def _char_poly_factors(matrix) -> list[sympy.Poly]:
    m = sympy.Matrix(matrix)
    cp = m.charpoly(_X)
    poly = sympy.Poly(cp.as_expr(), _X, domain="QQ")
    _, factors = poly.factor_list()
    return [f for f, _ in factors]


def perron(matrix: Sequence[Sequence[int]]) -> PerronData:
    """Exact Perron data of a primitive non-negative integer matrix.

    The Perron eigenvalue is returned as the generator of its own number
    field; the right eigenvector is normalized to first entry 1.
    """
    mat = tuple(tuple(int(v) for v in row) for row in matrix)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix must be square")
    if any(v < 0 for row in mat for v in row):
        raise ValueError("matrix must be non-negative")
    if primitivity_exponent(mat) is None:
        raise NotPrimitive("no power of the matrix is entrywise positive")

    # The Perron root is the largest real root of the characteristic
    # polynomial; locate its irreducible factor by comparing refined
    # isolating intervals across factors.
    candidates = []  # (lo, hi, factor, poly)
    for f in _char_poly_factors(mat):
        fz = sympy.Poly(f, _X, domain="ZZ")
        for (a, b), _mult in fz.intervals():
            candidates.append([_to_fraction(a), _to_fraction(b), fz])
    if not candidates:
        raise NotPrimitive("characteristic polynomial has no real roots")
    # refine all candidate intervals until the maximum is unambiguous
    while True:
        candidates.sort(key=lambda c: c[1])
        top = candidates[-1]
        if all(c is top or c[1] < top[0] for c in candidates):
            break
        for c in candidates:
            if c[0] == c[1]:
                continue  # exact rational root
            quarter = (c[1] - c[0]) / 4
            s, t = c[2].refine_root(
                sympy.Rational(c[0].numerator, c[0].denominator),
                sympy.Rational(c[1].numerator, c[1].denominator),
                eps=sympy.Rational(quarter.numerator, quarter.denominator),
            )
            c[0], c[1] = _to_fraction(s), _to_fraction(t)
    factor = top[2]
    coeffs = tuple(int(c) for c in reversed(factor.all_coeffs()))
    if len(coeffs) == 2 and -coeffs[0] <= 1:
        raise NotExpanding(f"expansion {-coeffs[0]} is not > 1")
    try:
        field = field_create(coeffs)
    except NoRealRootAboveOne as exc:
        raise NotExpanding(str(exc)) from exc
    lam = field.generator()

    def eigvec(rows) -> tuple[AlgebraicNumber, ...]:
        sys_rows = [
            [field.from_rational(rows[i][j]) - (lam if i == j else field.zero)
             for j in range(n)]
            for i in range(n)
        ]
        vec = solve_homogeneous(sys_rows, field.zero, field.one)
        if vec is None:
            raise NotPrimitive("Perron eigenvector solve failed")
        if vec[0].is_zero():
            raise NotPrimitive("Perron eigenvector has zero leading entry")
        inv = vec[0].inverse()
        vec = [v * inv for v in vec]
        if any(v.sign() <= 0 for v in vec):
            raise NotPrimitive("Perron eigenvector is not strictly positive")
        return tuple(vec)

    right = eigvec(mat)
    left = eigvec([[mat[j][i] for j in range(n)] for i in range(n)])
    # exact verification of the eigen equations
    for i in range(n):
        acc = field.zero
        for j in range(n):
            acc = acc + right[j] * mat[i][j]
        if not (acc == lam * right[i]):
            raise AssertionError("eigenvector equation failed exactly")
    return PerronData(lam, right, left, mat, field)


# -- conjugates ----------------------------------------------------------------


@dataclass
class ComplexInterval:
    """Rigorous complex box around one conjugate root; refinable on demand."""

    re: Interval
    im: Interval
    _refiner: object = None

    def width(self) -> Fraction:
        return max(self.re[1] - self.re[0], self.im[1] - self.im[0])

    def refine(self) -> "ComplexInterval":
        if self._refiner is None:
            return self
        return self._refiner(self)

    def is_real(self) -> bool:
        return self.im == (0, 0)

    def center(self) -> complex:
        return complex(
            float((self.re[0] + self.re[1]) / 2), float((self.im[0] + self.im[1]) / 2)
        )

    def modulus_sq_bounds(self) -> tuple[Fraction, Fraction]:
        """Exact rational bounds on |z|^2 over the box."""
        def sq_bounds(iv: Interval) -> Interval:
            lo, hi = iv
            if lo <= 0 <= hi:
                return (Fraction(0), max(lo * lo, hi * hi))
            m = min(abs(lo), abs(hi))
            return (m * m, max(lo * lo, hi * hi))

        return _ival_add(sq_bounds(self.re), sq_bounds(self.im))


def minimal_polynomial_of(x: AlgebraicNumber) -> tuple[int, ...]:
    """Monic integer minimal polynomial of a field element (ascending coeffs).

    Determined by the first linear dependence among 1, x, x^2, ... over Q;
    requires the element to be an algebraic integer (true for expansion data).
    """
    d = x.field.degree
    powers = [x.field.one]
    for _ in range(d):
        powers.append(powers[-1] * x)
    for k in range(1, d + 1):
        # try to write x^k as a rational combination of lower powers
        mat = [[powers[j].coords[i] for j in range(k)] for i in range(d)]
        rhs = [powers[k].coords[i] for i in range(d)]
        sol = _solve_least(mat, rhs, k)
        if sol is not None:
            coeffs = [-c for c in sol] + [Fraction(1)]
            den = 1
            for c in coeffs:
                den = den * c.denominator // _gcd(den, c.denominator)
            if den != 1:
                continue  # not an algebraic integer at this degree; keep going
            return tuple(int(c) for c in coeffs)
    raise ValueError("no integral minimal polynomial found")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _solve_least(mat, rhs, k) -> list[Fraction] | None:
    """Solve an overdetermined consistent rational system (d rows, k cols)."""
    rows = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if len(piv_cols) < k:
        return None
    for i in range(r, len(rows)):
        if rows[i][k] != 0:
            return None  # inconsistent: no dependence at this degree
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][k]
    return sol


def conjugates(x: AlgebraicNumber, digits: int = 20) -> list[ComplexInterval]:
    """Rigorously separated complex boxes around all conjugate roots of x."""
    coeffs = minimal_polynomial_of(x)
    poly = sympy.Poly(list(reversed(coeffs)), _X, domain="ZZ")
    if poly.degree() == 1:
        c = _to_fraction(-coeffs[0])
        return [ComplexInterval((c, c), (Fraction(0), Fraction(0)))]
    roots = poly.all_roots()

    def _make_refiner(root, nd):
        def refiner(_box):
            return box_at(root, nd * 2)
        return refiner

    def box_at(root, nd: int) -> ComplexInterval:
        val = root.evalf(nd)
        rad = Fraction(1, 10 ** (nd - 3))
        re = _to_fraction(sympy.Rational(sympy.re(val)))
        if root.is_real:
            zero = Fraction(0)
            return ComplexInterval((re - rad, re + rad), (zero, zero),
                                   _make_refiner(root, nd))
        im = _to_fraction(sympy.Rational(sympy.im(val)))
        return ComplexInterval((re - rad, re + rad), (im - rad, im + rad),
                               _make_refiner(root, nd))

    nd = digits
    while True:
        boxes = [box_at(r, nd) for r in roots]
        if _boxes_disjoint(boxes):
            return boxes
        nd *= 2


def _boxes_disjoint(boxes: list[ComplexInterval]) -> bool:
    for a, b in itertools.combinations(boxes, 2):
        if not (
            a.re[1] < b.re[0] or b.re[1] < a.re[0]
            or a.im[1] < b.im[0] or b.im[1] < a.im[0]
        ):
            return False
    return True


def unit_circle_root_count(coeffs: Sequence[int]) -> int:
    """Exact number of roots of modulus exactly 1 of a monic irreducible
    integer polynomial (ascending coefficients).

    An irreducible polynomial with a root on the unit circle must equal its
    own reversal (the inverse of such a root is also a root); in that case the
    circle roots biject with real roots of the Chebyshev-type transform in
    (-2, 2), counted exactly by Sturm sequences.
    """
    cs = list(coeffs)
    d = len(cs) - 1
    if d == 1:
        return 1 if abs(cs[0]) == 1 else 0
    if cs != cs[::-1]:
        return 0
    if d % 2 == 1:
        # odd-degree palindromic polynomials have the rational root -1,
        # impossible for an irreducible polynomial of degree > 1
        return 0
    e = d // 2
    # p(x)/x^e = c_e + sum_{k>=1} c_{e+k} (x^k + x^-k) and x^k + x^-k = P_k(w)
    w = sympy.Symbol("w")
    p_prev, p_cur = sympy.Integer(2), w
    q = sympy.Integer(cs[e])
    for k in range(1, e + 1):
        if k == 1:
            pk = p_cur
        else:
            p_prev, p_cur = p_cur, sympy.expand(w * p_cur - p_prev)
            pk = p_cur
        q += cs[e + k] * pk
    qp = sympy.Poly(q, w, domain="ZZ")
    return 2 * qp.count_roots(-2, 2)
