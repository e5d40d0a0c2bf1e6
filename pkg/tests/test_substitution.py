import math
from fractions import Fraction

import pytest

from tilingdyn import substitution
from tilingdyn.errors import (
    EmptyRule,
    NotExpanding,
    NotPrimitive,
    PeriodicTilingSpace,
    ResourceBudget,
)
from tilingdyn.substitution import (
    allowed_patches,
    complexity,
    compose,
    expand_to_radius,
    legal_words,
    periodic_points,
    pisot_family_check,
    supertile,
)


def test_build_fibonacci_geometry(fib):
    lam = fib.expansion
    assert fib.field.minimal_polynomial.coefficients == (-1, -1, 1)
    assert fib.length("a") == fib.field.one
    assert fib.length("b") == lam - 1
    assert fib.matrix == ((1, 1), (1, 0))


def test_build_constant_length(tm):
    assert tm.expansion.as_rational() == 2
    assert tm.length("a") == tm.field.one
    assert tm.length("b") == tm.field.one
    assert tm.is_constant_length()


def test_build_rejects_non_expanding():
    with pytest.raises(NotExpanding, match="expansion 1 is not > 1"):
        substitution.build("identity", ["a"], {"a": "a"})


def test_build_rejects_periodic():
    with pytest.raises(PeriodicTilingSpace):
        substitution.build("doubling", ["a"], {"a": "aa"})
    with pytest.raises(PeriodicTilingSpace):
        substitution.build("abab", ["a", "b"], {"a": "ab", "b": "ab"})


def test_build_rejects_non_primitive():
    with pytest.raises(NotPrimitive):
        substitution.build("lower", ["a", "b"], {"a": "ab", "b": "b"})


def test_build_rejects_empty_rule():
    with pytest.raises(EmptyRule):
        substitution.build("hole", ["a", "b"], {"a": "ab", "b": ""})


def test_support_equation_exact(fib, tm, pd):
    for sys in (fib, tm, pd):
        for a in sys.letters:
            total = sys.field.zero
            for c in sys.rule[a]:
                total = total + sys.length(c)
            assert total == sys.expansion * sys.length(a)


def test_is_primitive_witness(fib, tm):
    assert substitution.is_primitive(fib) == (True, 2)
    assert substitution.is_primitive(tm) == (True, 1)


# -- supertiles ---------------------------------------------------------------


def test_supertile_level_one(fib):
    p = supertile(fib, "a", 1)
    assert p.word() == "ab"
    assert p.tiles[0].translate == fib.field.zero
    assert p.tiles[1].translate == fib.field.one
    lo, hi = p.support()
    assert hi == fib.expansion  # support [0, phi]


def test_supertile_level_zero(fib):
    p = supertile(fib, "b", 0)
    assert p.word() == "b"
    assert len(p) == 1


def test_supertile_level_five_count_and_span(fib):
    # tile count is the Fibonacci number 13 (column sums of M^5)
    p = supertile(fib, "a", 5)
    assert len(p) == 13
    lo, hi = p.support()
    assert lo == fib.field.zero
    assert hi == fib.expansion ** 5


def test_supertile_nesting_exact(fib, tm, pd):
    # applying the rule tile-by-tile to level m reproduces level m+1 exactly
    from tilingdyn.tiling import Patch

    for sys in (fib, tm, pd):
        for m in range(0, 4):
            level_m = supertile(sys, "a", m)
            expanded = []
            for t in level_m.tiles:
                img = supertile(sys, t.proto.id, 1)
                expanded.extend(img.shifted(sys.expansion * t.translate).tiles)
            assert Patch(expanded) == supertile(sys, "a", m + 1)


# -- language ------------------------------------------------------------------


def _fibonacci_word_oracle(n_letters: int) -> str:
    # independent oracle: characteristic golden-ratio word via exact floors
    from tilingdyn.algebra import field_create

    f = field_create((-1, -1, 1))
    phi = f.generator()
    out = []
    for n in range(1, n_letters + 1):
        lo = (phi * (n + 1)).floor() - (phi * n).floor()
        out.append("a" if lo == 2 else "b")
    return "".join(out)


def test_fibonacci_language_against_mechanical_word(fib):
    word = _fibonacci_word_oracle(600)
    for n in (1, 2, 3, 5, 8):
        grams = {word[i: i + n] for i in range(len(word) - n)}
        assert grams == legal_words(fib, n)


def test_fibonacci_complexity_sturmian(fib):
    for n in range(1, 13):
        assert complexity(fib, n) == n + 1


def _thue_morse_word_oracle(n_letters: int) -> str:
    # independent oracle: parity of binary digit sums
    return "".join(
        "b" if bin(n).count("1") % 2 else "a" for n in range(n_letters)
    )


def test_thue_morse_language_against_parity_word(tm):
    word = _thue_morse_word_oracle(4096)
    for n in (1, 2, 3, 4, 6, 9):
        grams = {word[i: i + n] for i in range(len(word) - n)}
        assert grams == legal_words(tm, n)


def test_legal_two_words(fib, tm, pd):
    assert legal_words(fib, 2) == {"aa", "ab", "ba"}
    assert legal_words(tm, 2) == {"aa", "ab", "ba", "bb"}
    assert legal_words(pd, 2) == {"aa", "ab", "ba"}


# -- periodic points ---------------------------------------------------------------


def test_periodic_points_fibonacci(fib):
    pps = periodic_points(fib)
    assert [(p.left, p.right, p.period) for p in pps] == [
        ("a", "a", 2),
        ("b", "a", 2),
    ]


def test_periodic_points_thue_morse(tm):
    pps = periodic_points(tm)
    assert sorted(p.label for p in pps) == ["a|a", "a|b", "b|a", "b|b"]
    assert all(p.period == 2 for p in pps)


def test_periodic_points_period_doubling(pd):
    pps = periodic_points(pd)
    assert sorted(p.label for p in pps) == ["a|a", "b|a"]


def test_periodic_point_windows_nest(fib):
    pp = periodic_points(fib)[0]
    w1 = pp.window_at_level(1)
    w2 = pp.window_at_level(2)
    assert w1.patch.key_set() <= w2.patch.key_set()


def test_expand_to_radius_seed(fib):
    pp = periodic_points(fib)[0]
    win = expand_to_radius(pp, 0)
    assert len(win.patch) == 2
    assert win.patch.word() == "aa"


def test_expand_to_radius_growth_count(fib):
    # smallest even step count s with phi^s >= phi^4 is 4
    pp = periodic_points(fib)[0]
    win = expand_to_radius(pp, fib.expansion ** 4)
    assert win.generator[-1] == 4
    assert win.radius >= fib.expansion ** 4


def test_expand_to_radius_budget(fib):
    pp = periodic_points(fib)[0]
    with pytest.raises(ResourceBudget):
        expand_to_radius(pp, 10**9, max_steps=8)


# -- allowed patches -----------------------------------------------------------------


def test_allowed_patches_fibonacci_small(fib):
    ap = allowed_patches(fib, 0)
    assert set(ap.words) == {"a", "b", "ab", "ba", "aa"}


def test_allowed_patches_thue_morse_two_letters(tm):
    ap = allowed_patches(tm, Fraction(1, 4))
    two = {w for w in ap.words if len(w) == 2}
    assert two == {"ab", "ba", "aa", "bb"}


def test_allowed_patches_monotone_in_radius(fib):
    counts = [len(allowed_patches(fib, r).classes) for r in (0, 1, 2)]
    assert counts == sorted(counts)
    assert len(set(counts)) > 1


def test_allowed_patches_occur_in_periodic_points(fib):
    ap = allowed_patches(fib, 1)
    for pp in periodic_points(fib):
        word = expand_to_radius(pp, 60).patch.word()
        for cls in ap.words:
            assert cls in word


# -- Pisot screen ----------------------------------------------------------------------


def test_pisot_check_fibonacci(fib):
    v = pisot_family_check(fib)
    assert v.is_pisot_family
    assert (v.degree, v.multiplicity) == (2, 1)


def test_pisot_check_constant_length(tm):
    v = pisot_family_check(tm)
    assert v.is_pisot_family
    assert (v.degree, v.multiplicity) == (1, 1)


def test_pisot_check_negative_witness():
    sys = substitution.build("wide", ["a", "b"], {"a": "abbb", "b": "a"})
    # expansion is the largest root of x^2 - x - 3
    assert abs(sys.expansion.to_float() - (1 + math.sqrt(13)) / 2) < 1e-9
    v = pisot_family_check(sys)
    assert not v.is_pisot_family
    assert v.witness is not None
    assert abs(v.witness.center().real - (1 - math.sqrt(13)) / 2) < 1e-6


def test_compose_squares(fib):
    f2 = compose(fib, 2)
    assert f2.rule == {"a": "aba", "b": "ab"}
    assert f2.expansion.to_float() == pytest.approx(fib.expansion.to_float() ** 2)
    assert f2.field.minimal_polynomial.coefficients == (1, -3, 1)
