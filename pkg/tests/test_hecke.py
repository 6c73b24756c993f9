import math
import random
from fractions import Fraction

import pytest

from dedesym.classical import dedekind_sum_fast
from dedesym.cocycle import GroupElement
from dedesym.field import FieldElement, embed_float, sign
from dedesym.hecke import (
    ReductionError,
    TrivialCosetError,
    Word,
    iter_word_nodes,
    make_group,
    membership,
    nearest_translation,
    normalize,
    psi_word,
    psi_word_with_matrix,
    rationality_report,
    reciprocity_residual_hecke,
    rosen_reduce,
    symbol_descent,
    symbol_from_word,
    symbol_of_matrix,
    three_term_residual,
    unnormalize,
    word_to_matrix,
)
from dedesym.acceptance import random_hecke_word


def test_make_group_cases():
    g3 = make_group(3)
    assert g3.lam == 1
    assert g3.v4pi == Fraction(1, 12)
    g5 = make_group(5)
    assert g5.lam * g5.lam == g5.lam + 1
    assert g5.v4pi == Fraction(3, 20)
    assert make_group(4).v4pi == Fraction(1, 8)
    with pytest.raises(ValueError):
        make_group(2)


def test_normalize_examples():
    g5 = make_group(5)
    tau_n = normalize(g5.tau_raw, g5)
    assert tau_n == g5.tau_pow(1)
    iota_n = normalize(g5.iota_raw, g5)
    assert iota_n.b == -g5.lam_inv and iota_n.c == g5.lam
    assert unnormalize(iota_n, g5) == g5.iota_raw
    g3 = make_group(3)
    m = GroupElement.from_rows(3, (1, 2, 1, 3))
    assert normalize(m, g3) == m


def test_word_parsing_and_canonical_form():
    w = Word.parse("i,t^2,i,t^-1")
    assert w.letters == (("i", 1), ("t", 2), ("i", 1), ("t", -1))
    assert str(w) == "i,t^2,i,t^-1"
    assert Word.make([("t", 1), ("t", -1), ("i", 2)]).letters == (("i", 2),)
    assert Word.make([("t", 2), ("t", 3)]).letters == (("t", 5),)
    assert Word.parse("").letters == ()
    assert Word.parse("i,t^2").length() == 3
    with pytest.raises(ValueError):
        Word.parse("x,t")


def test_word_to_matrix_relations():
    for q in (3, 5, 7):
        group = make_group(q)
        iota2 = word_to_matrix(Word.parse("i,i"), group)
        assert iota2 == -group.identity
        u_pow_q = word_to_matrix(Word.make([("i", 1), ("t", 1)] * q), group)
        assert u_pow_q == -group.identity  # (iota tau)^q = -I


def test_psi_word_examples():
    g5 = make_group(5)
    g3 = make_group(3)
    assert psi_word(Word.parse("i"), g5) == Fraction(-1, 4)
    assert psi_word(Word.parse("t"), g3) == Fraction(1, 12)
    assert psi_word(Word.parse("i,i"), g5) == Fraction(-1, 2)
    assert psi_word(Word.parse("t^4"), g5) == 4 * Fraction(3, 20)
    # psi((iota tau)^q) must reproduce psi(-I) from the group relation
    for q in (5, 7):
        group = make_group(q)
        assert psi_word(Word.make([("i", 1), ("t", 1)] * q), group) == Fraction(-1, 2)


def test_symbol_from_word_examples():
    g5 = make_group(5)
    g3 = make_group(3)
    assert symbol_from_word(Word.parse("i"), g5).is_zero()
    w = Word.parse("i,t^-3,i^-1")
    m, _psi = psi_word_with_matrix(w, g3)
    assert (m.a, m.c) == (g3.coerce(1), g3.coerce(3))
    assert symbol_from_word(w, g3) == dedekind_sum_fast(1, 3)
    with pytest.raises(TrivialCosetError):
        symbol_from_word(Word.parse("t^2"), g5)


def test_nearest_translation_tie_break():
    g3 = make_group(3)
    c, d = g3.coerce(2), g3.coerce(1)
    assert nearest_translation(c, d) == 0  # tie between 1 and -1 resolves to n=0
    assert nearest_translation(c, g3.coerce(-1)) == 0
    assert nearest_translation(c, g3.coerce(5)) == -2  # 5 - 4 = 1, tie toward 0


def test_rosen_reduce_examples():
    g3 = make_group(3)
    trace = rosen_reduce((1, 0), g3)
    assert trace.steps == ()
    assert trace.terminal == (g3.coerce(1), g3.coerce(0))

    trace = rosen_reduce((3, 1), g3)
    kinds = [(s.translate, s.swapped) for s in trace.steps]
    assert kinds == [(0, True), (3, False)]
    assert trace.terminal[1].is_zero()

    g5 = make_group(5)
    m = word_to_matrix(Word.parse("i,t,i"), g5)
    assert len(rosen_reduce(m.row(), g5).steps) <= 4


def test_rosen_reduce_strictly_decreasing_c():
    rng = random.Random(59)
    for q in (3, 5, 7):
        group = make_group(q)
        for _ in range(30):
            m = word_to_matrix(random_hecke_word(rng, 9), group)
            if sign(m.c) == 0:
                continue
            trace = rosen_reduce(m.row(), group)
            prev = abs(embed_float(trace.start[0]))
            for step in trace.steps:
                if step.swapped:
                    cur = abs(embed_float(step.row_after_swap[0]))
                    assert cur < prev
                    prev = cur


def test_rosen_rejects_trivial_row():
    g3 = make_group(3)
    with pytest.raises(TrivialCosetError):
        rosen_reduce((0, 1), g3)


def test_symbol_descent_examples():
    g3 = make_group(3)
    assert symbol_descent((3, 1), g3) == Fraction(1, 18)
    assert symbol_descent((1, 0), g3) == 0
    assert symbol_descent((2, 1), g3) == 0  # s(1, 2) = 0
    g5 = make_group(5)
    assert symbol_descent((g5.lam, 0), g5).is_zero()
    # negating the row stays in the same +- class
    assert symbol_descent((-3, -1), g3) == Fraction(1, 18)


def test_symbol_descent_rejects_non_group_terminal():
    g3 = make_group(3)
    with pytest.raises(ReductionError):
        symbol_descent((2, 0), g3)  # (2, 0) is not a unimodular bottom row


def test_cross_algorithm_equality_sweep():
    for q in (3, 4, 5, 6, 7):
        group = make_group(q)
        cache = {}
        for word, m, psi in iter_word_nodes(group, 8):
            if sign(m.c) == 0:
                continue
            s_a = symbol_of_matrix(m, psi, group)
            key = (m.c, m.d)
            if key not in cache:
                cache[key] = symbol_descent(m.row(), group)
            assert s_a == cache[key], (q, word)


def test_double_coset_invariance():
    rng = random.Random(61)
    for q in (3, 5, 7):
        group = make_group(q)
        for _ in range(25):
            w = random_hecke_word(rng, 8)
            m, psi = psi_word_with_matrix(w, group)
            if sign(m.c) == 0:
                continue
            base = symbol_of_matrix(m, psi, group)
            left = Word.make((("t", 1),) + tuple(w.letters))
            right = Word.make(tuple(w.letters) + (("t", -2),))
            assert symbol_from_word(left, group) == base
            assert symbol_from_word(right, group) == base


def test_three_term_residual():
    rng = random.Random(67)
    for q in (3, 5, 7):
        group = make_group(q)
        done = 0
        while done < 20:
            g = word_to_matrix(random_hecke_word(rng, 7), group)
            h = word_to_matrix(random_hecke_word(rng, 7), group)
            if sign(g.c) == 0 or sign(h.c) == 0 or sign((g * h).c) == 0:
                continue
            assert three_term_residual(g, h, group).is_zero()
            done += 1
    g3 = make_group(3)
    with pytest.raises(TrivialCosetError):
        three_term_residual(g3.identity, g3.identity, g3)


def test_reciprocity_examples_q3():
    g3 = make_group(3)
    # S_r(3,1) - S_r(1,-3) = 1/18 - 0 = 11/36 - 9/36
    g = GroupElement.from_rows(3, (1, 0, 3, 1))
    assert reciprocity_residual_hecke(g, g3).is_zero()
    for c in range(2, 40):
        for a in range(1, c):
            if math.gcd(a, c) != 1:
                continue
            d = pow(a, -1, c)
            if d == 0:
                continue
            b = (a * d - 1) // c
            el = GroupElement.from_rows(3, (a, b, c, d))
            assert reciprocity_residual_hecke(el, g3).is_zero()


def test_reciprocity_hecke_words():
    rng = random.Random(71)
    for q in (5, 7):
        group = make_group(q)
        done = 0
        while done < 15:
            m = word_to_matrix(random_hecke_word(rng, 9), group)
            if sign(m.c) == 0 or sign(m.d) == 0:
                continue
            assert reciprocity_residual_hecke(m, group).is_zero()
            done += 1


def test_membership_round_trips():
    g5 = make_group(5)
    assert str(membership(g5.tau_raw, g5)) == "t"
    m = g5.iota_raw * g5.tau_raw * g5.tau_raw * g5.iota_raw
    w = membership(m, g5)
    got = word_to_matrix(w, g5)
    want = normalize(m, g5)
    assert got == want or got == -want

    rng = random.Random(73)
    for q in (3, 5, 7):
        group = make_group(q)
        for _ in range(15):
            word = random_hecke_word(rng, 9)
            raw = unnormalize(word_to_matrix(word, group), group)
            back = membership(raw, group)
            assert back is not None
            got = word_to_matrix(back, group)
            want = normalize(raw, group)
            assert got == want or got == -want


def test_membership_rejections():
    g3 = make_group(3)
    bad = GroupElement.from_rows(3, (1, Fraction(1, 2), 0, 1))
    assert membership(bad, g3) is None
    g5 = make_group(5)
    not_in_group = GroupElement.from_rows(5, (2, 1, 1, 1))
    assert membership(not_in_group, g5, max_steps=150) is None


def test_rationality_report():
    g7 = make_group(7)
    rep = rationality_report(Word.parse("i"), g7)
    assert rep.psi_normalized == Fraction(-1, 4)
    assert rep.coordinates[0] == Fraction(-1, 4)
    assert all(c == 0 for c in rep.coordinates[1:])

    rep = rationality_report(Word.parse("t^3"), g7)
    assert rep.psi_normalized == 3 * Fraction(5, 28)
    assert rep.pair == (Fraction(0), 3 * Fraction(5, 28))

    rng = random.Random(79)
    for q in (5, 7):
        group = make_group(q)
        for _ in range(40):
            rationality_report(random_hecke_word(rng, 9), group)
