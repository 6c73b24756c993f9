import random
from fractions import Fraction

import pytest

from dedesym.classical import IOTA, IntegerMatrix
from dedesym.cocycle import (
    GroupElement,
    QUARTER_RANGE,
    c_of_minus_d,
    omega,
    omega_analytic,
    psi_accumulate,
    psi_sl2,
)
from dedesym.hecke import make_group, word_to_matrix
from dedesym.acceptance import random_hecke_word, random_sl2z

I2 = IntegerMatrix.identity()


def _g3(m: IntegerMatrix) -> GroupElement:
    return GroupElement.from_integer_matrix(m)


def test_c_of_minus_d():
    assert c_of_minus_d(GroupElement.identity(3)).rational_value() == -1
    assert c_of_minus_d(_g3(IOTA)).rational_value() == 1
    assert c_of_minus_d(-GroupElement.identity(3)).rational_value() == 1


def test_group_element_validation():
    with pytest.raises(ValueError):
        GroupElement.from_rows(3, (1, 1, 1, 1))
    g = GroupElement.from_rows(5, (1, 0, 0, 1))
    assert g * g == g
    assert g.inv() == g


def test_omega_values():
    assert omega(I2, I2) == 0
    assert omega(-I2, -I2) == 1
    assert omega(IOTA, IOTA) == 0


def test_omega_range_and_cocycle_identity():
    rng = random.Random(37)
    pools = [[random_sl2z(rng, 400) for _ in range(120)]]
    for q in (4, 5, 7):
        group = make_group(q)
        pools.append(
            [word_to_matrix(random_hecke_word(rng, 8), group) for _ in range(60)]
        )
    for pool in pools:
        for _ in range(300):
            g, h, k = rng.choice(pool), rng.choice(pool), rng.choice(pool)
            w = omega(g, h)
            assert w in QUARTER_RANGE
            assert w + omega(g * h, k) == omega(g, h * k) + omega(h, k)


def test_omega_analytic_agreement_and_z_independence():
    rng = random.Random(41)
    group = make_group(5)
    for _ in range(60):
        g = word_to_matrix(random_hecke_word(rng, 7), group)
        h = word_to_matrix(random_hecke_word(rng, 7), group)
        w = float(omega(g, h))
        vals = [omega_analytic(g, h, z) for z in (1j, 1 + 2j)]
        assert abs(vals[0] - w) < 1e-10
        assert abs(vals[1] - w) < 1e-10


def test_omega_analytic_rejects_bad_base_point():
    with pytest.raises(ValueError):
        omega_analytic(_g3(IOTA), _g3(IOTA), z=-1j)


def test_psi_consistency_random_pairs():
    rng = random.Random(43)
    done = 0
    while done < 1000:
        g, h = random_sl2z(rng, 5000), random_sl2z(rng, 5000)
        gh = g * h
        if any(m.c == 0 and m.d < 0 for m in (g, h, gh)):
            continue
        assert psi_sl2(gh) - psi_sl2(g) - psi_sl2(h) == omega(g, h, gh)
        done += 1


def test_psi_consistency_parabolic():
    rng = random.Random(47)
    for k in (-3, 1, 4):
        t = IntegerMatrix(1, k, 0, 1)
        for _ in range(30):
            h = random_sl2z(rng, 500)
            assert psi_sl2(t * h) - psi_sl2(t) - psi_sl2(h) == omega(t, h)
            assert psi_sl2(h * t) - psi_sl2(h) - psi_sl2(t) == omega(h, t)


def test_psi_accumulate_examples():
    gi = _g3(IOTA)
    quarter = Fraction(-1, 4)
    assert psi_accumulate([], q=3)[1] == 0
    assert psi_accumulate([(gi, quarter)])[1] == Fraction(-1, 4)
    assert psi_accumulate([(gi, quarter)] * 2)[1] == Fraction(-1, 2)
    assert psi_accumulate([(gi, quarter)] * 4)[1] == 0


def test_psi_accumulate_bracketing():
    rng = random.Random(53)
    group = make_group(7)
    from dedesym.hecke import psi_word_with_matrix, Word

    for _ in range(40):
        w1 = random_hecke_word(rng, 6)
        w2 = random_hecke_word(rng, 6)
        m1, p1 = psi_word_with_matrix(w1, group)
        m2, p2 = psi_word_with_matrix(w2, group)
        joined = Word.make(tuple(w1.letters) + tuple(w2.letters))
        m12, p12 = psi_word_with_matrix(joined, group)
        assert m12 == m1 * m2
        assert p12 == p1 + p2 + omega(m1, m2, m12)
