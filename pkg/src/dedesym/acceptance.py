"""Acceptance criteria, runnable as a suite (CLI `check`) or through pytest.

Each criterion function returns a CheckResult and is deterministic: random
objects come from fixed-seed generators.  quick=True shrinks the workloads
for smoke runs; the stated tolerances never change.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import classical, cocycle, equidist, hecke
from .classical import IOTA, TAU, IntegerMatrix
from .cocycle import GroupElement, omega, omega_analytic, psi_sl2
from .field import sign
from .hecke import Word, make_group, symbol_descent, symbol_of_matrix

QUARTER_RANGE = cocycle.QUARTER_RANGE


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name} ({self.seconds:.1f}s) {self.detail}"


def _timed(fn):
    def wrapper(quick: bool = False) -> CheckResult:
        t0 = time.time()
        name, passed, detail = fn(quick)
        return CheckResult(name, passed, detail, time.time() - t0)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ----------------------------------------------------------------------------
# samplers
# ----------------------------------------------------------------------------

def random_sl2z(rng: random.Random, bound: int) -> IntegerMatrix:
    """Random product of translations and inversions with entries <= bound."""
    m = IntegerMatrix.identity()
    while True:
        if rng.random() < 0.55:
            step = IntegerMatrix(1, rng.choice((-3, -2, -1, 1, 2, 3)), 0, 1)
        else:
            step = IOTA
        nxt = m * step
        if nxt.max_entry() > bound:
            return m if rng.random() < 0.5 else -m
        m = nxt


def random_hecke_word(rng: random.Random, max_len: int) -> Word:
    letters = []
    length = rng.randrange(1, max_len + 1)
    want_iota = rng.random() < 0.5
    while length > 0:
        if want_iota:
            letters.append(("i", 1))
            length -= 1
        else:
            e = rng.choice((-2, -1, 1, 2))
            e = max(-length, min(length, e))
            letters.append(("t", e))
            length -= abs(e)
        want_iota = not want_iota
    return Word.make(letters)


# ----------------------------------------------------------------------------
# criteria
# ----------------------------------------------------------------------------

@_timed
def criterion_1(quick: bool):
    """Fast Dedekind sums equal the direct sum for every coprime pair, c <= 500."""
    cmax = 120 if quick else 500
    pairs = 0
    for c in range(1, cmax + 1):
        for a in range(c):
            if math.gcd(a, c) == 1:
                if classical.dedekind_sum_fast(a, c) != classical.dedekind_sum_naive(a, c):
                    return ("oracle equivalence", False, f"mismatch at ({a}, {c})")
                pairs += 1
    return ("oracle equivalence", True, f"{pairs} coprime pairs, c <= {cmax}")


@_timed
def criterion_2(quick: bool):
    """Reciprocity residual is exactly 0 for all coprime 0 < a < c <= 300."""
    cmax = 100 if quick else 300
    pairs = 0
    for c in range(2, cmax + 1):
        for a in range(1, c):
            if math.gcd(a, c) == 1:
                if classical.reciprocity_residual(a, c) != 0:
                    return ("reciprocity residual", False, f"nonzero at ({a}, {c})")
                pairs += 1
    return ("reciprocity residual", True, f"{pairs} pairs, c <= {cmax}")


@_timed
def criterion_3(quick: bool):
    """Eta-product oracle within 1e-8 of the exact phi on random matrices."""
    count = 20 if quick else 100
    bound = 200 if quick else 1000
    rng = random.Random(20240301)
    worst = 0.0
    for _ in range(count):
        m = random_sl2z(rng, bound)
        err = abs(classical.phi_via_eta(m) - float(classical.rademacher_phi(m)))
        worst = max(worst, err)
        if err >= 1e-8:
            return ("eta oracle", False, f"error {err:.3e} at {m}")
    return ("eta oracle", True, f"{count} matrices, worst error {worst:.2e}")


@_timed
def criterion_4(quick: bool):
    """Cocycle identity, quarter-integer range, and analytic agreement."""
    triples_per_q = 120 if quick else 3400
    pairs_per_q = 40 if quick else 340
    rng = random.Random(20240304)
    total_triples = 0
    for q in (3, 5, 7):
        group = make_group(q)
        mats = [
            hecke.word_to_matrix(random_hecke_word(rng, 10), group)
            for _ in range(60 if quick else 400)
        ]
        for _ in range(triples_per_q):
            g, h, k = rng.choice(mats), rng.choice(mats), rng.choice(mats)
            w1 = omega(g, h)
            if w1 not in QUARTER_RANGE:
                return ("cocycle suite", False, f"range violation {w1}")
            if omega(g * h, k) + w1 != omega(g, h * k) + omega(h, k):
                return ("cocycle suite", False, f"identity fails at q={q}")
            total_triples += 1
        for _ in range(pairs_per_q):
            g, h = rng.choice(mats), rng.choice(mats)
            w = float(omega(g, h))
            for z in (1j, 1 + 2j):
                wa = omega_analytic(g, h, z)
                if abs(wa - w) >= 1e-10:
                    return (
                        "cocycle suite",
                        False,
                        f"analytic mismatch {wa} vs {w} at q={q}, z={z}",
                    )
    return ("cocycle suite", True, f"{total_triples} triples, q in {{3,5,7}}")


@_timed
def criterion_5(quick: bool):
    """psi(gh) - psi(g) - psi(h) = omega(g, h) with psi from the exact phi."""
    count = 500 if quick else 10_000
    rng = random.Random(20240305)
    done = 0
    while done < count:
        g = random_sl2z(rng, 10_000)
        h = random_sl2z(rng, 10_000)
        gh = g * h
        # the c = 0, d < 0 stratum follows a different branch convention and
        # is exercised by dedicated constant checks instead
        if any(m.c == 0 and m.d < 0 for m in (g, h, gh)):
            continue
        if psi_sl2(gh) - psi_sl2(g) - psi_sl2(h) != omega(g, h, gh):
            return ("psi consistency", False, f"fails at {g}, {h}")
        done += 1
    # parabolic sanity: translations against random partners
    for k in (-5, -1, 1, 7):
        t = IntegerMatrix(1, k, 0, 1)
        for _ in range(50):
            h = random_sl2z(rng, 1000)
            if psi_sl2(t * h) - psi_sl2(t) - psi_sl2(h) != omega(t, h):
                return ("psi consistency", False, f"parabolic pair fails, k={k}")
            if psi_sl2(h * t) - psi_sl2(h) - psi_sl2(t) != omega(h, t):
                return ("psi consistency", False, f"parabolic pair fails, k={k}")
    return ("psi consistency", True, f"{done} random pairs + parabolic pairs")


@_timed
def criterion_6(quick: bool):
    """Named constants, exactly."""
    group = make_group(5)
    checks = [
        ("psi(iota)", hecke.psi_word(Word.parse("i"), group), Fraction(-1, 4)),
        ("psi(-I)", hecke.psi_word(Word.parse("i,i"), group), Fraction(-1, 2)),
        ("psi(I)", hecke.psi_word(Word(()), group), Fraction(0)),
        ("omega(-I,-I)", omega(-IntegerMatrix.identity(), -IntegerMatrix.identity()), Fraction(1)),
    ]
    sym = hecke.symbol_from_word(Word.parse("i"), group)
    if not sym.is_zero():
        return ("constants", False, f"S[[iota]] = {sym}")
    for label, got, want in checks:
        if got != want:
            return ("constants", False, f"{label} = {got}, expected {want}")
    return ("constants", True, "psi(iota), psi(-I), psi(I), S[[iota]], omega(-I,-I)")


@_timed
def criterion_7(quick: bool):
    """Algorithm A equals algorithm B on every reduced word of length <= 12."""
    max_len = 8 if quick else 12
    qs = (3, 5) if quick else (3, 4, 5, 6, 7)
    checked = 0
    for q in qs:
        group = make_group(q)
        descent_cache: dict = {}
        for word, m, psi in hecke.iter_word_nodes(group, max_len):
            if sign(m.c) == 0:
                continue
            s_a = symbol_of_matrix(m, psi, group)
            key = (m.c, m.d)
            s_b = descent_cache.get(key)
            if s_b is None:
                s_b = symbol_descent(m.row(), group)
                descent_cache[key] = s_b
            if s_a != s_b:
                return ("cross-algorithm equality", False, f"q={q}, word {word}")
            checked += 1
    return (
        "cross-algorithm equality",
        True,
        f"{checked} words with c != 0, length <= {max_len}, q in {qs}",
    )


@_timed
def criterion_8(quick: bool):
    """q=3 bridge: Hecke symbol equals s(a, c); reciprocity residual vanishes."""
    cmax = 60 if quick else 200
    group = make_group(3)
    pairs = 0
    for c in range(1, cmax + 1):
        for a in range(c):
            if math.gcd(a, c) != 1:
                continue
            d = pow(a, -1, c) if c > 1 else 0
            b = (a * d - 1) // c
            s_row = symbol_descent((c, d), group)
            if s_row != classical.dedekind_sum_fast(a, c):
                return ("q=3 bridge", False, f"symbol != s({a},{c})")
            if d != 0:
                g = GroupElement.from_rows(3, (a, b, c, d))
                if not hecke.reciprocity_residual_hecke(g, group).is_zero():
                    return ("q=3 bridge", False, f"reciprocity residual at ({a},{c})")
            pairs += 1
    return ("q=3 bridge", True, f"{pairs} coprime pairs, c <= {cmax}")


@_timed
def criterion_9(quick: bool):
    """psi coordinates beyond {1, lambda} vanish exactly at q = 5 and q = 7."""
    max_len = 7 if quick else 10
    words = 0
    for q in (5, 7):
        group = make_group(q)
        for word, _m, _psi in hecke.iter_word_nodes(group, max_len):
            hecke.rationality_report(word, group)  # raises on support violation
            words += 1
    return ("rationality support", True, f"{words} words, length <= {max_len}, q in {{5,7}}")


EQUIDIST_CHECKPOINTS = (200, 400, 800, 1500)
EQUIDIST_FIT_POINTS = (200, 400, 600, 800, 1000, 1200, 1500)


def equidist_thresholds(table, checkpoints, fit_points, freqs=(1, 2, 3)):
    """The equidistribution acceptance thresholds; returns (ok, detail) pairs."""
    results = []
    discs = [equidist.discrepancy(table, x) for x in checkpoints]
    results.append(
        (discs[-1] < 0.05, f"star discrepancy at X={checkpoints[-1]}: {discs[-1]:.4f} < 0.05")
    )
    monotone = all(d1 <= d0 * 1.10 for d0, d1 in zip(discs, discs[1:]))
    results.append(
        (monotone, "discrepancy decreasing (10% jitter): "
         + ", ".join(f"{d:.4f}" for d in discs))
    )
    for n in freqs:
        series = equidist.weyl_series(table, n, fit_points)
        results.append(
            (series.exponent <= 1.6,
             f"|W_{n}(X)| growth exponent {series.exponent:.3f} <= 1.6")
        )
    counts = equidist.count_series(table, fit_points)
    results.append(
        (abs(counts.exponent - 2.0) <= 0.1,
         f"|D_X| exponent {counts.exponent:.3f} = 2.0 +- 0.1"
         f" (constant {counts.constant:.4f}, reported only)")
    )
    return results


@_timed
def criterion_10(quick: bool):
    """Equidistribution statistics for q = 3 at desk scale."""
    if quick:
        xmax, checkpoints = 300, (80, 140, 220, 300)
        fit_points = (80, 120, 160, 200, 250, 300)
    else:
        xmax, checkpoints = 1500, EQUIDIST_CHECKPOINTS
        fit_points = EQUIDIST_FIT_POINTS
    table = equidist.enumerate_cosets(3, xmax)
    results = equidist_thresholds(table, checkpoints, fit_points)
    bad = [detail for ok, detail in results if not ok]
    if bad:
        return ("equidistribution", False, "; ".join(bad))
    return (
        "equidistribution",
        True,
        f"|D_X|={len(table)}; " + "; ".join(detail for _ok, detail in results),
    )


ALL_CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]

SUITES = {
    "classical": [criterion_1, criterion_2, criterion_3],
    "cocycle": [criterion_4, criterion_5, criterion_6],
    "hecke": [criterion_7, criterion_8, criterion_9],
    "equidist": [criterion_10],
    "all": ALL_CRITERIA,
}


def run_suite(suite: str = "all", quick: bool = False, out=print) -> bool:
    criteria = SUITES[suite]
    results = []
    for i, crit in enumerate(ALL_CRITERIA, start=1):
        if crit not in criteria:
            continue
        res = crit(quick=quick)
        results.append(res)
        out(f"{i:2d}. {res.line()}")
    ok = all(r.passed for r in results)
    out(f"{'all criteria passed' if ok else 'FAILURES present'}"
        f" ({sum(r.seconds for r in results):.1f}s total)")
    return ok
