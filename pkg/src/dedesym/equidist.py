"""Desk-scale equidistribution experiments for Dedekind symbols mod 1.

Enumerates the non-trivial double cosets with bounded lower-left entry,
attaches exact symbol values, and computes the empirical statistics that the
equidistribution statement predicts: exponential (Weyl) sums, star
discrepancy against Lebesgue measure, and growth fits.

All mod-1 reductions happen exactly in the field; only the reduced value in
[0, 1) is embedded (through a 128-bit certified interval) into a float.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classical import dedekind_sum_fast
from .field import FieldElement, embed_float, floor_of, sign
from .hecke import HeckeGroup, TrivialCosetError, _swap_correction, nearest_translation


@dataclass
class CosetTable:
    """Double cosets with 0 <= a < c <= X and their exact symbols.

    entries are (a, c, symbol, mod1) tuples, sorted by embedded (c, a); the
    parallel numpy arrays carry the embedded values used by the statistics.
    """

    q: int
    x_max: float
    entries: list[tuple]
    c_embed: np.ndarray
    mod1: np.ndarray

    def __len__(self) -> int:
        return len(self.entries)

    def counts_at(self, x_limits) -> list[int]:
        return [int(np.count_nonzero(self.c_embed <= x)) for x in x_limits]


def _coerce_bound(x_max):
    if isinstance(x_max, (int, float)):
        return Fraction(x_max)
    return x_max


def _q3_range(args) -> list[tuple]:
    c_lo, c_hi = args
    entries = []
    for c in range(c_lo, c_hi):
        for a in range(c):
            if math.gcd(a, c) == 1:
                s = dedekind_sum_fast(a, c)
                frac = s - math.floor(s)
                entries.append((a, c, s, float(frac)))
    return entries


def _enumerate_q3(x_max: Fraction, jobs: int = 1) -> CosetTable:
    cmax = math.floor(x_max)
    if jobs <= 1 or cmax < 64:
        entries = _q3_range((1, cmax + 1))
    else:
        # partition by interleaved c-ranges; the sorted merge makes the result
        # independent of worker count and scheduling
        import multiprocessing

        step = max(16, cmax // (8 * jobs))
        ranges = [(lo, min(lo + step, cmax + 1)) for lo in range(1, cmax + 1, step)]
        with multiprocessing.Pool(jobs) as pool:
            chunks = pool.map(_q3_range, ranges)
        entries = [e for chunk in chunks for e in chunk]
        entries.sort(key=lambda e: (e[1], e[0]))
    c_embed = np.array([e[1] for e in entries], dtype=np.float64)
    mod1 = np.array([e[3] for e in entries], dtype=np.float64)
    return CosetTable(3, float(x_max), entries, c_embed, mod1)


def _leq_bound(value: FieldElement, bound) -> bool:
    """Certified embedded comparison value <= bound."""
    return sign(bound - value) >= 0


def enumerate_cosets(q: int, x_max, group: HeckeGroup | None = None,
                     max_depth: int = 256, jobs: int = 1) -> CosetTable:
    """All double cosets with embedded 0 < c <= X, as columns (a, c), a in [0, c).

    q = 3 uses the coprime-pair sieve directly.  For q > 3 the classes are
    grown breadth-first from the inversion coset row (lambda, 0): every class
    with c <= X arises from a smaller-c class by one translate-then-swap move,
    because row reduction shrinks |c| strictly at every swap.  Symbols are
    carried along the tree edges via the exact swap correction.
    """
    bound = _coerce_bound(x_max)
    if q == 3:
        if not isinstance(bound, Fraction):
            bound = bound.rational_value()
        return _enumerate_q3(bound, jobs=jobs)
    if group is None:
        group = HeckeGroup(q)
    lam, lam_inv = group.lam, group.lam_inv
    zero = group.coerce(0)

    def class_key(c, d):
        d_red = d - floor_of(d * c.inv()) * c
        return (c.coords, d_red.coords), d_red

    entries = []
    seen = set()
    if not _leq_bound(lam, bound):
        return CosetTable(q, float(embed_float(group.coerce(bound))), [],
                          np.zeros(0), np.zeros(0))

    root = (lam, zero, group.iota, zero)  # (c, d_red, representative, symbol)
    key0, _ = class_key(lam, zero)
    seen.add(key0)
    frontier = [root]
    all_classes = [root]
    depth = 0
    dmax_fr = None
    while frontier:
        depth += 1
        if depth > max_depth:
            raise RuntimeError(f"coset enumeration exceeded max_depth={max_depth}")
        nxt = []
        for c, d, rep, sym in frontier:
            # children over translates d~ = d + n*c with |lambda * d~| <= X
            c_f = embed_float(c)
            d_f = embed_float(d)
            if dmax_fr is None:
                dmax_fr = embed_float(group.coerce(bound) * lam_inv)
            n_lo = math.floor((-dmax_fr - d_f) / c_f) - 2
            n_hi = math.ceil((dmax_fr - d_f) / c_f) + 2
            for n in range(n_lo, n_hi + 1):
                d_t = d + n * c
                if sign(d_t) == 0:
                    continue
                c_child = lam * d_t
                if sign(c_child) < 0:
                    flip = True
                    c_child = -c_child
                else:
                    flip = False
                if not _leq_bound(c_child, bound):
                    continue
                d_child = -c * lam_inv
                rep_child = rep * group.tau_pow(n) * group.iota
                sym_child = sym - _swap_correction(c, d_t, group)
                if flip:
                    rep_child = -rep_child
                    d_child = -d_child
                key, d_red = class_key(c_child, d_child)
                if key in seen:
                    continue
                seen.add(key)
                node = (c_child, d_red, rep_child, sym_child)
                nxt.append(node)
                all_classes.append(node)
        frontier = nxt

    for c, _d, rep, sym in all_classes:
        a = rep.a
        if sign(rep.c) < 0:
            rep = -rep
            a = rep.a
        a_red = a - floor_of(a * c.inv()) * c
        sym_red = sym - floor_of(sym)
        entries.append(
            (a_red, c, sym, (embed_float(a_red), embed_float(c), embed_float(sym_red)))
        )
    entries.sort(key=lambda e: (e[3][1], e[3][0]))
    c_embed = np.array([e[3][1] for e in entries], dtype=np.float64)
    mod1 = np.array([e[3][2] for e in entries], dtype=np.float64)
    entries = [(a, c, s, aux[2]) for (a, c, s, aux) in entries]
    return CosetTable(q, float(embed_float(group.coerce(bound))), entries,
                      c_embed, mod1)


# ----------------------------------------------------------------------------
# statistics
# ----------------------------------------------------------------------------

def weyl_sum(table: CosetTable, n: int, x_limit: float | None = None) -> complex:
    """Sum of e(n * symbol) over the table; n = 0 returns the exact count."""
    if x_limit is None:
        mask = slice(None)
        size = len(table.entries)
    else:
        mask = table.c_embed <= x_limit
        size = int(np.count_nonzero(mask))
    if n == 0:
        return complex(size, 0)
    vals = table.mod1[mask]
    return complex(np.sum(np.exp((2j * np.pi * n) * vals)))


def discrepancy(table: CosetTable, x_limit: float | None = None) -> float:
    """Star discrepancy of the mod-1 values against Lebesgue measure."""
    vals = table.mod1 if x_limit is None else table.mod1[table.c_embed <= x_limit]
    n = len(vals)
    if n == 0:
        raise ValueError("empty point set")
    xs = np.sort(vals)
    idx = np.arange(1, n + 1, dtype=np.float64)
    return float(max(np.max(idx / n - xs), np.max(xs - (idx - 1) / n)))


def growth_fit(xs, values) -> tuple[float, float]:
    """Least-squares exponent and constant for |values| ~ const * X^exponent."""
    xs = np.asarray(xs, dtype=np.float64)
    mags = np.abs(np.asarray(values, dtype=np.complex128))
    if len(xs) < 5:
        raise ValueError("need at least 5 sample points")
    if np.any(mags == 0) or np.any(xs <= 0):
        raise ValueError("degenerate samples (zero magnitude or X <= 0)")
    slope, intercept = np.polyfit(np.log(xs), np.log(mags), 1)
    return float(slope), float(math.exp(intercept))


@dataclass
class WeylSumSeries:
    """Weyl sums of one frequency across growing cutoffs, with a growth fit."""

    q: int
    n: int
    x_values: list[float]
    values: list[complex]
    exponent: float
    constant: float


def weyl_series(table: CosetTable, n: int, checkpoints) -> WeylSumSeries:
    if n == 0:
        raise ValueError("n = 0 carries no cancellation; use counts_at")
    xs = list(checkpoints)
    values = [weyl_sum(table, n, x) for x in xs]
    exponent, constant = growth_fit(xs, values)
    return WeylSumSeries(table.q, n, [float(x) for x in xs], values, exponent, constant)


def count_series(table: CosetTable, checkpoints) -> WeylSumSeries:
    xs = list(checkpoints)
    counts = table.counts_at(xs)
    exponent, constant = growth_fit(xs, counts)
    return WeylSumSeries(table.q, 0, [float(x) for x in xs],
                         [complex(c, 0) for c in counts], exponent, constant)


# ----------------------------------------------------------------------------
# export
# ----------------------------------------------------------------------------

def export_table_csv(table: CosetTable, path) -> None:
    """Columns q,X,a,c,symbol_exact,symbol_mod1, ordered by embedded (c, a)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["q", "X", "a", "c", "symbol_exact", "symbol_mod1"])
        for a, c, s, mod1 in table.entries:
            writer.writerow([table.q, table.x_max, str(a), str(c), str(s),
                             repr(mod1)])


def export_series_csv(series_list, path) -> None:
    """Columns q,n,X,re,im,abs for each series checkpoint."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["q", "n", "X", "re", "im", "abs"])
        for series in series_list:
            for x, v in zip(series.x_values, series.values):
                writer.writerow([series.q, series.n, x, repr(v.real),
                                 repr(v.imag), repr(abs(v))])
