"""Hecke triangle groups H_q and their Dedekind symbols.

H_q is generated by the inversion iota = (0,-1;1,0) and the translation
tau_q = (1,lambda;0,1), lambda = 2*cos(pi/q).  Internally all computations are
done in normalized coordinates, the conjugate by diag(sqrt:lambda, 1/sqrt:lambda)
that turns the cusp stabilizer into unit translations:

    (a, b; c, d)  ->  (a, b/lambda; c*lambda, d).

The symbol of a non-trivial double coset is computed by two independent
algorithms:

  * symbol_from_word (algorithm A): accumulate psi along a generator word
    with psi(iota') = -1/4 and psi(tau'^n) = n*(q-2)/(4q), then read off
    S = (V/4pi)(a+d)/c - psi - (1/4) sign(c).

  * symbol_descent (algorithm B): Rosen-style reduction of the bottom row
    (c, d), alternating nearest-multiple translations d -> d + n*c with the
    inversion swap (c, d) -> (lambda*d, -c/lambda), adding the exact
    three-term correction at every swap and terminating at a row with d = 0.

Exact agreement of the two on every word is the structural self-check of the
whole module.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .cocycle import GroupElement, omega
from .field import FieldElement, floor_of, sign

PSI_IOTA = Fraction(-1, 4)
PSI_IOTA_INV = Fraction(1, 4)


class TrivialCosetError(ValueError):
    """Raised when a symbol is requested for a c = 0 (trivial) double coset."""


class ReductionError(RuntimeError):
    """Raised when row reduction does not terminate the way group rows must."""


# ----------------------------------------------------------------------------
# words
# ----------------------------------------------------------------------------

_LETTER_RE = re.compile(r"^(?P<gen>[it])(?:\^(?P<exp>-?\d+))?$")


@dataclass(frozen=True)
class Word:
    """Product of generator powers, written left to right.

    Letters are ('i', k) or ('t', n); canonical form merges adjacent letters
    with the same generator and drops zero exponents.
    """

    letters: tuple[tuple[str, int], ...]

    @staticmethod
    def make(letters) -> "Word":
        canon: list[tuple[str, int]] = []
        for gen, exp in letters:
            if gen not in ("i", "t"):
                raise ValueError(f"unknown generator {gen!r}")
            if exp == 0:
                continue
            if canon and canon[-1][0] == gen:
                merged = canon[-1][1] + exp
                canon.pop()
                if merged:
                    canon.append((gen, merged))
            else:
                canon.append((gen, exp))
        return Word(tuple(canon))

    @staticmethod
    def parse(text: str) -> "Word":
        """Parse comma-separated letters such as 'i,t^2,i,t^-1'."""
        text = text.strip()
        if not text:
            return Word(())
        letters = []
        for raw in text.split(","):
            m = _LETTER_RE.match(raw.strip())
            if not m:
                raise ValueError(f"bad word letter {raw!r}")
            exp = int(m.group("exp")) if m.group("exp") else 1
            letters.append((m.group("gen"), exp))
        return Word.make(letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return ",".join(
            g if e == 1 else f"{g}^{e}" for g, e in self.letters
        )

    def length(self) -> int:
        """Length over the generator alphabet: each letter counts |exponent|."""
        return sum(abs(e) for _, e in self.letters)

    def __iter__(self):
        return iter(self.letters)


# ----------------------------------------------------------------------------
# the group
# ----------------------------------------------------------------------------

class HeckeGroup:
    """Generators, normalization data and constants of H_q."""

    def __init__(self, q: int):
        if q < 3:
            raise ValueError(f"need q >= 3, got {q}")
        self.q = q
        self.lam = FieldElement.lam(q)
        self.lam_inv = self.lam.inv()
        self.lam_sq = self.lam * self.lam
        self.covolume_over_4pi = Fraction(q - 2, 4 * q)

        one = FieldElement.from_rational(q, 1)
        zero = FieldElement.from_rational(q, 0)
        # raw generators
        self.iota_raw = GroupElement(zero, -one, one, zero, check=False)
        self.tau_raw = GroupElement(one, self.lam, zero, one, check=False)
        # normalized generators: tau' = (1,1;0,1), iota' = (0,-1/lambda; lambda,0)
        self.iota = GroupElement(zero, -self.lam_inv, self.lam, zero, check=False)
        self.iota_inv = GroupElement(zero, self.lam_inv, -self.lam, zero, check=False)
        self.identity = GroupElement.identity(q)
        self._one = one
        self._zero = zero

    @property
    def v4pi(self) -> Fraction:
        return self.covolume_over_4pi

    def tau_pow(self, n: int) -> GroupElement:
        """Normalized translation (1, n; 0, 1)."""
        return GroupElement(
            self._one,
            FieldElement.from_rational(self.q, n),
            self._zero,
            self._one,
            check=False,
        )

    def tau_raw_pow(self, n: int) -> GroupElement:
        return GroupElement(
            self._one,
            n * self.lam,
            self._zero,
            self._one,
            check=False,
        )

    def coerce(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.q != self.q:
                raise ValueError(f"field mismatch: q={value.q} vs q={self.q}")
            return value
        return FieldElement.from_rational(self.q, value)

    def __repr__(self):
        return f"HeckeGroup(q={self.q})"


def make_group(q: int) -> HeckeGroup:
    return HeckeGroup(q)


def normalize(g: GroupElement, group: HeckeGroup) -> GroupElement:
    """Conjugate by the cusp scaling: (a, b; c, d) -> (a, b/lambda; c*lambda, d)."""
    return GroupElement(
        g.a, g.b * group.lam_inv, g.c * group.lam, g.d, check=False
    )


def unnormalize(g: GroupElement, group: HeckeGroup) -> GroupElement:
    """Inverse of normalize."""
    return GroupElement(
        g.a, g.b * group.lam, g.c * group.lam_inv, g.d, check=False
    )


def word_to_matrix(word: Word, group: HeckeGroup) -> GroupElement:
    """Product of normalized generators along the word."""
    m = group.identity
    for gen, exp in word:
        if gen == "t":
            m = m * group.tau_pow(exp)
        else:
            step = group.iota if exp > 0 else group.iota_inv
            for _ in range(abs(exp)):
                m = m * step
    return m


def _word_steps(word: Word, group: HeckeGroup):
    """(matrix, psi-value) steps feeding the cocycle accumulation."""
    for gen, exp in word:
        if gen == "t":
            yield group.tau_pow(exp), exp * group.v4pi
        else:
            step = group.iota if exp > 0 else group.iota_inv
            val = PSI_IOTA if exp > 0 else PSI_IOTA_INV
            for _ in range(abs(exp)):
                yield step, val


def psi_word(word: Word, group: HeckeGroup) -> Fraction:
    """psi of the word's product, by cocycle accumulation from generator values."""
    m = group.identity
    psi = Fraction(0)
    for g, val in _word_steps(word, group):
        nxt = m * g
        psi = psi + val + omega(m, g, nxt)
        m = nxt
    return psi


def psi_word_with_matrix(word: Word, group: HeckeGroup):
    m = group.identity
    psi = Fraction(0)
    for g, val in _word_steps(word, group):
        nxt = m * g
        psi = psi + val + omega(m, g, nxt)
        m = nxt
    return m, psi


def symbol_of_matrix(m: GroupElement, psi: Fraction, group: HeckeGroup) -> FieldElement:
    """S = (V/4pi)(a+d)/c - psi - (1/4) sign(c) for a normalized matrix."""
    sc = sign(m.c)
    if sc == 0:
        raise TrivialCosetError("matrix fixes the cusp: c = 0")
    phi = psi + Fraction(sc, 4)
    return group.v4pi * (m.a + m.d) * m.c.inv() - phi


def symbol_from_word(word: Word, group: HeckeGroup) -> FieldElement:
    """Algorithm A: the symbol via psi-accumulation along the word."""
    m, psi = psi_word_with_matrix(word, group)
    return symbol_of_matrix(m, psi, group)


# ----------------------------------------------------------------------------
# row reduction (algorithm B)
# ----------------------------------------------------------------------------

def _coerce_row(row, group: HeckeGroup):
    c, d = row
    return group.coerce(c), group.coerce(d)


def nearest_translation(c: FieldElement, d: FieldElement) -> int:
    """n minimizing the embedded |d + n*c|, ties resolved toward smaller |n|."""
    x = -d * c.inv()
    if x.is_rational():
        t2 = 2 * x.rational_value()
        if t2.denominator == 1:
            k = t2.numerator
            if k % 2 == 0:
                return k // 2
            # exact tie between (k-1)/2 and (k+1)/2: round toward zero
            return (k - 1) // 2 if k > 0 else (k + 1) // 2
    return floor_of(x + Fraction(1, 2))


@dataclass(frozen=True)
class ReductionStep:
    translate: int
    row_after_translation: tuple
    swapped: bool
    row_after_swap: tuple | None


@dataclass(frozen=True)
class ReductionTrace:
    start: tuple
    steps: tuple[ReductionStep, ...]
    terminal: tuple

    def swap_count(self) -> int:
        return sum(1 for s in self.steps if s.swapped)


def rosen_reduce(row, group: HeckeGroup, max_steps: int = 10_000) -> ReductionTrace:
    """Reduce a bottom row to d = 0 by translations and inversion swaps.

    The swap multiplies |c| by at most lambda/2 < 1, so rows of genuine group
    elements terminate; exceeding max_steps signals a non-member row or a
    convention violation.
    """
    c, d = _coerce_row(row, group)
    if sign(c) == 0:
        raise TrivialCosetError("row with c = 0 is not a double coset row")
    start = (c, d)
    steps: list[ReductionStep] = []
    for _ in range(max_steps):
        if sign(d) == 0:
            return ReductionTrace(start, tuple(steps), (c, d))
        n = nearest_translation(c, d)
        d = d + n * c
        if sign(d) == 0:
            steps.append(ReductionStep(n, (c, d), False, None))
            return ReductionTrace(start, tuple(steps), (c, d))
        c_new = group.lam * d
        d_new = -c * group.lam_inv
        steps.append(ReductionStep(n, (c, d), True, (c_new, d_new)))
        c, d = c_new, d_new
    raise ReductionError(f"no termination within {max_steps} steps from {start}")


def _swap_correction(c: FieldElement, d: FieldElement, group: HeckeGroup) -> FieldElement:
    """Exact three-term correction at an inversion swap of the row (c, d)."""
    u = (group.lam_sq * d * c).inv()
    rational_part = group.v4pi * u * (c * c + group.lam_sq + group.lam_sq * d * d)
    return rational_part - Fraction(sign(c) * sign(d), 4)


def symbol_descent(row, group: HeckeGroup, max_steps: int = 10_000) -> FieldElement:
    """Algorithm B: replay the reduction trace, summing swap corrections.

    Translations leave the symbol alone; each swap contributes the three-term
    correction; the terminal d = 0 row carries symbol 0 and must be the
    inversion coset row (c = +-lambda).
    """
    trace = rosen_reduce(row, group, max_steps)
    total = group.coerce(0)
    for step in trace.steps:
        if step.swapped:
            c, d = step.row_after_translation
            total = total + _swap_correction(c, d, group)
    c_t, _d_t = trace.terminal
    if not (c_t == group.lam or c_t == -group.lam):
        raise ReductionError(
            f"terminal row {trace.terminal} is not the inversion coset row"
        )
    return total


# ----------------------------------------------------------------------------
# relations
# ----------------------------------------------------------------------------

def three_term_residual(g: GroupElement, h: GroupElement, group: HeckeGroup) -> FieldElement:
    """S(g) + S(h) - S(gh) minus its closed form; identically zero.

    All of c_g, c_h, c_gh must be nonzero (the three double cosets are
    non-trivial); matrices are in normalized coordinates.
    """
    gh = g * h
    cg, ch, cgh = g.c, h.c, gh.c
    if sign(cg) == 0 or sign(ch) == 0 or sign(cgh) == 0:
        raise TrivialCosetError("three-term relation needs all three c nonzero")
    lhs = (
        symbol_descent(g.row(), group)
        + symbol_descent(h.row(), group)
        - symbol_descent(gh.row(), group)
    )
    u = (cg * ch * cgh).inv()
    rhs = group.v4pi * u * (cg * cg + ch * ch + cgh * cgh) - Fraction(
        sign(cg) * sign(ch) * sign(cgh), 4
    )
    return lhs - rhs


def reciprocity_residual_hecke(g: GroupElement, group: HeckeGroup) -> FieldElement:
    """Residual of the reciprocity law on the row (c, d) of a normalized element.

    S_r(c, d) - S_r(lambda d, -c/lambda)
        = (V/4pi) (c/(lambda^2 d) + 1/(c d) + d/c) - (1/4) sign(c d),

    which at q = 3 (lambda = 1) is the row form S_r(c,d) - S_r(d,-c) with the
    classical right-hand side.  Requires c*d != 0.
    """
    c, d = g.row()
    if sign(c) == 0 or sign(d) == 0:
        raise TrivialCosetError("reciprocity needs c*d != 0")
    lhs = symbol_descent((c, d), group) - symbol_descent(
        (group.lam * d, -c * group.lam_inv), group
    )
    rhs = _swap_correction(c, d, group)
    return lhs - rhs


# ----------------------------------------------------------------------------
# membership
# ----------------------------------------------------------------------------

def membership(m: GroupElement, group: HeckeGroup, max_steps: int = 10_000):
    """Decompose m (raw coordinates) into a word, or return None.

    Returns a Word w with word_to_matrix(w) = +-normalize(m); the sign
    ambiguity reflects that -I = iota^2 acts trivially.  Rejection is decided
    by a terminal matrix that is not +-(1, k; 0, 1) with integer k, or by the
    iteration cap.
    """
    w = normalize(m, group)
    moves: list[int] = []
    for _ in range(max_steps):
        if sign(w.c) == 0:
            break
        n = nearest_translation(w.c, w.d)
        w = w * group.tau_pow(n) * group.iota_inv
        moves.append(n)
    else:
        return None
    if sign(w.c) != 0:
        return None
    one = group.coerce(1)
    if w.a == one and w.d == one:
        k_el = w.b
    elif w.a == -one and w.d == -one:
        k_el = -w.b
    else:
        return None
    if not k_el.is_rational():
        return None
    k_rat = k_el.rational_value()
    if k_rat.denominator != 1:
        return None
    letters: list[tuple[str, int]] = [("t", int(k_rat))]
    for n in reversed(moves):
        letters.append(("i", 1))
        letters.append(("t", -n))
    word = Word.make(letters)
    target = normalize(m, group)
    got = word_to_matrix(word, group)
    if got == target or got == -target:
        return word
    return None


# ----------------------------------------------------------------------------
# rationality evidence
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalityReport:
    """Power-basis coordinates of psi in both coordinate conventions."""

    word: Word
    psi_normalized: Fraction
    psi_scaled: FieldElement  # translation values scaled by lambda
    pair: tuple[Fraction, Fraction]  # (r, s) with psi_scaled = r + s*lambda

    @property
    def coordinates(self) -> tuple[Fraction, ...]:
        return self.psi_scaled.coords


def rationality_report(word: Word, group: HeckeGroup) -> RationalityReport:
    """Certify that psi lives in Q + Q*lambda, exactly.

    The normalized accumulation is rational outright.  The scaled variant
    accumulates over raw generator matrices with translation values
    n*lambda*(q-2)/(4q); every increment lies in Q + Q*lambda, so coordinates
    of index >= 2 must vanish identically, and that is asserted here.
    """
    psi_norm = psi_word(word, group)
    m = GroupElement.identity(group.q)
    psi = group.coerce(0)
    for gen, exp in word:
        if gen == "t":
            g, val = group.tau_raw_pow(exp), exp * group.v4pi * group.lam
        else:
            g = group.iota_raw if exp > 0 else group.iota_raw.inv()
            val = group.coerce(PSI_IOTA if exp > 0 else PSI_IOTA_INV)
        for _ in range(abs(exp)) if gen == "i" else range(1):
            nxt = m * g
            psi = psi + val + omega(m, g, nxt)
            m = nxt
    if any(psi.coords[2:]):
        raise AssertionError(
            f"psi support escapes {{1, lambda}} on {word}: {psi.coords}"
        )
    r = psi.coords[0]
    s = psi.coords[1] if len(psi.coords) > 1 else Fraction(0)
    return RationalityReport(word, psi_norm, psi, (r, s))


# ----------------------------------------------------------------------------
# word enumeration
# ----------------------------------------------------------------------------

def iter_word_nodes(group: HeckeGroup, max_len: int) -> Iterator[tuple[Word, GroupElement, Fraction]]:
    """All nonempty reduced words of generator length <= max_len, depth first.

    Words alternate inversion letters with translation blocks (runs of t or
    t^-1); length counts one per generator occurrence.  Matrices and psi are
    maintained incrementally, so each node costs O(1) field operations.
    """
    iota, iota_val = group.iota, PSI_IOTA
    tau_p = group.tau_pow(1)
    tau_m = group.tau_pow(-1)
    v = group.v4pi

    def extend(letters, m, psi, last, budget):
        if budget == 0:
            return
        if last != "i":
            nxt = m * iota
            psi2 = psi + iota_val + omega(m, iota, nxt)
            w = letters + (("i", 1),)
            yield Word(w), nxt, psi2
            yield from extend(w, nxt, psi2, "i", budget - 1)
        if last in ("i", "", "t+"):
            step = tau_p
            nxt = m * step
            psi2 = psi + v + omega(m, step, nxt)
            if letters and letters[-1][0] == "t":
                w = letters[:-1] + (("t", letters[-1][1] + 1),)
            else:
                w = letters + (("t", 1),)
            yield Word(w), nxt, psi2
            yield from extend(w, nxt, psi2, "t+", budget - 1)
        if last in ("i", "", "t-"):
            step = tau_m
            nxt = m * step
            psi2 = psi - v + omega(m, step, nxt)
            if letters and letters[-1][0] == "t":
                w = letters[:-1] + (("t", letters[-1][1] - 1),)
            else:
                w = letters + (("t", -1),)
            yield Word(w), nxt, psi2
            yield from extend(w, nxt, psi2, "t-", budget - 1)

    yield from extend((), group.identity, Fraction(0), "", max_len)
