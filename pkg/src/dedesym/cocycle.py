"""The explicit branch 2-cocycle on SL2 and psi-accumulation along products.

omega(g, h) is the quarter-integer defect of principal-branch logarithms of
the automorphy factor j(g, z) = c z + d:

    omega(g, h) = (1/(2 pi i)) (log j(g, h z) + log j(h, z) - log j(g h, z))
                = (1/4) { s_g + s_h - s_gh - s_g s_h s_gh }

where s_g is the sign of c if c != 0 and of -d otherwise.  The closed form is
exact; omega_analytic evaluates the log expression numerically and must agree
at every base point.

psi_accumulate builds the unique primitive of omega along a product
decomposition: psi(p g) = psi(p) + psi(g) + omega(p, g).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from mpmath import mp

from .classical import IntegerMatrix, rademacher_phi
from .field import FieldElement, sign, to_float

QUARTER_RANGE = {
    Fraction(-1),
    Fraction(-1, 2),
    Fraction(0),
    Fraction(1, 2),
    Fraction(1),
}


class GroupElement:
    """Determinant-1 2x2 matrix over Q(lambda_q)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, check: bool = True):
        self.a, self.b, self.c, self.d = a, b, c, d
        if check:
            det = a * d - b * c
            if not (det - 1).is_zero():
                raise ValueError("determinant is not 1")

    @property
    def q(self) -> int:
        return self.a.q

    @classmethod
    def from_rows(cls, q: int, entries, check: bool = True) -> "GroupElement":
        conv = [
            e if isinstance(e, FieldElement) else FieldElement.from_rational(q, e)
            for e in entries
        ]
        return cls(*conv, check=check)

    @classmethod
    def identity(cls, q: int) -> "GroupElement":
        one = FieldElement.from_rational(q, 1)
        zero = FieldElement.from_rational(q, 0)
        return cls(one, zero, zero, one, check=False)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            check=False,
        )

    def inv(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a, check=False)

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.a, -self.b, -self.c, -self.d, check=False)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def row(self):
        return self.c, self.d

    def column(self):
        return self.a, self.c

    def entries(self):
        return self.a, self.b, self.c, self.d

    def __repr__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    @classmethod
    def from_integer_matrix(cls, m: IntegerMatrix, q: int = 3) -> "GroupElement":
        return cls.from_rows(q, (m.a, m.b, m.c, m.d), check=False)


def c_of_minus_d(g: GroupElement):
    """c when it is nonzero, else -d; never zero on determinant-1 matrices."""
    if sign(g.c) != 0:
        return g.c
    return -g.d


def _branch_sign(g) -> int:
    """Sign of c(-d): sign(c) for c != 0, sign(-d) for c = 0."""
    if isinstance(g, IntegerMatrix):
        if g.c != 0:
            return 1 if g.c > 0 else -1
        return 1 if -g.d > 0 else -1
    s = sign(g.c)
    if s != 0:
        return s
    return sign(-g.d)


def omega(g, h, gh=None) -> Fraction:
    """Exact quarter-integer cocycle value from the sign formula.

    Accepts GroupElement or IntegerMatrix pairs; gh may be passed when the
    product is already known.
    """
    if gh is None:
        gh = g * h
    s1 = _branch_sign(g)
    s2 = _branch_sign(h)
    s3 = _branch_sign(gh)
    value = Fraction(s1 + s2 - s3 - s1 * s2 * s3, 4)
    if value not in QUARTER_RANGE:
        raise ArithmeticError(f"cocycle value {value} outside quarter-integer range")
    return value


def _embed_complex(x, prec: int):
    if isinstance(x, FieldElement):
        value, _ = to_float(x, prec)
        return value
    return mp.mpf(x)


def omega_analytic(g, h, z: complex = 1j, prec: int = 128) -> float:
    """Log-branch evaluation of the cocycle at a base point in the upper half-plane.

    Independent of z; equals omega(g, h) up to the working precision.
    """
    gh = g * h
    old = mp.prec
    try:
        mp.prec = prec
        zz = mp.mpc(z)
        if mp.im(zz) <= 0:
            raise ValueError("need Im(z) > 0")

        def j(m, w):
            c = _embed_complex(m.c, prec)
            d = _embed_complex(m.d, prec)
            return c * w + d

        def act(m, w):
            a = _embed_complex(m.a, prec)
            b = _embed_complex(m.b, prec)
            return (a * w + b) / j(m, w)

        total = mp.log(j(g, act(h, zz))) + mp.log(j(h, zz)) - mp.log(j(gh, zz))
        value = total / (2j * mp.pi)
        return float(mp.re(value))
    finally:
        mp.prec = old


def psi_accumulate(steps: Iterable[tuple[GroupElement, Fraction]],
                   q: int | None = None):
    """Fold psi along a left-to-right product of (matrix, psi-value) steps.

    Returns (product, psi).  The empty product has psi = 0, pinned by
    psi(I) = psi(I) + psi(I) + omega(I, I).
    """
    steps = list(steps)
    if q is None:
        if not steps:
            raise ValueError("empty product needs an explicit q")
        q = steps[0][0].q
    prod = GroupElement.identity(q)
    psi = Fraction(0)
    started = False
    for g, val in steps:
        if not started:
            prod, psi = g, val
            started = True
            continue
        nxt = prod * g
        psi = psi + val + omega(prod, g, nxt)
        prod = nxt
    return prod, psi


def psi_sl2(m: IntegerMatrix) -> Fraction:
    """psi = phi - (1/4) sign(c) on integer unimodular matrices, sign(0) = 0."""
    sgn_c = (m.c > 0) - (m.c < 0)
    return rademacher_phi(m) - Fraction(sgn_c, 4)
