"""Exact arithmetic in the totally real fields Q(lambda_q), lambda_q = 2*cos(pi/q).

Elements are coordinate vectors in the power basis 1, L, L^2, ... of
lambda_q modulo its minimal polynomial, with Fraction coordinates, so all
ring operations are exact.  The distinguished real embedding L -> 2*cos(pi/q)
is evaluated by adaptive-precision interval arithmetic, which yields certified
signs, floors and floating-point views.

For q = 3 the field degree is 1 (lambda_3 = 1) and every element is a plain
rational in a length-one coordinate vector.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv, mp

Rational = Fraction

_MAX_SIGN_PREC = 1 << 16


# ----------------------------------------------------------------------------
# integer polynomials (little-endian coefficient lists)
# ----------------------------------------------------------------------------

def euler_phi(n: int) -> int:
    """Euler's totient."""
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials; raises if it does not divide."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        f = c // lead
        out[k - dd] = f
        if f:
            for i, d in enumerate(den):
                num[k - dd + i] -= f * d
    if any(num[:dd]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@functools.lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(_cyclotomic(d)))
    return tuple(poly)


@dataclass(frozen=True)
class MinimalPolynomial:
    """Monic integer minimal polynomial of lambda_q over the rationals."""

    q: int
    coefficients: tuple[int, ...]  # little-endian, leading coefficient 1

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        val = 0
        for c in reversed(self.coefficients):
            val = val * x + c
        return val

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xk = "x" if k == 1 else f"x^{k}"
                body = xk if mag == 1 else f"{mag}*{xk}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def minimal_poly(q: int) -> MinimalPolynomial:
    """Minimal polynomial of 2*cos(pi/q), of degree phi(2q)/2.

    2*cos(pi/q) = z + 1/z for z a primitive 2q-th root of unity, so the
    polynomial is obtained by folding the (palindromic) cyclotomic polynomial
    of order 2q through y^j + y^-j = V_j(x), V_0 = 2, V_1 = x,
    V_{j+1} = x*V_j - V_{j-1}.
    """
    if q < 3:
        raise ValueError(f"need q >= 3, got {q}")
    cyc = _cyclotomic(2 * q)
    deg = len(cyc) - 1  # phi(2q), even for q >= 3
    half = deg // 2
    out = [0] * (half + 1)
    out[0] = cyc[half]
    v_prev = [2]
    v_cur = [0, 1]
    for j in range(1, half + 1):
        a = cyc[half + j]
        if a:
            for i, vc in enumerate(v_cur):
                out[i] += a * vc
        # V_{j+1} = x*V_j - V_{j-1}
        v_next = [0] + v_cur
        for i, vc in enumerate(v_prev):
            v_next[i] -= vc
        v_prev, v_cur = v_cur, v_next
    assert out[-1] == 1
    return MinimalPolynomial(q, tuple(out))


# ----------------------------------------------------------------------------
# field contexts
# ----------------------------------------------------------------------------

class FieldContext:
    """Cached per-q data: minimal polynomial, power reduction rows, embeddings."""

    def __init__(self, q: int):
        self.q = q
        self.minpoly = minimal_poly(q)
        self.degree = self.minpoly.degree
        # lambda^(degree+k) in the power basis, k = 0 .. degree-2
        rows: list[tuple[int, ...]] = []
        top = tuple(-c for c in self.minpoly.coefficients[:-1])
        rows.append(top)
        for _ in range(self.degree - 2):
            prev = rows[-1]
            shifted = [0] + list(prev[:-1])
            lead = prev[-1]
            if lead:
                for i, t in enumerate(top):
                    shifted[i] += lead * t
            rows.append(tuple(shifted))
        self.pow_rows = tuple(rows)
        self._lam_cache: dict[int, object] = {}

    def lam_interval(self, prec: int):
        """Rigorous enclosure of 2*cos(pi/q) at the given binary precision."""
        cached = self._lam_cache.get(prec)
        if cached is None:
            old = iv.prec
            try:
                iv.prec = prec
                cached = 2 * iv.cos(iv.pi / self.q)
            finally:
                iv.prec = old
            self._lam_cache[prec] = cached
        return cached


_CONTEXTS: dict[int, FieldContext] = {}


def field_context(q: int) -> FieldContext:
    ctx = _CONTEXTS.get(q)
    if ctx is None:
        ctx = FieldContext(q)
        _CONTEXTS[q] = ctx
    return ctx


# ----------------------------------------------------------------------------
# field elements
# ----------------------------------------------------------------------------

def _sgn(x) -> int:
    return (x > 0) - (x < 0)


class FieldElement:
    """An element of Q(lambda_q) as an exact power-basis coordinate vector."""

    __slots__ = ("ctx", "coords")

    def __init__(self, q: int, coords):
        ctx = field_context(q)
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != ctx.degree:
            raise ValueError(
                f"expected {ctx.degree} coordinates for q={q}, got {len(coords)}"
            )
        self.ctx = ctx
        self.coords = coords

    @classmethod
    def _make(cls, ctx: FieldContext, coords: tuple) -> "FieldElement":
        el = object.__new__(cls)
        el.ctx = ctx
        el.coords = coords
        return el

    @property
    def q(self) -> int:
        return self.ctx.q

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_rational(cls, q: int, value) -> "FieldElement":
        ctx = field_context(q)
        coords = (Fraction(value),) + (Fraction(0),) * (ctx.degree - 1)
        return cls._make(ctx, coords)

    @classmethod
    def lam(cls, q: int) -> "FieldElement":
        """The generator lambda_q."""
        ctx = field_context(q)
        if ctx.degree == 1:
            # lambda reduces to a rational (q = 3: lambda = 1)
            return cls._make(ctx, (Fraction(ctx.pow_rows[0][0]),))
        coords = [Fraction(0)] * ctx.degree
        coords[1] = Fraction(1)
        return cls._make(ctx, tuple(coords))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError(
                    f"mixed fields: q={self.ctx.q} and q={other.ctx.q}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.from_rational(self.ctx.q, other)
        return None

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement._make(
            self.ctx, tuple(a + b for a, b in zip(self.coords, o.coords))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement._make(
            self.ctx, tuple(a - b for a, b in zip(self.coords, o.coords))
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement._make(self.ctx, tuple(-a for a in self.coords))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        deg = ctx.degree
        if deg == 1:
            return FieldElement._make(ctx, (self.coords[0] * o.coords[0],))
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        conv[i + j] += a * b
        out = conv[:deg]
        for k in range(deg, 2 * deg - 1):
            ck = conv[k]
            if ck:
                row = ctx.pow_rows[k - deg]
                for i, r in enumerate(row):
                    if r:
                        out[i] += ck * r
        return FieldElement._make(ctx, tuple(out))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        """Exact multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        ctx = self.ctx
        if ctx.degree == 1:
            return FieldElement._make(ctx, (1 / self.coords[0],))
        # xgcd of self (as a polynomial in L) with the minimal polynomial
        r0 = [Fraction(c) for c in ctx.minpoly.coefficients]
        r1 = list(self.coords)
        while r1 and not r1[-1]:
            r1.pop()
        s0 = [Fraction(0)]
        s1 = [Fraction(1)]

        def poly_sub_mul(a, b, f, shift):
            # a -= f * x^shift * b
            need = len(b) + shift
            if len(a) < need:
                a.extend(Fraction(0) for _ in range(need - len(a)))
            for i, bc in enumerate(b):
                if bc:
                    a[shift + i] -= f * bc
            while a and not a[-1]:
                a.pop()
            return a

        while len(r1) > 1:
            while len(r0) >= len(r1):
                f = r0[-1] / r1[-1]
                shift = len(r0) - len(r1)
                poly_sub_mul(r0, r1, f, shift)
                poly_sub_mul(s0, s1, f, shift)
                if not r0:
                    break
            r0, r1 = r1, r0
            s0, s1 = s1, s0
        if not r1:
            raise ZeroDivisionError("element not invertible (reducible modulus?)")
        g = r1[0]
        inv_coords = [c / g for c in s1]
        inv_coords.extend(Fraction(0) for _ in range(ctx.degree - len(inv_coords)))
        return FieldElement._make(ctx, tuple(inv_coords[: ctx.degree]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = FieldElement.from_rational(self.ctx.q, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates and embeddings ---------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, FieldElement) else other
        if not isinstance(o, FieldElement):
            return NotImplemented
        return self.ctx is o.ctx and self.coords == o.coords

    def __hash__(self):
        return hash((self.ctx.q, self.coords))

    def interval(self, prec: int):
        """Rigorous interval enclosure of the distinguished real embedding."""
        ctx = self.ctx
        work = prec
        for c in self.coords:
            work = max(
                work,
                c.numerator.bit_length() + 8,
                c.denominator.bit_length() + 8,
            )
        old = iv.prec
        try:
            iv.prec = work
            lam = ctx.lam_interval(work)
            val = iv.mpf(0)
            for c in reversed(self.coords):
                # integers below working precision convert exactly
                term = iv.mpf(c.numerator) / iv.mpf(c.denominator)
                val = val * lam + term
            return val
        finally:
            iv.prec = old

    def sign(self) -> int:
        """Certified sign under the embedding; 0 iff the coordinate vector is 0."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return _sgn(self.coords[0])
        prec = 64
        while prec <= _MAX_SIGN_PREC:
            box = self.interval(prec)
            if box.a > 0:
                return 1
            if box.b < 0:
                return -1
            prec *= 2
        raise RuntimeError(f"sign undecided at {_MAX_SIGN_PREC} bits: {self!r}")

    def __float__(self) -> float:
        value, _err = to_float(self, 53)
        return float(value)

    # -- text form ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"FieldElement(q={self.ctx.q}, {format_element(self)!r})"


def sign(x) -> int:
    """Sign of a field element, Fraction or int (0 maps to 0)."""
    if isinstance(x, FieldElement):
        return x.sign()
    return _sgn(x)


def _iv_endpoints(box, prec: int):
    """Lower and upper endpoints of an iv interval as plain mpf values."""
    lo_raw, hi_raw = box._mpi_
    old = mp.prec
    try:
        mp.prec = prec
        return mp.make_mpf(lo_raw), mp.make_mpf(hi_raw)
    finally:
        mp.prec = old


def to_float(x, bits: int = 53):
    """Certified embedding: (value, error) with the true value within error.

    The returned interval half-width is below 2**(1-bits); value is an mpmath
    float carrying at least the requested precision.
    """
    if bits < 53:
        raise ValueError("need bits >= 53")
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        old = mp.prec
        try:
            mp.prec = bits + 8
            return mp.mpf(x.numerator) / mp.mpf(x.denominator), mp.mpf(2) ** (-bits)
        finally:
            mp.prec = old
    prec = bits + 16
    while True:
        box = x.interval(prec)
        lo, hi = _iv_endpoints(box, prec)
        old = mp.prec
        try:
            mp.prec = prec
            width = hi - lo
            if width < mp.mpf(2) ** (1 - bits):
                return (lo + hi) / 2, width / 2
        finally:
            mp.prec = old
        prec *= 2
        if prec > 1 << 20:
            raise RuntimeError("embedding did not converge")


def floor_of(x) -> int:
    """Exact floor of a field element, Fraction or int under the embedding."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return math.floor(x)
    if x.is_rational():
        return math.floor(x.rational_value())
    prec = 64
    while prec <= _MAX_SIGN_PREC:
        box = x.interval(prec)
        lo, hi = _iv_endpoints(box, prec)
        flo = int(mp.floor(lo))
        fhi = int(mp.floor(hi))
        if flo == fhi:
            return flo
        prec *= 2
    raise RuntimeError(f"floor undecided at {_MAX_SIGN_PREC} bits: {x!r}")


def embed_float(x, bits: int = 128) -> float:
    """Certified 64-bit float view computed through a bits-precision interval."""
    value, _err = to_float(x, bits)
    return float(value)


# ----------------------------------------------------------------------------
# text form: polynomials in the symbol L
# ----------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*(?P<lam>L(?:\^(?P<pow>\d+))?)?$"
)


def format_element(x: FieldElement) -> str:
    """Render as e.g. '1/2 + 3/4*L - L^2'; zero renders as '0'."""
    parts = []
    for k, c in enumerate(x.coords):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            lk = "L" if k == 1 else f"L^{k}"
            body = lk if mag == 1 else f"{mag}*{lk}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def parse_element(q: int, text: str) -> FieldElement:
    """Parse the textual form: integers, fractions p/q, and L-polynomials."""
    ctx = field_context(q)
    s = text.strip()
    if not s:
        raise ValueError("empty field element literal")
    coords = [Fraction(0)] * ctx.degree
    lam_extra = []  # powers beyond the field degree, folded in at the end
    pos = 0
    sign_val = 1
    # leading sign
    if s[0] in "+-":
        sign_val = -1 if s[0] == "-" else 1
        pos = 1
    while pos <= len(s):
        # find the next top-level +/- separator
        nxt = pos
        while nxt < len(s) and s[nxt] not in "+-":
            nxt += 1
        term = s[pos:nxt].strip()
        m = _TERM_RE.match(term)
        if not m or (m.group("coef") is None and m.group("lam") is None):
            raise ValueError(f"bad field element term {term!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        coef *= sign_val
        if m.group("lam"):
            power = int(m.group("pow")) if m.group("pow") else 1
        else:
            power = 0
        if power < ctx.degree:
            coords[power] += coef
        else:
            lam_extra.append((power, coef))
        if nxt >= len(s):
            break
        sign_val = -1 if s[nxt] == "-" else 1
        pos = nxt + 1
    el = FieldElement._make(ctx, tuple(coords))
    if lam_extra:
        lam = FieldElement.lam(q)
        for power, coef in lam_extra:
            el = el + coef * lam**power
    return el
