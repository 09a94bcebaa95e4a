"""Exact arithmetic in characteristic 2.

This module provides the ground layer everything else builds on:

* ``FiniteField`` / ``FieldElement`` -- GF(2^k) for k <= 8, represented as
  polynomials in the generator ``w`` modulo a fixed irreducible polynomial.
  For k = 2 the modulus is w^2 + w + 1, so ``w`` is a primitive cube root
  of unity.
* ``PolyRing`` / ``Poly`` -- multivariate polynomials over GF(2^k) with
  exact coefficient maps (no zero coefficients stored).
* ``RatFunc`` -- reduced fractions of polynomials (gcd 1, monic
  denominator), so equality is syntactic.
* ``Place`` -- a monic irreducible polynomial in one variable, or the
  distinguished place at infinity, with exact valuations.

All values are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Iterator, Optional, Union


class AlgebraError(Exception):
    """Base class for exact-arithmetic errors."""


class DivisionByZero(AlgebraError):
    pass


class FieldMismatch(AlgebraError):
    pass


class ZeroPolynomial(AlgebraError):
    pass


class UnknownVariable(AlgebraError):
    pass


class ZeroFunction(AlgebraError):
    pass


class ParseError(AlgebraError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (column {pos + 1})")
        self.pos = pos


# Verified irreducible moduli over GF(2), indexed by extension degree.
# The k = 2 entry is w^2 + w + 1 so that w is a primitive cube root of 1.
_MODULI = {
    1: 0b11,          # w + 1 (degenerate: GF(2) itself)
    2: 0b111,         # w^2 + w + 1
    3: 0b1011,        # w^3 + w + 1
    4: 0b10011,       # w^4 + w + 1
    5: 0b100101,      # w^5 + w^2 + 1
    6: 0b1000011,     # w^6 + w + 1
    7: 0b10000011,    # w^7 + w + 1
    8: 0b100011011,   # w^8 + w^4 + w^3 + w + 1
}


def _bits_mul_mod(a: int, b: int, modulus: int, k: int) -> int:
    # carry-less multiply followed by reduction mod the field polynomial
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> k & 1:
            a ^= modulus
    return r


@lru_cache(maxsize=None)
def GF(k: int) -> "FiniteField":
    """The field GF(2^k) with its canonical modulus (k <= 8)."""
    return FiniteField(k)


class FiniteField:
    """GF(2^k); elements are bit masks of polynomials in the generator."""

    def __init__(self, k: int):
        if not 1 <= k <= 8:
            raise AlgebraError(f"extension degree {k} out of supported range 1..8")
        self.k = k
        self.characteristic = 2
        self.modulus = _MODULI[k]
        self.size = 1 << k

    def element(self, bits: int) -> "FieldElement":
        if not 0 <= bits < self.size:
            raise AlgebraError(f"bit pattern {bits} out of range for GF(2^{self.k})")
        return FieldElement(self, bits)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The generator w (equal to 1 when k = 1)."""
        return FieldElement(self, 2 % self.size if self.k > 1 else 1)

    def elements(self) -> Iterator["FieldElement"]:
        for bits in range(self.size):
            yield FieldElement(self, bits)

    def modulus_is_irreducible(self) -> bool:
        """Exhaustively certify the defining modulus (desk scale only)."""
        if self.k == 1:
            return True
        return _gf2_irreducible(self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.k == other.k

    def __hash__(self):
        return hash(("GF2", self.k))

    def __repr__(self):
        return f"GF(2^{self.k})"


def _gf2_degree(bits: int) -> int:
    return bits.bit_length() - 1


def _gf2_mod(a: int, m: int) -> int:
    dm = _gf2_degree(m)
    while _gf2_degree(a) >= dm and a:
        a ^= m << (_gf2_degree(a) - dm)
    return a


def _gf2_irreducible(m: int) -> bool:
    d = _gf2_degree(m)
    for cand in range(2, 1 << (d // 2 + 1)):
        if _gf2_degree(cand) >= 1 and _gf2_mod(m, cand) == 0:
            return False
    return True


class FieldElement:
    """An element of GF(2^k). Addition is xor; char 2 throughout."""

    __slots__ = ("field", "bits")

    def __init__(self, field: FiniteField, bits: int):
        self.field = field
        self.bits = bits

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            if other in (0, 1):
                return FieldElement(self.field, other)
            raise FieldMismatch(f"cannot coerce integer {other} into {self.field}")
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.bits ^ other.bits)

    __radd__ = __add__
    __sub__ = __add__       # char 2: subtraction is addition
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        return FieldElement(f, _bits_mul_mod(self.bits, other.bits, f.modulus, f.k))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if self.bits == 0:
            raise DivisionByZero("inverse of 0")
        # Fermat: x^(2^k - 2) = x^(-1) on the cyclic group of order 2^k - 1
        return self ** (self.field.size - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._check(other)
        return other * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        r = self.field.one
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def sqrt(self) -> "FieldElement":
        """The unique square root (Frobenius is bijective on GF(2^k))."""
        return self ** (1 << (self.field.k - 1))

    def __eq__(self, other):
        if isinstance(other, int) and other in (0, 1):
            return self.bits == other
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.field.k, self.bits))

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        if self.bits in (0, 1):
            return str(self.bits)
        parts = []
        for d in range(self.field.k - 1, -1, -1):
            if self.bits >> d & 1:
                parts.append("w" if d == 1 else ("1" if d == 0 else f"w^{d}"))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Polynomials


@lru_cache(maxsize=None)
def ring(field: FiniteField, variables: tuple) -> "PolyRing":
    return PolyRing(field, variables)


class PolyRing:
    """Polynomial ring over GF(2^k) in an ordered tuple of variables."""

    def __init__(self, field: FiniteField, variables: tuple):
        if len(set(variables)) != len(variables):
            raise AlgebraError(f"repeated variable in {variables}")
        self.field = field
        self.vars = tuple(variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.vars == other.vars
        )

    def __hash__(self):
        return hash((self.field.k, self.vars))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.vars)}]"

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(self.field.one)

    def const(self, c) -> "Poly":
        if isinstance(c, int):
            c = self.field.element(c & 1) if c in (0, 1) else None
            if c is None:
                raise AlgebraError("only 0 and 1 coerce to field constants")
        if c.field != self.field:
            raise FieldMismatch(f"constant from {c.field} in ring over {self.field}")
        if not c:
            return self.zero
        return Poly(self, {(0,) * len(self.vars): c})

    def var(self, name: str) -> "Poly":
        if name not in self.vars:
            raise UnknownVariable(f"{name!r} not among {self.vars}")
        exp = tuple(1 if v == name else 0 for v in self.vars)
        return Poly(self, {exp: self.field.one})

    def gens(self) -> tuple:
        return tuple(self.var(v) for v in self.vars)

    def parse(self, text: str) -> "Poly":
        value = parse_ratfunc(text, self)
        if not value.den.is_one():
            raise ParseError("polynomial expected, found '/'", 0)
        return value.num


def _coerce_pair(p, q):
    """Lift (p, q) to a common level: Poly/Poly or RatFunc/RatFunc."""
    if isinstance(q, int):
        if isinstance(p, Poly):
            q = p.ring.const(q)
        elif isinstance(p, RatFunc):
            q = RatFunc(p.num.ring.const(q), p.num.ring.one)
    elif isinstance(q, FieldElement):
        if isinstance(p, Poly):
            q = p.ring.const(q)
        elif isinstance(p, RatFunc):
            q = RatFunc(p.num.ring.const(q), p.num.ring.one)
    if isinstance(p, Poly) and isinstance(q, RatFunc):
        p = RatFunc(p, p.ring.one)
    elif isinstance(p, RatFunc) and isinstance(q, Poly):
        q = RatFunc(q, q.ring.one)
    return p, q


class Poly:
    """Multivariate polynomial in canonical form (no zero coefficients)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring_: PolyRing, terms: dict):
        self.ring = ring_
        self.terms = {e: c for e, c in terms.items() if c}

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * len(self.ring.vars): self.ring.field.one}

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> FieldElement:
        if not self.is_constant():
            raise AlgebraError("not a constant polynomial")
        return self.terms.get((0,) * len(self.ring.vars), self.ring.field.zero)

    def degree(self, var: Optional[str] = None) -> int:
        """Total degree, or degree in one variable. Zero poly has degree -1."""
        if self.is_zero():
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self._var_index(var)
        return max(e[i] for e in self.terms)

    def variables_used(self) -> tuple:
        used = set()
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    used.add(self.ring.vars[i])
        return tuple(v for v in self.ring.vars if v in used)

    def _var_index(self, var: str) -> int:
        try:
            return self.ring.vars.index(var)
        except ValueError:
            raise UnknownVariable(f"{var!r} not among {self.ring.vars}") from None

    def leading(self) -> tuple:
        """(exponent, coefficient) of the lex-leading term."""
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        _, c = self.leading()
        return self * c.inv()

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise FieldMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        a, b = _coerce_pair(self, other)
        if isinstance(a, RatFunc):
            return a + b
        self._check_ring(b)
        terms = dict(self.terms)
        for e, c in b.terms.items():
            s = terms.get(e, self.ring.field.zero) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        a, b = _coerce_pair(self, other)
        if isinstance(a, RatFunc):
            return a * b
        self._check_ring(b)
        zero = self.ring.field.zero
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, zero) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise AlgebraError("negative power of a polynomial; use RatFunc")
        r = self.ring.one
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __truediv__(self, other):
        a, b = _coerce_pair(self, other)
        if isinstance(a, Poly):
            a = RatFunc(a, a.ring.one)
            b = RatFunc(b, b.ring.one)
        return a / b

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            _, other = _coerce_pair(self, other)
        if isinstance(other, RatFunc):
            return RatFunc(self, self.ring.one) == other
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return not self.is_zero()

    # -- calculus and substitution -------------------------------------------

    def deriv(self, var: str) -> "Poly":
        """Formal partial derivative; integer multiples reduce mod 2."""
        i = self._var_index(var)
        terms: dict = {}
        for e, c in self.terms.items():
            if e[i] % 2 == 1:  # even exponents vanish in characteristic 2
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                s = terms.get(ne, self.ring.field.zero) + c
                if s:
                    terms[ne] = s
                else:
                    terms.pop(ne, None)
        return Poly(self.ring, terms)

    def subs(self, mapping: dict, target: Optional[PolyRing] = None):
        """Substitute values for variables.

        ``mapping`` sends variable names to Poly/RatFunc/FieldElement values
        sharing one ring; unmapped variables map to the same-named generator
        of the target ring (default: this ring).
        """
        tring = target if target is not None else self.ring
        if tring.field != self.ring.field and self.ring.field.k != 1:
            # only the prime field embeds canonically into every GF(2^k)
            raise FieldMismatch(f"{tring.field} vs {self.ring.field}")
        values = []
        for v in self.ring.vars:
            if v in mapping:
                values.append(mapping[v])
            else:
                values.append(tring.var(v))
        acc = None
        for e, c in self.terms.items():
            if c.field != tring.field:
                c = tring.field.element(c.bits)  # 0/1 from the prime field
            term = tring.const(c)
            for val, d in zip(values, e):
                if d:
                    term = term * val ** d
            acc = term if acc is None else acc + term
        if acc is None:
            return tring.zero
        return acc

    def frobenius_square(self) -> "Poly":
        """p^2, using (sum c_e x^e)^2 = sum c_e^2 x^(2e)."""
        return Poly(self.ring, {tuple(2 * d for d in e): c * c for e, c in self.terms.items()})

    # -- univariate views -----------------------------------------------------

    def coeffs_in(self, var: str) -> dict:
        """View as polynomial in ``var``: degree -> Poly in the other vars."""
        i = self._var_index(var)
        out: dict = {}
        for e, c in self.terms.items():
            d = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            sub = out.setdefault(d, {})
            sub[rest] = sub.get(rest, self.ring.field.zero) + c
        return {d: Poly(self.ring, sub) for d, sub in out.items() if any(sub.values())}

    @staticmethod
    def from_coeffs_in(ring_: PolyRing, var: str, coeffs: dict) -> "Poly":
        i = ring_.vars.index(var)
        terms: dict = {}
        for d, p in coeffs.items():
            for e, c in p.terms.items():
                ne = e[:i] + (d,) + e[i + 1:]
                terms[ne] = terms.get(ne, ring_.field.zero) + c
        return Poly(ring_, terms)

    # -- printing -------------------------------------------------------------

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for v, d in zip(self.ring.vars, e):
                if d == 1:
                    factors.append(v)
                elif d > 1:
                    factors.append(f"{v}^{d}")
            cs = repr(c)
            if not factors:
                parts.append(cs if " " not in cs else f"({cs})")
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                cs = cs if " " not in cs else f"({cs})"
                parts.append("*".join([cs] + factors))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Exact division and gcd


def poly_divmod(f: Poly, g: Poly, var: str):
    """Division with remainder in (coefficient ring)[var].

    Requires the leading coefficient of ``g`` in ``var`` to be invertible in
    the coefficient ring, i.e. a nonzero constant, unless division happens to
    be exact at each step (checked; raises otherwise).
    """
    if g.is_zero():
        raise DivisionByZero("polynomial division by zero")
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    dg = max(gc)
    lead = gc[dg]
    q: dict = {}
    r = dict(fc)
    while r and max(r) >= dg:
        dr = max(r)
        if not r[dr].is_zero():
            c = _exact_coeff_div(r[dr], lead)
            q[dr - dg] = c
            for d, gco in gc.items():
                nd = dr - dg + d
                cur = r.get(nd, f.ring.zero)
                nxt = cur + c * gco
                if nxt.is_zero():
                    r.pop(nd, None)
                else:
                    r[nd] = nxt
        else:
            r.pop(dr)
    qp = Poly.from_coeffs_in(f.ring, var, q)
    rp = Poly.from_coeffs_in(f.ring, var, r)
    return qp, rp


def _exact_coeff_div(a: Poly, b: Poly) -> Poly:
    if b.is_constant():
        return a * b.constant_value().inv()
    q = exact_div(a, b)
    if q is None:
        raise AlgebraError("non-exact coefficient division")
    return q


def exact_div(f: Poly, g: Poly) -> Optional[Poly]:
    """f / g when g divides f exactly, else None."""
    if g.is_zero():
        raise DivisionByZero("division by zero polynomial")
    if f.is_zero():
        return f
    if g.is_constant():
        return f * g.constant_value().inv()
    var = g.variables_used()[0]
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    dg = max(gc)
    lead = gc[dg]
    q: dict = {}
    r = dict(fc)
    while r:
        dr = max(r)
        if dr < dg:
            return None
        c = exact_div(r[dr], lead)
        if c is None:
            return None
        q[dr - dg] = c
        for d, gco in gc.items():
            nd = dr - dg + d
            cur = r.get(nd, f.ring.zero)
            nxt = cur + c * gco
            if nxt.is_zero():
                r.pop(nd, None)
            else:
                r[nd] = nxt
    return Poly.from_coeffs_in(f.ring, var, q)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd via primitive pseudo-remainder sequences."""
    if f.is_zero():
        return g.monic() if not g.is_zero() else g
    if g.is_zero():
        return f.monic()
    fv, gv = f.variables_used(), g.variables_used()
    if not fv and not gv:
        return f.ring.one
    if not fv or not gv:
        return f.ring.one  # a nonzero constant divides everything
    var = fv[0] if fv else gv[0]
    if var not in gv:
        var = gv[0]
    if var not in fv:
        # f does not involve g's main variable: gcd divides coefficients
        return _content_gcd(g, var, extra=f)
    a, ca = _primitive_part(f, var)
    b, cb = _primitive_part(g, var)
    cont = poly_gcd(ca, cb)
    while True:
        if b.degree(var) < 0:
            break
        if a.degree(var) < b.degree(var):
            a, b = b, a
        r = _pseudo_rem(a, b, var)
        if r.is_zero():
            a = b
            b = b.ring.zero
            break
        a, b = b, _primitive_part(r, var)[0]
    result = _primitive_part(a, var)[0] * cont
    return result.monic()


def _content_gcd(g: Poly, var: str, extra: Poly) -> Poly:
    c = extra
    for p in g.coeffs_in(var).values():
        c = poly_gcd(c, p)
    return c.monic()


def _primitive_part(f: Poly, var: str):
    coeffs = list(f.coeffs_in(var).values())
    cont = coeffs[0]
    for p in coeffs[1:]:
        cont = poly_gcd(cont, p)
    cont = cont.monic() if not cont.is_constant() else f.ring.one
    if cont.is_one():
        return f, cont
    pp = exact_div(f, cont)
    return pp, cont


def _pseudo_rem(f: Poly, g: Poly, var: str) -> Poly:
    df, dg = f.degree(var), g.degree(var)
    lead = g.coeffs_in(var)[dg]
    r = f * lead ** (df - dg + 1)
    _, rem = poly_divmod(r, g, var)
    return rem


# ---------------------------------------------------------------------------
# Rational functions


class RatFunc:
    """num/den, stored reduced (gcd 1) with monic (lex-leading 1) denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.ring != den.ring:
            raise FieldMismatch(f"{num.ring} vs {den.ring}")
        if num.is_zero():
            den = num.ring.one
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num = exact_div(num, g)
                den = exact_div(den, g)
            _, lc = den.leading()
            if lc != den.ring.field.one:
                c = lc.inv()
                num = num * c
                den = den * c
        self.num = num
        self.den = den

    @staticmethod
    def of(p) -> "RatFunc":
        if isinstance(p, RatFunc):
            return p
        return RatFunc(p, p.ring.one)

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self) -> FieldElement:
        if not self.is_constant():
            raise AlgebraError("not a constant")
        return self.num.constant_value()

    def __add__(self, other):
        a, b = _coerce_pair(self, other)
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        a, b = _coerce_pair(self, other)
        return RatFunc(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = _coerce_pair(self, other)
        if b.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RatFunc(a.num * b.den, a.den * b.num)

    def __rtruediv__(self, other):
        a, b = _coerce_pair(self, other)
        return b / a

    def __pow__(self, n: int):
        if n < 0:
            return (self.ring.one / self) ** (-n) if not self.is_zero() else _raise_div0()
        r = RatFunc.of(self.ring.one)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        a, b = _coerce_pair(self, other)
        if not isinstance(b, RatFunc):
            return NotImplemented
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def deriv(self, var: str) -> "RatFunc":
        """Quotient rule; signs are trivial in characteristic 2."""
        f, g = self.num, self.den
        return RatFunc(f.deriv(var) * g + f * g.deriv(var), g * g)

    def subs(self, mapping: dict, target: Optional[PolyRing] = None) -> "RatFunc":
        num = self.num.subs(mapping, target)
        den = self.den.subs(mapping, target)
        num, den = _coerce_pair(num, den)
        if isinstance(num, Poly):
            return RatFunc(num, den)
        return num / den

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        ns = repr(self.num)
        if " + " in ns:
            ns = f"({ns})"
        return f"{ns}/({self.den!r})"


def _raise_div0():
    raise DivisionByZero("inverse of zero")


def partial_derivative(value: Union[Poly, RatFunc], var: str) -> Union[Poly, RatFunc]:
    """Formal partial derivative of a polynomial or rational function."""
    return value.deriv(var)


def field_arith(op: str, *operands: FieldElement) -> FieldElement:
    """Dispatch form of the field operations (add, mul, inv, pow)."""
    if op == "add":
        return reduce(lambda a, b: a + b, operands)
    if op == "mul":
        return reduce(lambda a, b: a * b, operands)
    if op == "inv":
        (x,) = operands
        return x.inv()
    if op == "pow":
        x, n = operands
        return x ** n
    raise AlgebraError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# Univariate machinery: irreducibles, factorization, places, valuations


def _univar(p: Poly) -> str:
    used = p.variables_used()
    if len(used) != 1:
        raise AlgebraError(f"univariate polynomial expected, uses {used}")
    return used[0]


def monic_polys(ring_: PolyRing, var: str, degree: int) -> Iterator[Poly]:
    """All monic polynomials of exact degree in one variable."""
    x = ring_.var(var)
    consts = list(ring_.field.elements())

    def rec(d: int, acc: Poly) -> Iterator[Poly]:
        if d < 0:
            yield acc
            return
        for c in consts:
            yield from rec(d - 1, acc + ring_.const(c) * x ** d)

    yield from rec(degree - 1, x ** degree)


@lru_cache(maxsize=None)
def _irreducibles_cached(ring_: PolyRing, var: str, degree: int) -> tuple:
    out = []
    for p in monic_polys(ring_, var, degree):
        if is_irreducible(p):
            out.append(p)
    return tuple(out)


def monic_irreducibles(ring_: PolyRing, var: str, degree: int) -> tuple:
    return _irreducibles_cached(ring_, var, degree)


def is_irreducible(p: Poly) -> bool:
    """Trial division by lower-degree monic irreducibles (desk scale)."""
    var = _univar(p)
    d = p.degree(var)
    if d <= 0:
        return False
    if d == 1:
        return True
    for dd in range(1, d // 2 + 1):
        for q in monic_irreducibles(p.ring, var, dd):
            _, r = poly_divmod(p, q, var)
            if r.is_zero():
                return False
    return True


def poly_factor_univariate(p: Poly, var: Optional[str] = None):
    """Factor a univariate polynomial into (irreducible, multiplicity) pairs.

    Exhaustive trial division by monic irreducibles of ascending degree;
    returns factors sorted by (degree, text), and the leading unit first
    as a constant Poly when it is not 1.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if var is None:
        if p.is_constant():
            return []
        var = _univar(p)
    _, lc = p.leading()
    work = p.monic()
    factors = []
    d = 1
    while work.degree(var) > 0:
        if d > work.degree(var) // 2:
            factors.append((work, 1))
            break
        progressed = False
        for q in monic_irreducibles(p.ring, var, d):
            mult = 0
            while True:
                quo, rem = poly_divmod(work, q, var)
                if rem.is_zero():
                    work = quo
                    mult += 1
                else:
                    break
            if mult:
                factors.append((q, mult))
                progressed = True
            if work.degree(var) == 0:
                break
        d += 1
        if not progressed and d > work.degree(var) // 2 and work.degree(var) > 0:
            factors.append((work, 1))
            break
    factors.sort(key=lambda fm: (fm[0].degree(var), repr(fm[0])))
    if lc != p.ring.field.one:
        factors.insert(0, (p.ring.const(lc), 1))
    return factors


@dataclass(frozen=True)
class Place:
    """A finite place (monic irreducible in one variable) or infinity."""

    poly: Optional[Poly]  # None means the place at infinity
    var: str = "t"

    @staticmethod
    def infinity(var: str = "t") -> "Place":
        return Place(None, var)

    @staticmethod
    def finite(poly: Poly) -> "Place":
        var = _univar(poly)
        _, lc = poly.leading()
        if lc != poly.ring.field.one:
            poly = poly.monic()
        return Place(poly, var)

    @staticmethod
    def at(value) -> "Place":
        """The place t = value for a field element or constant."""
        if isinstance(value, RatFunc):
            raise AlgebraError("use Place.finite for non-constant places")
        if isinstance(value, Poly):
            ring_ = value.ring
            var = ring_.vars[0]
            return Place.finite(ring_.var(var) + value)
        raise AlgebraError("Place.at expects a constant Poly")

    def is_infinite(self) -> bool:
        return self.poly is None

    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree(self.var)

    def __repr__(self):
        if self.poly is None:
            return f"({self.var} = infinity)"
        return f"({self.poly!r} = 0)"


def poly_valuation(p: Poly, place: Place) -> int:
    if p.is_zero():
        raise ZeroFunction("valuation of zero")
    var = place.var
    if place.is_infinite():
        return -p.degree(var)
    v = 0
    work = p
    while True:
        quo, rem = poly_divmod(work, place.poly, var)
        if rem.is_zero():
            v += 1
            work = quo
        else:
            return v


def valuation(f: Union[Poly, RatFunc], place: Place) -> int:
    """Order of vanishing at a place; at infinity deg(den) - deg(num)."""
    if isinstance(f, Poly):
        return poly_valuation(f, place)
    if f.is_zero():
        raise ZeroFunction("valuation of zero")
    return poly_valuation(f.num, place) - poly_valuation(f.den, place)


def places_of(f: Union[Poly, RatFunc], var: str = "t"):
    """All places where f has nonzero valuation, plus infinity."""
    f = RatFunc.of(f)
    if f.is_zero():
        raise ZeroFunction("zero function has no divisor")
    out = []
    seen = set()
    for part in (f.num, f.den):
        if part.is_constant():
            continue
        for q, _ in poly_factor_univariate(part, var):
            if q.is_constant():
                continue
            pl = Place.finite(q)
            if pl not in seen:
                seen.add(pl)
                out.append((pl, valuation(f, pl)))
    inf = Place.infinity(var)
    v = valuation(f, inf)
    if v:
        out.append((inf, v))
    return out


# ---------------------------------------------------------------------------
# Residue fields GF(2^k)[t]/(p)


class ResidueField:
    """The residue field at a finite place: polynomials modulo the place."""

    def __init__(self, place: Place):
        if place.is_infinite():
            raise AlgebraError("no residue ring at infinity here; swap charts first")
        self.place = place
        self.ring = place.poly.ring
        self.var = place.var
        self.size = self.ring.field.size ** place.degree()

    def reduce(self, value: Union[Poly, RatFunc]) -> Poly:
        if isinstance(value, RatFunc):
            num = self.reduce(value.num)
            den = self.reduce(value.den)
            return self.mul(num, self.inv(den))
        _, r = poly_divmod(value, self.place.poly, self.var)
        return r

    def add(self, a: Poly, b: Poly) -> Poly:
        return a + b

    def mul(self, a: Poly, b: Poly) -> Poly:
        return self.reduce(a * b)

    def inv(self, a: Poly) -> Poly:
        a = self.reduce(a)
        if a.is_zero():
            raise DivisionByZero("inverse of 0 in residue field")
        # extended Euclid in GF(2^k)[t]
        r0, r1 = self.place.poly, a
        s0, s1 = self.ring.zero, self.ring.one
        while not r1.is_zero():
            q, r = poly_divmod(r0, r1, self.var)
            r0, r1 = r1, r
            s0, s1 = s1, s0 + q * s1
        c = r0.constant_value().inv() if r0.is_constant() else None
        if c is None:
            raise AlgebraError("place polynomial is not irreducible")
        return self.reduce(s0 * c)

    def sqrt(self, a: Poly) -> Poly:
        """Unique square root: Frobenius is bijective on a finite field."""
        a = self.reduce(a)
        r = a
        # squaring (size/2) times inverts one squaring
        n = self.size.bit_length() - 2
        for _ in range(n):
            r = self.mul(r, r)
        return r

    def is_zero(self, a: Poly) -> bool:
        return self.reduce(a).is_zero()


# ---------------------------------------------------------------------------
# Text grammar
#
# variables [a-z], constants {0, 1, w}, operators + * ^, parentheses, and
# a single '/' at top level for rational functions. Example:
# "(t^24)/((t+1)^10*(t^2+t+1)^2)".

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z])|(\^)|(\+|-)|(\*)|(\()|(\))|(/))")


class _Parser:
    def __init__(self, text: str, ring_: PolyRing):
        self.text = text
        self.ring = ring_
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, self.pos)

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            if self.text[self.pos:].strip():
                self.error(f"unexpected character {self.text[self.pos]!r}")
            return None, None
        return m, m.lastindex

    def take(self):
        m, kind = self.peek()
        if m is not None:
            self.pos = m.end()
        return m, kind

    def parse_expr(self) -> Poly:
        acc = self.parse_term()
        while True:
            m, kind = self.peek()
            if kind == 4:  # '+' (and '-', identical in characteristic 2)
                self.take()
                acc = acc + self.parse_term()
            else:
                return acc

    def parse_term(self) -> Poly:
        acc = self.parse_factor()
        while True:
            m, kind = self.peek()
            if kind == 5:
                self.take()
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self) -> Poly:
        base = self.parse_atom()
        m, kind = self.peek()
        if kind == 3:
            self.take()
            m, kind = self.take()
            if kind != 1:
                self.error("integer exponent expected after '^'")
            return base ** int(m.group(1))
        return base

    def parse_atom(self) -> Poly:
        m, kind = self.take()
        if m is None:
            self.error("unexpected end of input")
        if kind == 1:
            n = int(m.group(1))
            if n in (0, 1):
                return self.ring.const(n)
            self.error(f"constant {n} not allowed (only 0, 1, w)")
        if kind == 2:
            name = m.group(2)
            if name == "w":
                if self.ring.field.k < 2:
                    self.error("constant w needs an extension field")
                return self.ring.const(self.ring.field.gen)
            return self.ring.var(name)
        if kind == 6:
            inner = self.parse_expr()
            m, kind = self.take()
            if kind != 7:
                self.error("')' expected")
            return inner
        self.error("operand expected")


def parse_poly(text: str, ring_: PolyRing) -> Poly:
    return ring_.parse(text)


def parse_ratfunc(text: str, ring_: PolyRing) -> RatFunc:
    # a single '/' at top level (parenthesis depth 0) splits num/den
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            if split is not None:
                raise ParseError("only one top-level '/' allowed", i)
            split = i
    if split is None:
        parser = _Parser(text, ring_)
        value = parser.parse_expr()
        m, _ = parser.peek()
        if m is not None:
            raise ParseError("trailing input", parser.pos)
        return RatFunc.of(value)
    num = parse_ratfunc(text[:split], ring_)
    den = parse_ratfunc(text[split + 1:], ring_)
    if not (num.is_polynomial() and den.is_polynomial()):
        raise ParseError("nested '/' not allowed", split)
    return RatFunc(num.num, den.num)
