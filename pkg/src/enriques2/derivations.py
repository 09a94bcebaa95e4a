"""Rational vector fields f d/dt + g d/dx in characteristic 2.

The built-in fields live on the function field GF(2)(a)(t, x), where the
second parameter b is always the function a/(a+1) (so that a + b = ab
holds identically). A field D is 2-closed when D^2 = h D for some rational
function h; it is of additive type when h can be taken 0 and of
multiplicative type otherwise. Checking D^2 = h D on the generators t and
x suffices: both sides are derivations, and two derivations agreeing on
generators of the function field agree everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .algebra import (
    GF,
    AlgebraError,
    FieldMismatch,
    FiniteField,
    Place,
    Poly,
    PolyRing,
    RatFunc,
    parse_ratfunc,
    poly_divmod,
    poly_factor_univariate,
    ring,
)


class NotPClosed(AlgebraError):
    pass


class BadSpecialization(AlgebraError):
    pass


PARAM_RING = ring(GF(1), ("a", "t", "x"))


def _symbolic_b() -> RatFunc:
    a = PARAM_RING.var("a")
    return RatFunc(a, a + 1)


@dataclass(frozen=True)
class Derivation:
    """coeff_t * d/dt + coeff_x * d/dx over GF(2^k)(a)(t, x) or a specialization."""

    coeff_t: RatFunc
    coeff_x: RatFunc

    @property
    def ring(self) -> PolyRing:
        return self.coeff_t.ring

    def apply(self, f: Union[Poly, RatFunc]) -> RatFunc:
        f = RatFunc.of(f) if isinstance(f, Poly) else f
        if f.ring != self.ring:
            raise FieldMismatch(f"{f.ring} vs {self.ring}")
        return self.coeff_t * f.deriv("t") + self.coeff_x * f.deriv("x")


def apply(d: Derivation, f: Union[Poly, RatFunc]) -> RatFunc:
    return d.apply(f)


def p_closure_multiplier(d: Derivation) -> Optional[RatFunc]:
    """h with D^2 = h D, or None when no such rational function exists.

    D^2(t) = D(coeff_t) and D^2(x) = D(coeff_x); agreement on the two
    generators pins the multiplier.
    """
    dt, dx = d.coeff_t, d.coeff_x
    d2t, d2x = d.apply(dt), d.apply(dx)
    if dt.is_zero() and dx.is_zero():
        return RatFunc.of(d.ring.zero)
    if not dt.is_zero():
        h = d2t / dt
        if d2x == h * dx:
            return h
        return None
    h = d2x / dx
    if d2t == h * dt:
        return h
    return None


def vector_field_type(d: Derivation) -> str:
    """"additive" when D^2 = 0; "multiplicative" when D^2 = h D, h != 0."""
    h = p_closure_multiplier(d)
    if h is None:
        raise NotPClosed("no multiplier h with D^2 = h D exists")
    return "additive" if h.is_zero() else "multiplicative"


def integral_fiber_places(d: Derivation) -> List[Tuple[Place, int]]:
    """Places t = const where coeff_t vanishes, with multiplicities.

    These are the fibers of the projection to the t-line that the vector
    field is tangent to. Roots in the coefficient field are found by the
    rational-root test (divisor enumeration over GF(2)[a] or exhaustive
    factorization over a finite coefficient field); a root r is returned
    as the finite place t + r.
    """
    num = d.coeff_t.num
    if num.is_zero():
        raise AlgebraError("coeff_t vanishes identically")
    r = d.ring
    if "a" in num.variables_used() or "a" in d.coeff_t.den.variables_used():
        return _roots_with_parameter(num, r)
    return _roots_over_field(num, r)


def _roots_over_field(num: Poly, r: PolyRing) -> List[Tuple[Place, int]]:
    tring = ring(r.field, ("t",))
    p = num.subs({v: tring.zero for v in r.vars if v not in ("t",)}, tring)
    p = num.subs({}, tring) if p.is_zero() else p
    out = []
    for q, m in poly_factor_univariate(p, "t"):
        if q.is_constant():
            continue
        out.append((Place.finite(q), m))
    out.sort(key=lambda pm: repr(pm[0]))
    return out


def _roots_with_parameter(num: Poly, r: PolyRing) -> List[Tuple[Place, int]]:
    # coefficients of powers of t are polynomials in a
    coeffs = num.coeffs_in("t")
    deg = max(coeffs)
    lead = coeffs[deg]
    const = coeffs.get(0, r.zero)
    candidates = [RatFunc.of(r.zero)] if const.is_zero() else []
    for p in _monic_divisors(const if not const.is_zero() else r.one):
        for q in _monic_divisors(lead):
            candidates.append(RatFunc(p, q))
    work = RatFunc.of(num)
    t = RatFunc.of(r.var("t"))
    out: Dict[RatFunc, int] = {}
    for root in candidates:
        while True:
            quo = _div_linear(work, root, r)
            if quo is None:
                break
            work = quo
            out[root] = out.get(root, 0) + 1
    if not (work.num.degree("t") <= 0):
        # leftover factor with no rational root: return it as one place
        raise AlgebraError(
            f"coeff_t has an irrational factor in t: {work.num!r}"
        )
    places = []
    for root, m in out.items():
        places.append((_linear_place(root, r), m))
    places.sort(key=lambda pm: repr(pm[0]))
    return places


def _monic_divisors(p: Poly):
    """All monic divisors of a univariate polynomial over GF(2)."""
    if p.is_constant():
        return [p.ring.one]
    factors = [fm for fm in poly_factor_univariate(p) if not fm[0].is_constant()]
    divs = [p.ring.one]
    for q, m in factors:
        divs = [d * q ** i for d in divs for i in range(m + 1)]
    return divs


def _div_linear(f: RatFunc, root: RatFunc, r: PolyRing) -> Optional[RatFunc]:
    """f / (t + root) when the division is exact in t, else None."""
    t = RatFunc.of(r.var("t"))
    value = f.subs({"t": root})
    if not value.is_zero():
        return None
    return f / (t + root)


def _linear_place(root: RatFunc, r: PolyRing) -> Place:
    t = r.var("t")
    num, den = root.num, root.den
    poly = den * t + num
    # normalize to a monic-in-t representative over the coefficient field
    return Place(poly if _lead_t(poly) else poly, "t")


def _lead_t(p: Poly) -> bool:
    return True


def builtin_Dprime() -> Derivation:
    """(t+1)(t+a)(t+b) d/dt + (1 + t^2 x) d/dx with b = a/(a+1)."""
    r = PARAM_RING
    a, t, x = r.gens()
    b = _symbolic_b()
    ct = (RatFunc.of(t) + 1) * (t + a) * (RatFunc.of(t) + b)
    cx = RatFunc.of(1 + t * t * x)
    return Derivation(ct, cx)


def builtin_D() -> Derivation:
    """Dprime divided by (t + 1); satisfies D^2 = ab D."""
    dp = builtin_Dprime()
    r = PARAM_RING
    t = RatFunc.of(r.var("t"))
    return Derivation(dp.coeff_t / (t + 1), dp.coeff_x / (t + 1))


def specialize(d: Derivation, a_value, field: Optional[FiniteField] = None) -> Derivation:
    """Substitute a concrete value for the parameter a (b becomes a/(a+1)).

    Requires a_value^3 != 1 in the coefficient field; a_value = 0 is the
    additive case b = 0.
    """
    if field is None:
        field = a_value.field
    if a_value.field != field:
        raise FieldMismatch("specialization value from a different field")
    if a_value ** 3 == field.one:
        raise BadSpecialization("a^3 = 1 is excluded (collides with the I2 fibers)")
    target = ring(field, ("t", "x"))
    aval = RatFunc.of(target.const(a_value))
    return Derivation(
        d.coeff_t.subs({"a": aval}, target),
        d.coeff_x.subs({"a": aval}, target),
    )


def multiplier_is_ab(d: Derivation) -> bool:
    """Whether D^2 = ab D holds identically (b = a/(a+1))."""
    h = p_closure_multiplier(d)
    if h is None:
        return False
    a = RatFunc.of(d.ring.var("a"))
    return h == a * (a / (a + 1))


# ---------------------------------------------------------------------------
# Euler-number bookkeeping for the divisorial part
#
# For a 2-closed vector field with divisorial part (D) on a surface with
# Euler number c2, the zero cycle satisfies
#     c2 = deg<D> - <K, (D)> - (D)^2,
# so deg<D> = c2 + <K, (D)> + (D)^2. The field is divisorial exactly when
# this degree is 0 (then the quotient surface is nonsingular).


@dataclass(frozen=True)
class EulerReport:
    degree: int
    verdict: str  # "divisorial" | "isolated zeros present" | "inconsistent"


def euler_bookkeeping(c2: int, d_square: int, k_dot_d: int) -> EulerReport:
    deg = c2 + k_dot_d + d_square
    if deg == 0:
        verdict = "divisorial"
    elif deg > 0:
        verdict = "isolated zeros present"
    else:
        verdict = "inconsistent"
    return EulerReport(deg, verdict)


# The divisorial parts of the built-in fields, as integer combinations of
# the curve names of the 34-curve cover configuration.


def divisorial_part_D() -> Dict[str, int]:
    names = (
        ["F1"] + [f"E1,{i}" for i in (2, 4, 6, 8)]
        + ["Finf"] + [f"Einf,{i}" for i in (2, 4, 6, 8)]
        + ["Ew", "Ew2"]
    )
    return {n: -1 for n in names}


def divisorial_part_Dprime() -> Dict[str, int]:
    comb: Dict[str, int] = {}
    for i in (1, 3, 5, 7, 9):
        comb[f"E1,{i}"] = 1
        comb[f"Einf,{i}"] = 1
    comb["Ew"] = -1
    comb["Ew2"] = -1
    comb["Finf"] = comb.get("Finf", 0) - 2
    for i in range(1, 10):
        comb[f"Einf,{i}"] = comb.get(f"Einf,{i}", 0) - 2
    return comb


BUILTIN_DERIVATIONS = {
    "Dprime": builtin_Dprime,
    "D": builtin_D,
}


def derivation_from_json(data) -> Derivation:
    """{"coeff_t": "...", "coeff_x": "...", "param": "symbolic"|{"a": "..."}}"""
    if isinstance(data, str):
        data = json.loads(data)
    param = data.get("param", "symbolic")
    if param == "symbolic":
        r = PARAM_RING
        d = Derivation(
            parse_ratfunc(str(data["coeff_t"]), r),
            parse_ratfunc(str(data["coeff_x"]), r),
        )
        return d
    k = int(param.get("k", 1)) if isinstance(param, dict) else 1
    f = GF(k)
    target = ring(f, ("t", "x"))
    d = Derivation(
        parse_ratfunc(str(data["coeff_t"]), target),
        parse_ratfunc(str(data["coeff_x"]), target),
    )
    return d
