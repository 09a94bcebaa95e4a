"""Characteristic-2 Weierstrass curves over GF(2^k) or GF(2^k)(t).

Long Weierstrass form y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with the
characteristic-2 invariant reductions

    b2 = a1^2, b4 = a1 a3, b6 = a3^2,
    b8 = a1^2 a6 + a1 a3 a4 + a2 a3^2 + a4^2,
    Delta = b2^2 b8 + b6^2 + b2 b4 b6, c4 = b2^2, j = c4^3 / Delta.

Includes the chord-tangent group law, fiber analysis place by place (node
versus cusp on the reduced curve), the inseparable base change s = t^2, and
Shioda-Tate bookkeeping.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional, Union

from .algebra import (
    GF,
    AlgebraError,
    FieldMismatch,
    Place,
    Poly,
    PolyRing,
    RatFunc,
    ResidueField,
    ZeroFunction,
    parse_ratfunc,
    places_of,
    poly_factor_univariate,
    ring,
    valuation,
)


class SingularModel(AlgebraError):
    pass


class NonMinimalModel(AlgebraError):
    pass


class PointNotOnCurve(AlgebraError):
    pass


class InconsistentData(AlgebraError):
    pass


INF = "infinity"  # the zero section / point at infinity


@dataclass(frozen=True)
class CurvePoint:
    x: RatFunc
    y: RatFunc

    def __repr__(self):
        return f"({self.x!r}, {self.y!r})"


PointLike = Union[CurvePoint, str]


class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over GF(2^k) or GF(2^k)(t)."""

    def __init__(self, ring_: PolyRing, a1, a2, a3, a4, a6):
        self.ring = ring_
        self.a1 = RatFunc.of(self._lift(a1))
        self.a2 = RatFunc.of(self._lift(a2))
        self.a3 = RatFunc.of(self._lift(a3))
        self.a4 = RatFunc.of(self._lift(a4))
        self.a6 = RatFunc.of(self._lift(a6))
        if self.discriminant().is_zero():
            raise SingularModel("discriminant vanishes identically")

    def _lift(self, v):
        if isinstance(v, (Poly, RatFunc)):
            return v
        return self.ring.const(v)

    @property
    def base_var(self) -> Optional[str]:
        return self.ring.vars[0] if self.ring.vars else None

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # -- invariants -----------------------------------------------------------

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.coefficients()
        b2 = a1 * a1
        b4 = a1 * a3
        b6 = a3 * a3
        b8 = a1 * a1 * a6 + a1 * a3 * a4 + a2 * a3 * a3 + a4 * a4
        return b2, b4, b6, b8

    def discriminant(self) -> RatFunc:
        b2, b4, b6, b8 = self.b_invariants()
        return b2 * b2 * b8 + b6 * b6 + b2 * b4 * b6

    def c4(self) -> RatFunc:
        b2, _, _, _ = self.b_invariants()
        return b2 * b2

    def j_invariant(self) -> RatFunc:
        return self.c4() ** 3 / self.discriminant()

    # -- points ---------------------------------------------------------------

    def point(self, x, y) -> CurvePoint:
        return CurvePoint(RatFunc.of(self._lift(x)), RatFunc.of(self._lift(y)))

    def equation_residual(self, p: CurvePoint) -> RatFunc:
        x, y = p.x, p.y
        a1, a2, a3, a4, a6 = self.coefficients()
        return y * y + a1 * x * y + a3 * y + x ** 3 + a2 * x * x + a4 * x + a6

    def on_curve(self, p: PointLike) -> bool:
        if p == INF:
            return True
        if p.x.ring != self.ring:
            raise FieldMismatch(f"point over {p.x.ring}, curve over {self.ring}")
        return self.equation_residual(p).is_zero()

    def negate(self, p: PointLike) -> PointLike:
        if p == INF:
            return INF
        return CurvePoint(p.x, p.y + self.a1 * p.x + self.a3)

    def add_points(self, p: PointLike, q: PointLike) -> PointLike:
        """Chord-tangent group law for the long form, characteristic 2."""
        for r in (p, q):
            if not self.on_curve(r):
                raise PointNotOnCurve(f"{r!r} does not satisfy the equation")
        if p == INF:
            return q
        if q == INF:
            return p
        a1, a2, a3, a4, a6 = self.coefficients()
        if p.x == q.x:
            if p.y + q.y + a1 * p.x + a3 == 0:
                return INF  # q = -p
            # doubling; the 2-torsion case was caught above
            den = a1 * p.x + a3
            lam = (p.x * p.x + a4 + a1 * p.y) / den
            nu = (p.x ** 3 + a4 * p.x + a3 * p.y) / den
        else:
            den = p.x + q.x
            lam = (p.y + q.y) / den
            nu = (p.y * q.x + q.y * p.x) / den
        x3 = lam * lam + a1 * lam + a2 + p.x + q.x
        y3 = (lam + a1) * x3 + nu + a3
        return CurvePoint(x3, y3)

    def mul_point(self, n: int, p: PointLike) -> PointLike:
        if n < 0:
            return self.mul_point(-n, self.negate(p))
        acc: PointLike = INF
        base = p
        while n:
            if n & 1:
                acc = self.add_points(acc, base)
            base = self.add_points(base, base)
            n >>= 1
        return acc

    def __repr__(self):
        a1, a2, a3, a4, a6 = self.coefficients()
        return (
            f"y^2 + ({a1!r})xy + ({a3!r})y = "
            f"x^3 + ({a2!r})x^2 + ({a4!r})x + ({a6!r})"
        )


def invariants(curve: WeierstrassCurve):
    """(b2, b4, b6, b8, Delta, j), raising SingularModel when Delta = 0."""
    b2, b4, b6, b8 = curve.b_invariants()
    delta = curve.discriminant()
    if delta.is_zero():
        raise SingularModel("discriminant vanishes")
    return b2, b4, b6, b8, delta, curve.j_invariant()


def on_curve(curve: WeierstrassCurve, p: PointLike) -> bool:
    return curve.on_curve(p)


def add_points(curve: WeierstrassCurve, p: PointLike, q: PointLike) -> PointLike:
    return curve.add_points(p, q)


def mul_point(curve: WeierstrassCurve, n: int, p: PointLike) -> PointLike:
    return curve.mul_point(n, p)


# ---------------------------------------------------------------------------
# Fiber analysis


@dataclass(frozen=True)
class FiberReport:
    place: Place
    v_delta: int
    v_j: int
    reduction: str               # "good" | "multiplicative" | "additive"
    kodaira: Optional[str] = None  # "I<n>" for multiplicative fibers

    def __repr__(self):
        label = self.kodaira or self.reduction
        return f"FiberReport({self.place!r}: v_delta={self.v_delta}, {label})"


def _integral_coefficients(curve: WeierstrassCurve, place: Place):
    coeffs = []
    for a in curve.coefficients():
        if valuation(a.den, place) if not a.den.is_constant() else 0:
            raise SingularModel(f"coefficient has a pole at {place!r}")
        coeffs.append(a)
    return coeffs


def fiber_report(curve: WeierstrassCurve, place: Place) -> FiberReport:
    """Reduction data of the fiber at one place of GF(2^k)(t)."""
    if curve.base_var is None:
        raise AlgebraError("fiber analysis needs a curve over a function field")
    if place.is_infinite():
        swapped, uvar = infinity_chart(curve)
        rep = fiber_report(swapped, Place.finite(swapped.ring.var(uvar)))
        return FiberReport(place, rep.v_delta, rep.v_j, rep.reduction, rep.kodaira)

    coeffs = _integral_coefficients(curve, place)
    delta = curve.discriminant()
    vd = valuation(delta, place)
    j = curve.j_invariant()
    vj = valuation(j, place) if not j.is_zero() else 0
    if vd == 0:
        return FiberReport(place, 0, vj, "good")

    c4 = curve.c4()
    if not c4.is_zero() and vd >= 12 and valuation(c4, place) >= 4:
        raise NonMinimalModel(
            f"model is non-minimal at {place!r}: v(Delta) = {vd} >= 12 "
            f"and v(c4) >= 4 permit a smaller model"
        )

    k = ResidueField(place)
    a1, a2, a3, a4, a6 = [k.reduce(c.num) if c.is_polynomial() else k.reduce(c) for c in coeffs]

    # locate the singular point of the reduced fiber
    if not a1.is_zero():
        x0 = k.mul(a3, k.inv(a1))
        y0 = k.mul(k.add(k.mul(x0, x0), a4), k.inv(a1))
    else:
        if not a3.is_zero():
            raise InconsistentData("v(Delta) > 0 but reduced fiber is smooth")
        x0 = k.sqrt(a4)
        y0 = k.sqrt(
            k.add(
                k.add(k.mul(k.mul(x0, x0), x0), k.mul(a2, k.mul(x0, x0))),
                k.add(k.mul(a4, x0), a6),
            )
        )
    _assert_singular_at(k, (a1, a2, a3, a4, a6), x0, y0)

    # quadratic leading form at the singular point: v^2 + a1 uv + (a2 + x0) u^2;
    # a node needs a nonzero uv cross term (rank-2 form), else it is a cusp
    if not a1.is_zero():
        return FiberReport(place, vd, vj, "multiplicative", f"I{vd}")
    return FiberReport(place, vd, vj, "additive")


def _assert_singular_at(k: ResidueField, coeffs, x0, y0):
    a1, a2, a3, a4, a6 = coeffs
    f = k.add(
        k.add(k.mul(y0, y0), k.mul(k.mul(a1, x0), y0)),
        k.add(
            k.mul(a3, y0),
            k.add(
                k.add(k.mul(k.mul(x0, x0), x0), k.mul(a2, k.mul(x0, x0))),
                k.add(k.mul(a4, x0), a6),
            ),
        ),
    )
    fx = k.add(k.mul(a1, y0), k.add(k.mul(x0, x0), a4))
    fy = k.add(k.mul(a1, x0), a3)
    if not (k.is_zero(f) and k.is_zero(fx) and k.is_zero(fy)):
        raise InconsistentData("claimed singular point fails the partials test")


def infinity_chart(curve: WeierstrassCurve):
    """Swap t -> 1/u and rescale (x, y) by (u^-2m, u^-3m) to clear poles.

    Returns (curve in u, name of u). The least feasible m is used; the new
    coefficients are a_i(1/u) * u^(w_i m) with weights (1, 2, 3, 4, 6).
    """
    var = curve.base_var
    uvar = "u" if var != "u" else "v"
    tring = curve.ring
    uring = ring(tring.field, (uvar,))
    u = uring.var(uvar)
    weights = (1, 2, 3, 4, 6)
    pole = []
    for a in curve.coefficients():
        if a.is_zero():
            pole.append(0)
        else:
            pole.append(a.num.degree(var) - a.den.degree(var))
    m = 0
    for w, p in zip(weights, pole):
        if p > 0:
            m = max(m, -(-p // w))  # ceil(p / w)
    inv_u = RatFunc(uring.one, u)
    new = []
    for w, a in zip(weights, curve.coefficients()):
        val = a.subs({var: inv_u}, uring) * RatFunc.of(u) ** (w * m)
        if not val.is_polynomial():
            raise NonMinimalModel("infinity chart rescaling failed to clear poles")
        new.append(val)
    return WeierstrassCurve(uring, *new), uvar


def place_analysis(curve: WeierstrassCurve):
    """Reports for every place with v(Delta) > 0, infinity included."""
    delta = curve.discriminant()
    var = curve.base_var
    if var is None:
        raise AlgebraError("place analysis needs a curve over a function field")
    reports = []
    for pl, v in places_of(delta, var):
        if pl.is_infinite() or v <= 0:
            continue
        reports.append(fiber_report(curve, pl))
    inf = fiber_report(curve, Place.infinity(var))
    if inf.v_delta > 0:
        reports.append(inf)
    return reports


def frobenius_base_change(curve: WeierstrassCurve, new_var: str = "t") -> WeierstrassCurve:
    """Substitute (old base variable) = new_var^2 in all coefficients."""
    old = curve.base_var
    if old is None:
        raise AlgebraError("base change needs a curve over a function field")
    tring = ring(curve.ring.field, (new_var,))
    sq = RatFunc.of(tring.var(new_var) ** 2)
    coeffs = [a.subs({old: sq}, tring) for a in curve.coefficients()]
    return WeierstrassCurve(tring, *coeffs)


def half_fiber_j(avar: str = "a", k: int = 1) -> RatFunc:
    """j of the degree-2 inseparable image of the fiber at t = a.

    Equals j(E_a)^2 where j(E_a) = a^24 / ((a+1)^10 (a^2+a+1)^2); the result
    is asserted to be a non-constant function of a.
    """
    aring = ring(GF(k), (avar,))
    a = aring.var(avar)
    ja = RatFunc(a ** 24, (a + 1) ** 10 * (a * a + a + 1) ** 2)
    out = ja * ja
    if out.is_constant():
        raise InconsistentData("half-fiber j-invariant unexpectedly constant")
    return out


# ---------------------------------------------------------------------------
# Shioda-Tate bookkeeping


_COMPONENTS = {"III": 2, "IV": 3, "II*": 9, "III*": 8, "IV*": 7}
_DISC = {"III": 2, "IV": 3, "II*": 1, "III*": 2, "IV*": 3}
_IN = re.compile(r"^I(\d+)(\*?)$")


def kodaira_component_count(label: str) -> int:
    m = _IN.match(label)
    if m:
        n = int(m.group(1))
        return n + 5 if m.group(2) else max(n, 1)
    if label in _COMPONENTS:
        return _COMPONENTS[label]
    raise InconsistentData(f"unknown Kodaira label {label!r}")


def kodaira_disc_factor(label: str) -> int:
    m = _IN.match(label)
    if m:
        return 4 if m.group(2) else max(int(m.group(1)), 1)
    if label in _DISC:
        return _DISC[label]
    raise InconsistentData(f"unknown Kodaira label {label!r}")


@dataclass(frozen=True)
class ShiodaTateReport:
    picard_number: int
    fiber_contribution: int
    mw_rank: int
    torsion_order: int
    torsion_consistent: bool


def shioda_tate_check(
    fibers, section_count: int, ambient: str = "K3"
) -> ShiodaTateReport:
    """rho = 2 + sum(m_v - 1) + rank(MW) with exact component counts.

    ``fibers`` is a list of Kodaira labels or FiberReports; ``ambient`` is
    "K3" (rho = 22, supersingular), "rational" (rho = 10) or an integer rho.
    The stated torsion order is consistent when the implied MW rank is >= 0
    and its square divides the product of the fiber discriminant factors.
    """
    if ambient == "K3":
        rho = 22
    elif ambient == "rational":
        rho = 10
    elif isinstance(ambient, int):
        rho = ambient
    else:
        raise InconsistentData(f"unknown ambient {ambient!r}")
    labels = []
    for f in fibers:
        if isinstance(f, FiberReport):
            if f.kodaira is None:
                raise InconsistentData(f"fiber at {f.place!r} carries no Kodaira label")
            labels.append(f.kodaira)
        else:
            labels.append(f)
    contrib = sum(kodaira_component_count(l) - 1 for l in labels)
    mw_rank = rho - 2 - contrib
    if mw_rank < 0:
        raise InconsistentData(
            f"fiber components exceed rho: 2 + {contrib} > {rho}"
        )
    disc = 1
    for l in labels:
        disc *= kodaira_disc_factor(l)
    consistent = section_count >= 1 and disc % (section_count * section_count) == 0
    return ShiodaTateReport(rho, contrib, mw_rank, section_count, consistent)


# ---------------------------------------------------------------------------
# Built-in curves and the JSON format


def _f4t() -> PolyRing:
    return ring(GF(2), ("t",))


def curve_E() -> WeierstrassCurve:
    """The supersingular curve y^2 + y = x^3 + x^2 over GF(4)."""
    r = ring(GF(2), ())
    return WeierstrassCurve(r, 0, 1, 1, 0, 0)


def curve_R() -> WeierstrassCurve:
    """The rational elliptic surface y^2 + sxy + y = x^3 + x^2 + s over GF(4)(s)."""
    r = ring(GF(2), ("s",))
    s = r.var("s")
    return WeierstrassCurve(r, s, 1, 1, 0, s)


def curve_Ystar() -> WeierstrassCurve:
    """The K3 surface y^2 + t^2 xy + y = x^3 + x^2 + t^2 over GF(4)(t)."""
    r = _f4t()
    t = r.var("t")
    return WeierstrassCurve(r, t * t, 1, 1, 0, t * t)


def curve_kummerEF(k: int = 3) -> WeierstrassCurve:
    """An ordinary curve y^2 + xy = x^3 + bx with b a generator of GF(2^k)."""
    r = ring(GF(k), ())
    b = r.const(r.field.gen)
    return WeierstrassCurve(r, 1, 0, 0, b, 0)


def e_points():
    """The five GF(4)-rational points of curve_E, in cyclic order."""
    c = curve_E()
    one = c.ring.one
    zero = c.ring.zero
    return [
        INF,
        c.point(one, zero),
        c.point(zero, zero),
        c.point(zero, one),
        c.point(one, one),
    ]


def ystar_sections() -> dict:
    """The ten sections of curve_Ystar keyed by name (s0..s4, m0..m4)."""
    c = curve_Ystar()
    r = c.ring
    t = RatFunc.of(r.var("t"))
    one = RatFunc.of(r.one)

    def pt(x, y):
        return CurvePoint(x, y)

    sections = {
        "s0": INF,
        "s1": pt(one, t ** 2),
        "s2": pt(t ** 2, t ** 2),
        "s3": pt(t ** 2, t ** 4 + t ** 2 + 1),
        "s4": pt(one, one),
        "m0": pt(1 / t ** 2, 1 / t ** 3 + 1 / t ** 2 + t),
        "m1": pt(t ** 3 + t + 1, t ** 4 + t ** 3 + t),
        "m2": pt(t, t ** 3),
        "m3": pt(t, one),
        "m4": pt(t ** 3 + t + 1, t ** 5 + t ** 4 + t ** 2 + t + 1),
    }
    for name, p in sections.items():
        if not c.on_curve(p):
            raise PointNotOnCurve(f"built-in section {name} fails the equation")
    return sections


BUILTIN_CURVES = {
    "E": curve_E,
    "R": curve_R,
    "Ystar": curve_Ystar,
    "kummerEF": curve_kummerEF,
}


def curve_from_json(data) -> WeierstrassCurve:
    """{"field": {"k": 1|2, "base": "t"|"none"}, "a1": "...", ...}"""
    if isinstance(data, str):
        data = json.loads(data)
    fld = data["field"]
    k = int(fld["k"])
    base = fld.get("base", "t")
    vars_ = () if base in (None, "none") else (str(base),)
    r = ring(GF(k), vars_)
    coeffs = [parse_ratfunc(str(data[key]), r) for key in ("a1", "a2", "a3", "a4", "a6")]
    return WeierstrassCurve(r, *coeffs)


def curve_to_json(curve: WeierstrassCurve) -> dict:
    base = curve.base_var
    return {
        "field": {"k": curve.ring.field.k, "base": base if base else "none"},
        "a1": repr(curve.a1),
        "a2": repr(curve.a2),
        "a3": repr(curve.a3),
        "a4": repr(curve.a4),
        "a6": repr(curve.a6),
    }
