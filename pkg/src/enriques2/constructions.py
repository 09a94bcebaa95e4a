"""Symbolic verification of the explicit surface constructions.

Each verifier returns a list of IdentityCheckReport records; a check passes
exactly when its residual polynomial is zero (or when an exhaustive search
finds precisely the claimed objects). Everything is computed over GF(2) or
GF(4), or over polynomial rings with the needed parameters adjoined.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import GF, FieldElement, Poly, PolyRing, RatFunc, ring
from .dynkin import DualGraph, automorphism_count, build_petersen, graph_isomorphic
from .weierstrass import curve_Ystar, ystar_sections, INF


@dataclass(frozen=True)
class IdentityCheckReport:
    check_id: str
    status: str                 # "pass" | "fail"
    details: str
    residual: Optional[str] = None  # printed residual when failing

    def __repr__(self):
        return f"[{self.status}] {self.check_id}: {self.details}"


def _report(check_id: str, ok: bool, details: str, residual=None) -> IdentityCheckReport:
    return IdentityCheckReport(
        check_id,
        "pass" if ok else "fail",
        details,
        None if ok or residual is None else repr(residual),
    )


# ---------------------------------------------------------------------------
# Small helpers


def projective_points(field, dim: int):
    """Normalized representatives of P^dim over a finite field."""
    elems = list(field.elements())
    out = []
    for first in range(dim + 1):
        # first nonzero coordinate at position `first`, scaled to 1
        for tail in product(elems, repeat=dim - first):
            out.append(
                tuple([field.zero] * first + [field.one] + list(tail))
            )
    return out


def _eval_poly(p: Poly, values: Sequence[FieldElement]) -> FieldElement:
    field = values[0].field if values else p.ring.field
    acc = field.zero
    for e, c in p.terms.items():
        if c.field != field:
            c = field.element(c.bits)  # prime-field coefficients embed as bits
        term = c
        for val, d in zip(values, e):
            if d:
                term = term * val ** d
        acc = acc + term
    return acc


def quadratic_part(p: Poly) -> Poly:
    return Poly(p.ring, {e: c for e, c in p.terms.items() if sum(e) == 2})


def nondegenerate_quadratic_singularity(p: Poly, variables: Sequence[str]) -> Tuple[bool, str]:
    """Char-2-safe test that p = 0 has an A1 point at the origin.

    The origin must be a singular point, and the quadratic leading form
    must be nondegenerate: its polar bilinear form has rank 2, and in an
    odd number of variables the radical direction must take a nonzero
    value (no Hessian determinant exists in characteristic 2).
    """
    field = p.ring.field
    n = len(variables)
    zero_pt = [field.zero] * len(p.ring.vars)
    if _eval_poly(p, zero_pt):
        return False, "origin not on the hypersurface"
    for v in variables:
        if _eval_poly(p.deriv(v), zero_pt):
            return False, f"partial in {v} does not vanish at the origin"
    q = quadratic_part(p)
    bil = [[field.zero] * n for _ in range(n)]
    for e, c in q.terms.items():
        support = [i for i, d in enumerate(e) if d]
        if len(support) == 2:
            i, j = support
            vi = p.ring.vars[i]
            vj = p.ring.vars[j]
            a, b = variables.index(vi), variables.index(vj)
            bil[a][b] = bil[a][b] + c
            bil[b][a] = bil[b][a] + c
    rank, kernel = _field_rank_kernel(bil, field)
    if rank != 2:
        return False, f"polar form has rank {rank}, expected 2"
    if n == 2:
        return True, "rank-2 polar form (node)"
    if n == 3:
        if len(kernel) != 1:
            return False, "radical is not a line"
        vec = kernel[0]
        values = {v: vec[i] for i, v in enumerate(variables)}
        pt = [values.get(v, field.zero) for v in p.ring.vars]
        if not _eval_poly(q, pt):
            return False, "quadratic form vanishes on its radical"
        return True, "rank-2 polar form with anisotropic radical (A1)"
    return False, f"{n} variables unsupported"


def _field_rank_kernel(matrix, field):
    """Rank and kernel basis of a matrix over GF(2^k), by elimination."""
    m = [row[:] for row in matrix]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x + f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    kernel = []
    free = [c for c in range(n_cols) if c not in pivots]
    for fc in free:
        vec = [field.zero] * n_cols
        vec[fc] = field.one
        for i, pc in enumerate(pivots):
            vec[pc] = m[i][fc]
        kernel.append(vec)
    return r, kernel


def ideal_contains(target: Poly, generators: Sequence[Poly], max_degree: int) -> bool:
    """Bounded-degree ideal membership by linear algebra over the field.

    Spans all monomial multiples m * g with deg(m * g) <= max_degree and
    tests the target against the span; sufficient for the small local
    singularity certificates used here.
    """
    ring_ = target.ring
    field = ring_.field
    nvars = len(ring_.vars)

    def monomials_up_to(d):
        def rec(i, remaining):
            if i == nvars:
                yield ()
                return
            for e in range(remaining + 1):
                for rest in rec(i + 1, remaining - e):
                    yield (e,) + rest
        for e in rec(0, d):
            yield e

    vectors = []
    for g in generators:
        dg = g.degree()
        for mono in monomials_up_to(max_degree - dg):
            shifted = {}
            for e, c in g.terms.items():
                ne = tuple(a + b for a, b in zip(e, mono))
                shifted[ne] = shifted.get(ne, field.zero) + c
            vectors.append({e: c for e, c in shifted.items() if c})
    basis: Dict[tuple, dict] = {}

    def reduce_vec(vec):
        vec = dict(vec)
        while vec:
            lead = max(vec)
            if lead in basis:
                f = vec[lead]
                for e, c in basis[lead].items():
                    s = vec.get(e, field.zero) + f * c
                    if s:
                        vec[e] = s
                    else:
                        vec.pop(e, None)
            else:
                inv = vec[lead].inv()
                basis[lead] = {e: c * inv for e, c in vec.items()}
                return None
        return {}

    for vec in vectors:
        reduce_vec(vec)
    # now reduce target against the basis without inserting
    vec = dict(target.terms)
    while vec:
        lead = max(vec)
        if lead not in basis:
            return False
        f = vec[lead]
        for e, c in basis[lead].items():
            s = vec.get(e, field.zero) + f * c
            if s:
                vec[e] = s
            else:
                vec.pop(e, None)
    return True


def double_root_point(binary_form: Poly, svar: str, tvar: str):
    """The unique double root (s0 : t0) of a rank-1 binary quadratic form.

    In characteristic 2 a binary form a s^2 + b st + c t^2 is a perfect
    square iff b = 0; the root of a s^2 + c t^2 = (sqrt(a) s + sqrt(c) t)^2
    is (sqrt(c) : sqrt(a)). Returns None if the form is not a square.
    """
    coeffs = {2: binary_form.ring.field.zero,
              1: binary_form.ring.field.zero,
              0: binary_form.ring.field.zero}
    for e, c in binary_form.terms.items():
        ds = e[binary_form.ring.vars.index(svar)]
        dt = e[binary_form.ring.vars.index(tvar)]
        if ds + dt != 2:
            return None
        coeffs[ds] = coeffs[ds] + c
    if coeffs[1]:
        return None
    return coeffs[0].sqrt(), coeffs[2].sqrt()  # (s0, t0)


# ---------------------------------------------------------------------------
# First quadric construction: pencil through a quadrangle


def verify_type_I() -> List[IdentityCheckReport]:
    reports = []
    F2 = GF(1)
    r = ring(F2, ("x", "y", "z", "u"))  # x0, x1, x2, x3 in the grammar letters
    x0, x1, x2, x3 = r.gens()
    quadric = x0 * x3 + x1 * x2

    # (a) the Segre map lands on the quadric
    rs = ring(F2, ("a", "b", "c", "d"))  # u0, u1, v0, v1
    u0, u1, v0, v1 = rs.gens()
    seg = {"x": u0 * v0, "y": u0 * v1, "z": u1 * v0, "u": u1 * v1}
    residual = quadric.subs(seg, rs)
    reports.append(_report(
        "typeI.segre", residual.is_zero(),
        "product-of-lines parametrization satisfies x0*x3 + x1*x2 = 0",
        residual,
    ))

    # (b) the swap involution fixes exactly (1,1,1,1) on the quadric
    ok = True
    detail = []
    for k in (1, 2, 3, 4):
        field = GF(k)
        fixed = []
        for pt in projective_points(field, 3):
            if _eval_poly(quadric, pt):
                continue
            image = (pt[3], pt[2], pt[1], pt[0])
            if _proj_eq(image, pt, field):
                fixed.append(pt)
        want = (field.one,) * 4
        if fixed != [want]:
            ok = False
        detail.append(f"GF(2^{k}): {len(fixed)} fixed point(s)")
    # symbolic: on the fixed plane x3 = x0, x2 = x1 the quadric restricts to
    # the perfect square (x0 + x1)^2, whose unique root is the diagonal point
    restricted = quadric.subs({"u": x0, "z": x1}, r)
    square_ok = restricted == (x0 + x1) ** 2
    reports.append(_report(
        "typeI.involution-fixed-point", ok and square_ok,
        "swap fixes exactly (1,1,1,1): " + "; ".join(detail)
        + "; restriction to the fixed plane is (x0+x1)^2",
    ))

    # (c) degenerate pencil members factor as claimed
    q1, q2 = x0 + x3, x1 + x2
    member_10 = q1 * q2  # lambda = 1, mu = 0
    reports.append(_report(
        "typeI.pencil-member-(1,0)", member_10 == q1 * q2,
        "the (1,0) member is the union of the two conics x0+x3 = 0, x1+x2 = 0",
    ))
    member_01 = quadric  # via x0*x3 = quadric + x1*x2 ... on Q it is x0*x3
    quadrangle = (x0 * x3).subs(seg, rs)
    reports.append(_report(
        "typeI.pencil-member-(0,1)", quadrangle == u0 * v0 * u1 * v1,
        "the (0,1) member x0*x3 pulls back to u0*u1*v0*v1: the four lines of "
        "the quadrangle",
        quadrangle + u0 * v0 * u1 * v1,
    ))

    # (d) the two conics meet every pencil member doubly at quadrangle vertices
    rp = ring(F2, ("s", "t", "l", "m"))
    s, t, l, m = rp.gens()
    # conic x0+x3 = 0 on the quadric: (st, s^2, t^2, st)
    conic1 = {"x": s * t, "y": s * s, "z": t * t, "u": s * t}
    # conic x1+x2 = 0 on the quadric: (s^2, st, st, t^2)
    conic2 = {"x": s * s, "y": s * t, "z": s * t, "u": t * t}
    rpen = ring(F2, ("x", "y", "z", "u", "l", "m"))
    px0, px1, px2, px3, pl, pm = rpen.gens()
    pencil = pl * (px0 + px3) * (px1 + px2) + pm * (px0 * px3)
    checks = []
    for name, par, vertices in (
        ("conic1", conic1, {(0, 1): "(0,0,1,0)", (1, 0): "(0,1,0,0)"}),
        ("conic2", conic2, {(0, 1): "(0,0,0,1)", (1, 0): "(1,0,0,0)"}),
    ):
        restr = pencil.subs(par, rp)
        # restriction should be m * s^2 t^2: double roots at s = 0 and t = 0
        want = m * s ** 2 * t ** 2
        checks.append(restr == want)
    reports.append(_report(
        "typeI.conic-tangency", all(checks),
        "each conic meets every pencil member in m*s^2*t^2: double points at "
        "two quadrangle vertices",
    ))

    # (e) the quadrangle-vertex singularity z^2 + uvz + uv(u+v) is isolated
    rl = ring(F2, ("u", "v", "z"))
    u, v, z = rl.gens()
    f = z * z + u * v * z + u * v * (u + v)
    gens = [f, f.deriv("u"), f.deriv("v"), f.deriv("z")]
    all_deg4 = []
    for eu in range(5):
        for ev in range(5 - eu):
            ez = 4 - eu - ev
            all_deg4.append(u ** eu * v ** ev * z ** ez)
    contained = all(ideal_contains(mono, gens, 6) for mono in all_deg4)
    reports.append(_report(
        "typeI.vertex-singularity-isolated", contained,
        "the Jacobian ideal of z^2 + uvz + uv(u+v) contains every degree-4 "
        "monomial (fourth power of the maximal ideal)",
    ))
    return reports


def _proj_eq(p, q, field):
    # projective equality over a field: p = lambda q
    lam = None
    for a, b in zip(p, q):
        if bool(a) != bool(b):
            return False
        if a:
            cand = a / b
            if lam is None:
                lam = cand
            elif lam != cand:
                return False
    return lam is not None


# ---------------------------------------------------------------------------
# Second quadric construction: pencil tangent to the quadrangle


def verify_type_II() -> List[IdentityCheckReport]:
    reports = []
    F4 = GF(2)
    r = ring(F4, ("x", "y", "z", "u", "l", "m"))
    x0, x1, x2, x3, l, m = r.gens()
    pencil = l * (x0 + x1 + x2 + x3) ** 2 + m * x0 * x3

    # (a) tangency to the quadrangle at the four stated points
    rp = ring(F4, ("s", "t", "l", "m"))
    s, t, lp, mp = rp.gens()
    lines = {
        "x0=x1=0": ({"x": rp.zero, "y": rp.zero, "z": s, "u": t}, "(0,0,1,1)"),
        "x0=x2=0": ({"x": rp.zero, "y": s, "z": rp.zero, "u": t}, "(0,1,0,1)"),
        "x1=x3=0": ({"x": s, "y": rp.zero, "z": t, "u": rp.zero}, "(1,0,1,0)"),
        "x2=x3=0": ({"x": s, "y": t, "z": rp.zero, "u": rp.zero}, "(1,1,0,0)"),
    }
    ok = True
    details = []
    for name, (par, claimed) in lines.items():
        restr = pencil.subs(par, rp)
        # factor out the pencil parameter: restriction is l * (binary form)
        quo = _strip_parameter(restr, rp, "l")
        if quo is None:
            ok = False
            details.append(f"{name}: unexpected m-dependence")
            continue
        root = double_root_point(quo, "s", "t")
        if root is None:
            ok = False
            details.append(f"{name}: restriction is not a perfect square")
            continue
        s0, t0 = root
        details.append(f"{name}: double point at s:t = ({s0!r}:{t0!r})")
        if (s0, t0) != (rp.field.one, rp.field.one):
            ok = False  # the stated tangency points all have s = t
    reports.append(_report(
        "typeII.quadrangle-tangency", ok,
        "the pencil restricts to l*(s+t)^2 on each quadrangle line; tangent "
        "points " + "; ".join(details),
    ))

    # (b) the coordinate change splitting the local equation over GF(4)
    rl = ring(F4, ("u", "v", "z"))
    u, v, z = rl.gens()
    w = rl.const(F4.gen)
    w2 = rl.const(F4.gen ** 2)
    local = z * z + u * z + u * (u + v * v)
    product = (z + w * u + v * v) * (z + w2 * u + v * v)
    residual = product + v ** 4 + local
    reports.append(_report(
        "typeII.a3-normal-form", residual.is_zero(),
        "(z+wu+v^2)(z+w^2u+v^2) + v^4 equals z^2+uz+u(u+v^2): in the new "
        "coordinates the surface is ts = v^4, a rational double point "
        "of type A3",
        residual,
    ))

    # (c) the second local form has a nondegenerate quadratic singularity
    a1_form = z * z + u * v * z + u * v
    ok, why = nondegenerate_quadratic_singularity(a1_form, ("u", "v", "z"))
    reports.append(_report(
        "typeII.a1-normal-form", ok,
        f"z^2 + uvz + uv has an A1 point at the origin: {why}",
    ))
    return reports


def _strip_parameter(p: Poly, r: PolyRing, param: str) -> Optional[Poly]:
    coeffs = p.coeffs_in(param)
    if set(coeffs) == {1}:
        return coeffs[1]
    if set(coeffs) == {0} and not p.is_zero():
        return coeffs[0]
    return None


# ---------------------------------------------------------------------------
# The quintic-symmetric surface


def _sigma(k: int, ring_: PolyRing) -> Poly:
    gens = ring_.gens()
    acc = ring_.zero
    for comb in combinations(gens, k):
        term = ring_.one
        for g in comb:
            term = term * g
        acc = acc + term
    return acc


def verify_type_VI() -> List[IdentityCheckReport]:
    reports = []
    F2 = GF(1)
    r5 = ring(F2, ("a", "b", "c", "d", "e"))  # x1..x5
    s1 = _sigma(1, r5)
    s4 = _sigma(4, r5)
    names = r5.vars
    field = F2

    def point(zeros):
        return tuple(field.zero if v in zeros else field.one for v in names)

    triples = list(combinations(range(5), 3))

    # (a) the ten coordinate points are nodes
    all_ok = True
    node_ok = True
    for tri in triples:
        zeros = {names[i] for i in tri}
        pt = point(zeros)
        on = not _eval_poly(s1, pt) and not _eval_poly(s4, pt)
        grad1 = [_eval_poly(s1.deriv(v), pt) for v in names]
        grad4 = [_eval_poly(s4.deriv(v), pt) for v in names]
        rank, _ = _field_rank_kernel([grad1, grad4], field)
        if not on or rank >= 2:
            all_ok = False
        if not _node_at_coordinate_point(r5, tri):
            node_ok = False
    reports.append(_report(
        "typeVI.ten-nodes", all_ok and node_ok,
        "all ten coordinate points satisfy both equations, the Jacobian "
        "drops to rank 1, and the local quadratic form is a node",
    ))

    # (b) the ten lines lie on the surface
    rl = ring(F2, ("p", "q"))
    p, q = rl.gens()
    lines_ok = True
    for pair in combinations(range(5), 2):
        others = [i for i in range(5) if i not in pair]
        values = {names[i]: rl.zero for i in pair}
        values[names[others[0]]] = p
        values[names[others[1]]] = q
        values[names[others[2]]] = p + q  # solves the hyperplane equation
        if not s4.subs(values, rl).is_zero() or not s1.subs(values, rl).is_zero():
            lines_ok = False
    reports.append(_report(
        "typeVI.ten-lines", lines_ok,
        "every coordinate line x_i = x_j = 0 (inside the hyperplane) lies "
        "on the quartic",
    ))

    # (c) the reciprocal involution fixes exactly the diagonal point
    F4 = GF(2)
    fixed = []
    for pt in projective_points(F4, 4):
        if not all(pt):
            continue
        image = tuple(x.inv() for x in pt)
        if _proj_eq(image, pt, F4):
            fixed.append(pt)
    exhaustive_ok = fixed == [(F4.one,) * 5]
    # symbolic: x_i^-1 / x_j^-1 = x_i / x_j forces (x_i + x_j)^2 = 0
    r2 = ring(F2, ("p", "q"))
    p, q = r2.gens()
    identity_ok = (q * q + p * p) == (p + q) ** 2
    diag = (field.one,) * 5
    off_surface = bool(_eval_poly(s1, diag))  # the diagonal misses the surface
    reports.append(_report(
        "typeVI.reciprocal-fixed-point", exhaustive_ok and identity_ok and off_surface,
        "the reciprocal map fixes only (1,1,1,1,1) among points with all "
        "coordinates nonzero (GF(4) exhaustive; cross-multiplied fixed-point "
        "equations are perfect squares), and that point misses the surface, "
        "so the induced involution is fixed point free",
    ))

    # (d) hyperplane sections split as double line plus conic
    split_ok = True
    for pair in combinations(range(5), 2):
        i, j = pair
        others = [k for k in range(5) if k not in pair]
        ro = ring(F2, ("p", "q", "g"))  # x_i (= x_j), x_k, x_l; x_m from s1
        p, q, g = ro.gens()
        values = {
            names[i]: p, names[j]: p,
            names[others[0]]: q, names[others[1]]: g,
            names[others[2]]: q + g,  # s1 = 0
        }
        restr = s4.subs(values, ro)
        conic = q * q + q * g + g * g  # x_k x_l + x_k x_m + x_l x_m after s1
        if restr != p * p * conic:
            split_ok = False
    reports.append(_report(
        "typeVI.hyperplane-splitting", split_ok,
        "on x_i + x_j = 0 the quartic becomes x_i^2 * (x_k x_l + x_k x_m + "
        "x_l x_m): the double line plus a conic through the opposite node",
    ))

    # (e) the incidence graph of the ten halved curves is the Petersen graph
    pair_names = list(combinations(range(5), 2))
    verts = ["".join(str(i + 1) for i in pr) for pr in pair_names]
    edges = []
    for aidx in range(len(pair_names)):
        for bidx in range(aidx + 1, len(pair_names)):
            pa, pb = pair_names[aidx], pair_names[bidx]
            # the line of pa meets the node swapped into the partner of pb:
            # node p_comp(pb) lies on line pa iff pa's zero coords are among
            # comp(pb)'s zeros, i.e. the pairs are disjoint
            comp_b = tuple(i for i in range(5) if i not in pb)
            node_pt = point({names[i] for i in comp_b})
            on_line = all(node_pt[i] == field.zero for i in pa)
            if on_line:
                edges.append((verts[aidx], verts[bidx], 1))
    g = DualGraph.build(verts, edges)
    pet = build_petersen()
    iso = graph_isomorphic(g, pet)
    aut = automorphism_count(g)
    reports.append(_report(
        "typeVI.petersen-incidence", iso and aut == 120,
        f"computed incidence graph is the Petersen graph (automorphisms: {aut})",
    ))
    return reports


def _node_at_coordinate_point(r5: PolyRing, tri) -> bool:
    """A1 certification at the point whose coordinates in ``tri`` vanish."""
    names = r5.vars
    others = [i for i in range(5) if i not in tri]
    rloc = ring(GF(1), ("p", "q", "g"))
    p, q, g = rloc.gens()
    # chart: first nonzero coordinate = 1; eliminate the second via s1
    values = {names[others[0]]: rloc.one}
    values[names[tri[0]]] = p
    values[names[tri[1]]] = q
    values[names[tri[2]]] = g
    values[names[others[1]]] = rloc.one + p + q + g  # s1 = 0
    s4 = _sigma(4, r5)
    local = s4.subs(values, rloc)
    ok, _ = nondegenerate_quadratic_singularity(local, ("p", "q", "g"))
    return ok


# ---------------------------------------------------------------------------
# Kummer-surface identities


def verify_kummer_appendix() -> List[IdentityCheckReport]:
    reports = []
    F2 = GF(1)
    # variables: x, y (= x'), z, plus curve parameters b, c (= the second
    # curve's coefficient)
    r = ring(F2, ("x", "y", "z", "b", "c"))
    x, xp, z, b, c = r.gens()
    kummer = (
        z * z + x * xp * z
        + x * x * (xp ** 3 + c * xp) + xp * xp * (x ** 3 + b * x)
    )

    # (a) the quadric substitution reproduces the Kummer equation
    rq = ring(F2, ("a", "d", "e", "f", "z", "b", "c"))  # u0,u1,v0,v1,z,b,c
    u0, u1, v0, v1, zq, bq, cq = rq.gens()
    seg = {"x0": u0 * v0, "x1": u0 * v1, "x2": u1 * v0, "x3": u1 * v1}
    artin_schreier = (
        zq * zq + seg["x0"] * seg["x3"] * zq
        + seg["x0"] * seg["x3"] * (
            seg["x1"] * seg["x3"] + cq * seg["x0"] * seg["x2"]
            + seg["x2"] * seg["x3"] + bq * seg["x0"] * seg["x1"]
        )
    )
    special = artin_schreier.subs({"a": rq.one, "e": rq.one}, rq)  # u0 = v0 = 1
    target = kummer.subs(
        {"x": rq.var("d"), "y": rq.var("f"), "z": rq.var("z"),
         "b": rq.var("b"), "c": rq.var("c")}, rq
    )
    residual = special + target
    reports.append(_report(
        "kummer.quadric-substitution", residual.is_zero(),
        "substituting the product-of-lines parametrization into the double "
        "cover of the quadric and setting u0 = v0 = 1 gives exactly "
        "z^2 + xx'z = x^2(x'^3 + c x') + x'^2(x^3 + b x)",
        residual,
    ))

    # (b) the free involution preserves the equation after clearing poles
    sx = RatFunc(r.parse("b"), x)
    sxp = RatFunc(r.parse("c"), xp)
    sz = (b * c * z + b * c * x * xp) / (x * x * xp * xp)
    fk = RatFunc.of(kummer)
    image = fk.subs({"x": sx, "y": sxp, "z": sz})
    cleared = image * RatFunc.of(x ** 4 * xp ** 4)
    want = RatFunc.of(kummer * b * b * c * c)
    residual_b = cleared + want
    reports.append(_report(
        "kummer.free-involution", residual_b.is_zero(),
        "(x, x', z) -> (b/x, c/x', bc z/x^2x'^2 + bc/xx') maps the equation "
        "to b^2 c^2 / (x^4 x'^4) times itself",
        residual_b,
    ))

    # (c) the numerically trivial involution preserves the equation
    shifted = kummer.subs({"z": z + x * xp}, r)
    residual_c = shifted + kummer
    reports.append(_report(
        "kummer.z-shift-involution", residual_c.is_zero(),
        "(x, x', z + xx') leaves the equation unchanged: the z-terms expand "
        "to (z + xx')^2 + xx'(z + xx') = z^2 + xx'z",
        residual_c,
    ))

    # (d) the twisted swap on the quadric has the expected isolated fixed point
    # In square-root coordinates b = B^2, c = C^2 the map
    # (x0,x1,x2,x3) -> (x3, C^2 x2, B^2 x1, B^2C^2 x0) fixes (1, C, B, BC).
    rb = ring(F2, ("s", "u", "p", "q"))  # line params s,u; p = B, q = C
    s, u, B, C = rb.gens()
    pt = (rb.one, C, B, B * C)
    image = (pt[3], C * C * pt[2], B * B * pt[1], B * B * C * C * pt[0])
    lam = B * C
    fixed_ok = all(im == lam * co for im, co in zip(image, pt))
    # the fixed line of the ambient map, restricted to the quadric, is a
    # perfect square with the same point as its double root
    line = (C * s, C * u, B * u, B * C * C * s)  # kernel parametrization
    quadric_restr = line[0] * line[3] + line[1] * line[2]
    square = B * C * (C * s + u) ** 2
    line_ok = quadric_restr == square
    # at the root u = C s the parametrization returns the fixed point
    at_root = tuple(coord.subs({"u": C * s}, rb) for coord in line)
    scaled = tuple(C * s * coord for coord in pt)
    root_ok = at_root == scaled
    reports.append(_report(
        "kummer.twisted-swap-fixed-point", fixed_ok and line_ok and root_ok,
        "with b = B^2, c = C^2 the twisted swap fixes (1, C, B, BC) (the "
        "printed fixed point, read through square roots), and its fixed "
        "line meets the quadric in that single point doubled",
    ))

    # (e) translation by the 2-torsion point maps the curve to itself
    re = ring(F2, ("x", "y", "b"))
    xe, ye, be = re.gens()
    fe = ye * ye + xe * ye + xe ** 3 + be * xe
    tx = RatFunc(be, xe)
    ty = (be * ye) / (xe * xe) + RatFunc(be, xe)
    fimage = RatFunc.of(fe).subs({"x": tx, "y": ty})
    cleared_e = fimage * RatFunc.of(xe ** 4)
    residual_e = cleared_e + be * be * fe
    reports.append(_report(
        "kummer.torsion-translation", residual_e.is_zero(),
        "(x, y) -> (b/x, by/x^2 + b/x) maps y^2 + xy = x^3 + bx to "
        "b^2/x^4 times itself",
        residual_e,
    ))
    return reports


# ---------------------------------------------------------------------------
# The order-4 automorphism of the elliptic K3 cover


SIGMA_SECTION_TABLE = {
    "s0": "s0", "s1": "s2", "s2": "s4", "s3": "s1", "s4": "s3",
    "m0": "m0", "m1": "m2", "m2": "m4", "m3": "m1", "m4": "m3",
}


def verify_sigma_Y() -> List[IdentityCheckReport]:
    reports = []
    F2 = GF(1)
    rt = ring(F2, ("t",))
    t = RatFunc.of(rt.var("t"))
    phi = t / (t + 1)

    # (a) the base action has order 2 and swaps the bad fibers pairwise
    phi2 = phi.subs({"t": phi})
    order2 = phi2 == t
    F4 = GF(2)
    r4 = ring(F4, ("t",))
    w = r4.const(F4.gen)
    phi4 = RatFunc.of(r4.var("t")) / (r4.var("t") + 1)
    one_to_inf = phi4.den.subs({"t": RatFunc.of(r4.one)}).is_zero()
    w_to_w2 = phi4.subs({"t": RatFunc.of(w)}) == RatFunc.of(w * w)
    reports.append(_report(
        "sigmaY.base-action", order2 and one_to_inf and w_to_w2,
        "t -> t/(t+1) squares to the identity, sends t = 1 to infinity and "
        "t = w to t = w^2",
    ))

    # (b) the induced permutation of the ten sections
    curve = curve_Ystar()
    sections = ystar_sections()
    rtc = curve.ring
    tc = RatFunc.of(rtc.var("t"))
    phic = tc / (tc + 1)
    ok = True
    lines = []
    for a_name, b_name in SIGMA_SECTION_TABLE.items():
        if a_name == "s0":
            continue  # the zero section is preserved by definition
        target = sections[a_name]
        source = sections[b_name]
        if source == INF or target == INF:
            ok = False
            continue
        img_x = (source.x + tc ** 4 + tc ** 2 + 1) / (tc + 1) ** 4
        img_y = (source.x + source.y + tc ** 6 + tc ** 2) / (tc + 1) ** 6
        want_x = target.x.subs({"t": phic})
        want_y = target.y.subs({"t": phic})
        match = img_x == want_x and img_y == want_y
        if not match:
            ok = False
        lines.append(f"{a_name}<-{b_name}:{'ok' if match else 'FAIL'}")
    perm_order4 = _permutation_order(SIGMA_SECTION_TABLE) == 4
    reports.append(_report(
        "sigmaY.section-permutation", ok and perm_order4,
        "the automorphism carries each section onto the tabulated one "
        "(pullback reading); the permutation is a double 4-cycle: "
        + " ".join(lines),
    ))

    # (c) the full equation is preserved exactly
    rf = ring(F2, ("t", "x", "y"))
    tv, xv, yv = (RatFunc.of(rf.var(v)) for v in "txy")
    f = yv ** 2 + tv ** 2 * xv * yv + yv + xv ** 3 + xv ** 2 + tv ** 2
    sub = {
        "t": tv / (tv + 1),
        "x": (xv + tv ** 4 + tv ** 2 + 1) / (tv + 1) ** 4,
        "y": (xv + yv + tv ** 6 + tv ** 2) / (tv + 1) ** 6,
    }
    g = f.subs(sub)
    cleared = g * RatFunc.of(rf.parse("(t+1)^12"))
    residual = cleared + f
    reports.append(_report(
        "sigmaY.equation-preserved", residual.is_zero(),
        "substituting the automorphism (with the printed s read as t) into "
        "the Weierstrass equation returns the equation divided by (t+1)^12",
        residual,
    ))
    return reports


def _permutation_order(table: Dict[str, str]) -> int:
    order = 1
    for start in table:
        cur, length = table[start], 1
        while cur != start:
            cur = table[cur]
            length += 1
        order = order * length // _gcd(order, length)
    return order


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


ALL_CONSTRUCTIONS = {
    "typeI": verify_type_I,
    "typeII": verify_type_II,
    "typeVI": verify_type_VI,
    "kummer": verify_kummer_appendix,
    "sigmaY": verify_sigma_Y,
}


def verify_all_constructions() -> List[IdentityCheckReport]:
    out = []
    for name in sorted(ALL_CONSTRUCTIONS):
        out.extend(ALL_CONSTRUCTIONS[name]())
    return out
