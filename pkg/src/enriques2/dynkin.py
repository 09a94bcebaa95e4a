"""Dual graphs of (-2)-curves and their parabolic subdiagram combinatorics.

A ``DualGraph`` is a weighted multigraph with edge multiplicities 1 or 2;
its Gram matrix has -2 on the diagonal and the multiplicities off it.
Connected parabolic subdiagrams (negative semidefinite of corank exactly 1,
i.e. affine Dynkin diagrams) are recognized algebraically and labelled by
shape afterwards. On top of that sit exhaustive parabolic enumeration, the
finite-index reflection-group criterion (every connected parabolic
subdiagram must be a component of a rank-8 parabolic subdiagram), isotropic
fiber classes, the forced-multiple-fiber parity test, and Kodaira label
assignment against the catalogue of reducible-fiber collections realizable
on char-2 Enriques surfaces.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from . import _intlinalg as la
from .curve_config import CurveConfig


class GraphError(Exception):
    pass


class TripleEdge(GraphError):
    pass


class DegenerateGraph(GraphError):
    pass


class NotParabolic(GraphError):
    pass


@dataclass(frozen=True)
class DualGraph:
    """Vertices plus edges with multiplicities m in {1, 2} (m = pairing)."""

    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str, int], ...]  # normalized: u < v, m >= 1

    @staticmethod
    def build(vertices: Sequence[str], edges) -> "DualGraph":
        vs = tuple(vertices)
        seen = set(vs)
        if len(seen) != len(vs):
            raise GraphError("repeated vertex name")
        norm = {}
        for item in edges:
            u, v, *rest = item
            m = rest[0] if rest else 1
            if u not in seen or v not in seen:
                raise GraphError(f"edge endpoint {u!r}/{v!r} not a vertex")
            if u == v:
                raise GraphError(f"loop at {u!r}")
            key = (u, v) if u < v else (v, u)
            norm[key] = norm.get(key, 0) + 0  # keep first multiplicity
            if key in norm and norm[key]:
                raise GraphError(f"duplicate edge {key}")
            norm[key] = m
        for key, m in norm.items():
            if m >= 3:
                raise TripleEdge(f"edge {key} has multiplicity {m} >= 3")
            if m < 1:
                raise GraphError(f"edge {key} has multiplicity {m} < 1")
        return DualGraph(vs, tuple(sorted((u, v, m) for (u, v), m in norm.items())))

    # -- basic structure ------------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def size(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> List[List[int]]:
        n = self.size()
        idx = {v: i for i, v in enumerate(self.vertices)}
        a = [[0] * n for _ in range(n)]
        for u, v, m in self.edges:
            a[idx[u]][idx[v]] = a[idx[v]][idx[u]] = m
        return a

    def gram(self) -> List[List[int]]:
        g = self.adjacency()
        for i in range(self.size()):
            g[i][i] = -2
        return g

    def neighbor_masks(self) -> List[int]:
        n = self.size()
        a = self.adjacency()
        return [sum(1 << j for j in range(n) if a[i][j]) for i in range(n)]

    def subset_gram(self, subset: Sequence[int]) -> List[List[int]]:
        a = self.adjacency()
        return [
            [a[i][j] if i != j else -2 for j in subset]
            for i in subset
        ]

    def is_connected_subset(self, subset: Sequence[int]) -> bool:
        if not subset:
            return False
        a = self.adjacency()
        todo = [subset[0]]
        seen = {subset[0]}
        inside = set(subset)
        while todo:
            x = todo.pop()
            for y in inside:
                if y not in seen and a[x][y]:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == len(inside)


def graph_from_config(cfg: CurveConfig) -> DualGraph:
    """Interpret a (-2)-curve configuration as a dual graph."""
    n = cfg.size()
    edges = []
    for i in range(n):
        if cfg.gram[i][i] != -2:
            raise GraphError(f"{cfg.curves[i]} is not a (-2)-class")
        for j in range(i + 1, n):
            m = cfg.gram[i][j]
            if m:
                edges.append((cfg.curves[i], cfg.curves[j], m))
    return DualGraph.build(cfg.curves, edges)


# ---------------------------------------------------------------------------
# Built-in graphs


def build_petersen() -> DualGraph:
    """Kneser form: 2-subsets of {1..5}, adjacent iff disjoint."""
    names = ["".join(map(str, c)) for c in combinations(range(1, 6), 2)]
    edges = []
    for a, b in combinations(names, 2):
        if not set(a) & set(b):
            edges.append((a, b, 1))
    return DualGraph.build(sorted(names), edges)


def line_graph(g: DualGraph) -> DualGraph:
    """Vertices are the edges of g; adjacency means sharing an endpoint."""
    for _, _, m in g.edges:
        if m != 1:
            raise GraphError("line graph is defined here for simple graphs only")
    names = [f"{u}|{v}" for u, v, _ in g.edges]
    ends = {f"{u}|{v}": {u, v} for u, v, _ in g.edges}
    edges = []
    for a, b in combinations(names, 2):
        if ends[a] & ends[b]:
            edges.append((a, b, 1))
    return DualGraph.build(sorted(names), edges)


def build_type_vii_graph() -> DualGraph:
    """The 20-vertex dual graph with automorphism group S5.

    Fifteen vertices form the line graph of the Petersen graph (Kneser
    labels: a vertex is a pair of disjoint 2-subsets of {1..5}). Five more
    vertices K1..K5 are pairwise joined by double edges, and Kx is joined
    by double edges to the three line-graph vertices whose 2-subsets omit
    x entirely.
    """
    petersen = build_petersen()
    lg = line_graph(petersen)
    names = list(lg.vertices) + [f"K{x}" for x in range(1, 6)]
    edges = list(lg.edges)
    for x, y in combinations(range(1, 6), 2):
        edges.append((f"K{x}", f"K{y}", 2))
    for x in range(1, 6):
        for v in lg.vertices:
            used = set(v.replace("|", ""))
            if str(x) not in used:
                edges.append((f"K{x}", v, 2))
    return DualGraph.build(names, edges)


def build_e10_graph() -> DualGraph:
    """A path of nine vertices with one extra branch at the third node."""
    names = [f"v{i}" for i in range(10)]
    edges = [(f"v{i}", f"v{i+1}", 1) for i in range(8)] + [("v2", "v9", 1)]
    return DualGraph.build(names, edges)


def build_counterexample_graph() -> DualGraph:
    """A 6-cycle plus a pendant vertex; fails the finite-index criterion."""
    names = [f"c{i}" for i in range(6)] + ["p"]
    edges = [(f"c{i}", f"c{(i+1) % 6}", 1) for i in range(6)] + [("c0", "p", 1)]
    return DualGraph.build(names, edges)


BUILTIN_GRAPHS = {
    "petersen": build_petersen,
    "petersen-line": lambda: line_graph(build_petersen()),
    "typeVII": build_type_vii_graph,
    "E10": build_e10_graph,
    "counterexample": build_counterexample_graph,
}


def graph_from_json(data) -> DualGraph:
    """{"vertices": ["E1", ...], "edges": [["E1", "E2", 1], ...]}"""
    if isinstance(data, str):
        data = json.loads(data)
    edges = [(str(e[0]), str(e[1]), int(e[2]) if len(e) > 2 else 1) for e in data["edges"]]
    return DualGraph.build([str(v) for v in data["vertices"]], edges)


def graph_to_json(g: DualGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


# ---------------------------------------------------------------------------
# Parabolic recognition


def is_parabolic_subset(g: DualGraph, subset: Sequence[int]) -> bool:
    """Ground truth: negative semidefinite of corank exactly 1."""
    pos, neg, zero = la.inertia(g.subset_gram(sorted(subset)))
    return pos == 0 and zero == 1


def recognize_connected_parabolic(g: DualGraph, subset) -> Optional[str]:
    """Affine label of a connected subset, or None if not parabolic.

    The algebraic semidefinite/corank test decides; the label is then read
    off the shape (double-edge pair, cycle, or branched tree).
    """
    idx = sorted(_as_indices(g, subset))
    if not g.is_connected_subset(idx):
        raise GraphError("subset is not connected")
    if not is_parabolic_subset(g, idx):
        return None
    return _shape_label(g, idx)


def _as_indices(g: DualGraph, subset) -> List[int]:
    out = []
    for v in subset:
        out.append(v if isinstance(v, int) else g.index(v))
    return out


def _shape_label(g: DualGraph, idx: List[int]) -> str:
    n = len(idx)
    a = g.adjacency()
    sub = {i: [j for j in idx if j != i and a[i][j]] for i in idx}
    if n == 2:
        return "A~1"  # the double-edge pair: [[-2, 2], [2, -2]]
    degrees = sorted(len(sub[i]) for i in idx)
    if degrees == [2] * n:
        return f"A~{n - 1}"  # cycle
    edge_count = sum(len(sub[i]) for i in idx) // 2
    if edge_count != n - 1:
        raise GraphError(f"unclassified parabolic shape on {n} vertices")
    deg4 = [i for i in idx if len(sub[i]) == 4]
    deg3 = [i for i in idx if len(sub[i]) == 3]
    if len(deg4) == 1 and not deg3 and n == 5:
        return "D~4"
    if len(deg3) == 2 and not deg4:
        return f"D~{n - 1}"
    if len(deg3) == 1 and not deg4:
        arms = sorted(_arm_lengths(sub, deg3[0]))
        if arms == [2, 2, 2]:
            return "E~6"
        if arms == [1, 3, 3]:
            return "E~7"
        if arms == [1, 2, 5]:
            return "E~8"
    raise GraphError(f"unclassified parabolic tree shape on {n} vertices")


def _arm_lengths(sub: Dict[int, List[int]], branch: int) -> List[int]:
    arms = []
    for start in sub[branch]:
        length = 1
        prev, cur = branch, start
        while True:
            nxt = [x for x in sub[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return arms


def affine_rank(label: str) -> int:
    return int(label.split("~")[1])


# ---------------------------------------------------------------------------
# Enumeration


@dataclass(frozen=True)
class Component:
    vertices: Tuple[str, ...]
    label: str

    @property
    def rank(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class ParabolicSubdiagram:
    components: Tuple[Component, ...]

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def signature(self) -> Tuple[str, ...]:
        """Sorted component labels, e.g. ('A~1', 'A~2', 'A~5')."""
        return tuple(sorted(c.label for c in self.components))

    def vertex_set(self) -> FrozenSet[str]:
        out: set = set()
        for c in self.components:
            out.update(c.vertices)
        return frozenset(out)

    def __repr__(self):
        return "(+)".join(self.signature)


def connected_subsets(g: DualGraph, max_size: int) -> Iterator[int]:
    """All connected vertex subsets as bitmasks, each exactly once (ESU)."""
    n = g.size()
    nbr = g.neighbor_masks()
    full = (1 << n) - 1

    def extend(s_mask: int, ext_mask: int, closed: int) -> Iterator[int]:
        yield s_mask
        if bin(s_mask).count("1") >= max_size:
            return
        ext = ext_mask
        while ext:
            wbit = ext & -ext
            ext ^= wbit
            w = wbit.bit_length() - 1
            grown = (ext | (nbr[w] & ~closed)) & full & allowed
            yield from extend(s_mask | wbit, grown, closed | nbr[w] | wbit)

    for v in range(n):
        allowed = full & ~((1 << (v + 1)) - 1)  # only vertices > v may extend
        start_ext = nbr[v] & allowed
        yield from extend(1 << v, start_ext, nbr[v] | (1 << v))


def connected_parabolic_components(g: DualGraph) -> List[Component]:
    """Every connected parabolic subdiagram, by pruned connected growth.

    Subsets that are not negative semidefinite are pruned (no superset can
    recover), and corank-1 subsets are recorded without further growth (a
    connected affine diagram is maximal among semidefinite diagrams).
    """
    n = g.size()
    nbr = g.neighbor_masks()
    full = (1 << n) - 1
    found: Dict[int, str] = {}

    def status(mask: int) -> int:
        # 0 = negative definite (keep growing), 1 = parabolic, 2 = prune
        idx = [i for i in range(n) if mask >> i & 1]
        pos, neg, zero = la.inertia(g.subset_gram(idx))
        if pos:
            return 2
        if zero == 0:
            return 0
        return 1 if zero == 1 else 2

    def extend(s_mask: int, ext_mask: int, closed: int, allowed: int):
        st = status(s_mask)
        if st == 2:
            return
        if st == 1:
            found[s_mask] = ""
            return
        if bin(s_mask).count("1") >= 10:
            return  # affine diagrams here have at most 9 vertices
        ext = ext_mask
        while ext:
            wbit = ext & -ext
            ext ^= wbit
            w = wbit.bit_length() - 1
            grown = (ext | (nbr[w] & ~closed)) & full & allowed
            extend(s_mask | wbit, grown, closed | nbr[w] | wbit, allowed)

    for v in range(n):
        allowed = full & ~((1 << (v + 1)) - 1)
        extend(1 << v, nbr[v] & allowed, nbr[v] | (1 << v), allowed)

    comps = []
    for mask in sorted(found):
        idx = [i for i in range(n) if mask >> i & 1]
        label = _shape_label(g, idx)
        comps.append(Component(tuple(g.vertices[i] for i in idx), label))
    return comps


def enumerate_parabolics(g: DualGraph) -> List[ParabolicSubdiagram]:
    """All parabolic subdiagrams: disjoint, mutually non-adjacent unions."""
    comps = connected_parabolic_components(g)
    n = g.size()
    idx = {v: i for i, v in enumerate(g.vertices)}
    nbr = g.neighbor_masks()
    masks = []
    closed = []
    for c in comps:
        m = 0
        for v in c.vertices:
            m |= 1 << idx[v]
        cm = m
        for v in c.vertices:
            cm |= nbr[idx[v]]
        masks.append(m)
        closed.append(cm)
    out: List[ParabolicSubdiagram] = []

    def rec(start: int, chosen: List[int], used_closed: int):
        if chosen:
            out.append(ParabolicSubdiagram(tuple(comps[i] for i in chosen)))
        for i in range(start, len(comps)):
            if masks[i] & used_closed:
                continue
            if closed[i] & sum(masks[j] for j in chosen):
                continue
            chosen.append(i)
            rec(i + 1, chosen, used_closed | closed[i])
            chosen.pop()

    rec(0, [], 0)
    out.sort(key=lambda p: (-p.rank, p.signature, sorted(p.vertex_set())))
    return out


def maximal_parabolics(g: DualGraph) -> List[ParabolicSubdiagram]:
    """The parabolic subdiagrams of maximal rank."""
    all_par = enumerate_parabolics(g)
    if not all_par:
        return []
    top = max(p.rank for p in all_par)
    return [p for p in all_par if p.rank == top]


# ---------------------------------------------------------------------------
# Vinberg criterion


@dataclass(frozen=True)
class VinbergReport:
    finite_index: bool
    max_rank: int
    witnesses: Dict[Tuple[str, ...], Optional[ParabolicSubdiagram]]

    def counterexamples(self) -> List[Tuple[str, ...]]:
        return [c for c, w in self.witnesses.items() if w is None]


def vinberg_check(g: DualGraph) -> VinbergReport:
    """Finite index holds iff every connected parabolic subdiagram is a
    connected component of some rank-8 parabolic subdiagram."""
    for _, _, m in g.edges:
        if m >= 3:
            raise TripleEdge("criterion needs multiplicities at most 2")
    pos, neg, _ = la.inertia(g.gram())
    if pos > 1 or pos + neg > 10:
        raise DegenerateGraph(
            f"Gram signature ({pos}, {neg}) does not embed in (1, 9)"
        )
    comps = connected_parabolic_components(g)
    parabolics = enumerate_parabolics(g)
    rank8 = [p for p in parabolics if p.rank == 8]
    comp_sets = {}
    for p in rank8:
        for c in p.components:
            comp_sets.setdefault(frozenset(c.vertices), p)
    witnesses: Dict[Tuple[str, ...], Optional[ParabolicSubdiagram]] = {}
    ok = True
    for c in comps:
        w = comp_sets.get(frozenset(c.vertices))
        witnesses[c.vertices] = w
        if w is None:
            ok = False
    max_rank = max((p.rank for p in parabolics), default=0)
    return VinbergReport(ok, max_rank, witnesses)


# ---------------------------------------------------------------------------
# Isotropic classes, multiple fibers, Kodaira assignment


def isotropic_class(g: DualGraph, component) -> Dict[str, int]:
    """The primitive positive kernel vector (affine marks) of a component."""
    if isinstance(component, Component):
        names = list(component.vertices)
    else:
        names = [v if isinstance(v, str) else g.vertices[v] for v in component]
    idx = sorted(g.index(v) for v in names)
    if not g.is_connected_subset(idx) or not is_parabolic_subset(g, idx):
        raise NotParabolic(f"{names} is not a connected parabolic subdiagram")
    gram = g.subset_gram(idx)
    vec = la.primitive_kernel_vector(gram)
    if any(x <= 0 for x in vec):
        vec = [-x for x in vec]
    if any(x <= 0 for x in vec):
        raise NotParabolic("kernel vector is not one-signed")
    return {g.vertices[i]: x for i, x in zip(idx, vec)}


def multiple_fiber_test(g: DualGraph, parabolic: ParabolicSubdiagram,
                        component: Component) -> bool:
    """Whether the fiber supported on the component is forced to be multiple.

    The fiber class of a genus-1 fibration on an Enriques surface is twice
    a half-fiber class in the numerical lattice, so it pairs evenly with
    every curve. If some curve outside the parabolic subdiagram pairs with
    the component's isotropic class with odd total multiplicity, the fiber
    on this component cannot be the full fiber class: it must be multiple.
    """
    if component not in parabolic.components:
        raise NotParabolic("component does not belong to the parabolic subdiagram")
    marks = isotropic_class(g, component)
    inside = parabolic.vertex_set()
    a = g.adjacency()
    idx = {v: i for i, v in enumerate(g.vertices)}
    for u in g.vertices:
        if u in inside:
            continue
        pairing = sum(m * a[idx[u]][idx[v]] for v, m in marks.items())
        if pairing % 2 == 1:
            return True
    return False


# Reducible-fiber collections realizable by an elliptic fibration on an
# Enriques surface in characteristic 2 (via its rational Jacobian surface).
REDUCIBLE_FIBER_CATALOGUE = (
    ("I3", "I3", "I3", "I3"),
    ("I5", "I5"),
    ("I9",),
    ("I4*",),
    ("II*",),
    ("III", "I8"),
    ("I1*", "I4"),
    ("III*", "I2"),
    ("IV", "IV*"),
    ("IV", "I2", "I6"),
    ("IV*", "I3"),
)

_CATALOGUE_MULTISETS = tuple(tuple(sorted(t)) for t in REDUCIBLE_FIBER_CATALOGUE)


def component_label_options(affine: str) -> Tuple[str, ...]:
    """Kodaira fiber types compatible with one affine diagram."""
    kind, rank = affine.split("~")
    r = int(rank)
    if kind == "A":
        if r == 1:
            return ("I2", "III")
        if r == 2:
            return ("I3", "IV")
        return (f"I{r + 1}",)
    if kind == "D":
        return (f"I{r - 4}*",)
    if kind == "E":
        return {6: ("IV*",), 7: ("III*",), 8: ("II*",)}[r]
    raise GraphError(f"unknown affine label {affine!r}")


def kodaira_assignments(parabolic: ParabolicSubdiagram) -> List[Tuple[str, ...]]:
    """All catalogue-consistent Kodaira labelings of the components."""
    if parabolic.rank > 8:
        raise GraphError("parabolic rank exceeds 8")
    options = [component_label_options(c.label) for c in parabolic.components]

    out = []

    def rec(i: int, acc: List[str]):
        if i == len(options):
            if tuple(sorted(acc)) in _CATALOGUE_MULTISETS:
                out.append(tuple(acc))
            return
        for lab in options[i]:
            acc.append(lab)
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    return out


# ---------------------------------------------------------------------------
# Isomorphism and automorphisms


def _refine_colors(a: List[List[int]], colors: List[int]) -> List[int]:
    n = len(a)
    while True:
        sigs = []
        for i in range(n):
            nb = sorted((a[i][j], colors[j]) for j in range(n) if a[i][j])
            sigs.append((colors[i], tuple(nb)))
        order = {s: c for c, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _match(a1, a2, colors1, colors2, count_all: bool) -> int:
    """Backtracking (iso or automorphism count) on adjacency matrices."""
    n = len(a1)
    mapping = [-1] * n
    used = [False] * n
    total = 0

    def rec(i: int) -> int:
        nonlocal total
        if i == n:
            total += 1
            return 1
        found = 0
        for j in range(n):
            if used[j] or colors1[i] != colors2[j]:
                continue
            ok = True
            for k in range(i):
                if a1[i][k] != a2[j][mapping[k]]:
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used[j] = True
                r = rec(i + 1)
                used[j] = False
                mapping[i] = -1
                if r and not count_all:
                    return 1
                found += r
        return found

    rec(0)
    return total


def graph_isomorphic(g1: DualGraph, g2: DualGraph) -> bool:
    if g1.size() != g2.size():
        return False
    a1, a2 = g1.adjacency(), g2.adjacency()
    c1 = _refine_colors(a1, [0] * g1.size())
    c2 = _refine_colors(a2, [0] * g2.size())
    if sorted(c1) != sorted(c2):
        return False
    return _match(a1, a2, c1, c2, count_all=False) > 0


def automorphism_count(g: DualGraph) -> int:
    a = g.adjacency()
    c = _refine_colors(a, [0] * g.size())
    return _match(a, a, c, c, count_all=True)
