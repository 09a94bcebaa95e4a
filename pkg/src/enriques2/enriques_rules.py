"""Existence rule engine for char-2 Enriques surfaces with given dual graphs.

An elliptic fibration on an Enriques surface in characteristic 2 constrains
the class of the surface through its multiple fibers:

* a classical surface has two tame multiple fibers, each an ordinary
  elliptic curve or an additive-type singular fiber;
* a singular surface has one wild multiple fiber, a smooth ordinary curve
  or a multiplicative-type singular fiber;
* a supersingular surface has one wild multiple fiber, a supersingular
  curve or an additive-type singular fiber.

Given per-fibration facts (reducible fiber types and which fibers the dual
graph forces to be multiple), each fibration removes the impossible
classes and the surface's admissible set is the intersection over all of
its fibrations. The seven known dual graph types feed this engine: the
20-curve graph's facts are computed from the graph itself, the other six
are transcribed statements.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .dynkin import (
    DualGraph,
    build_type_vii_graph,
    build_e10_graph,
    kodaira_assignments,
    maximal_parabolics,
    multiple_fiber_test,
    vinberg_check,
)


class MalformedFacts(Exception):
    pass


class AmbiguousAssignment(Exception):
    def __init__(self, parabolic, assignments):
        super().__init__(
            f"{parabolic!r} admits {len(assignments)} catalogue assignments: {assignments}"
        )
        self.parabolic = parabolic
        self.assignments = assignments


ALL_CLASSES = frozenset({"classical", "singular", "supersingular"})

_LABEL = re.compile(r"^(I\d+\*?|II\*|III\*?|IV\*?)$")


def reduction_kind(label: str) -> str:
    """multiplicative for I_n; additive for III, IV and all starred types."""
    if not _LABEL.match(label):
        raise MalformedFacts(f"unknown Kodaira label {label!r}")
    if label.startswith("I") and not label.endswith("*") and label not in ("III", "IV"):
        return "multiplicative"
    return "additive"


@dataclass(frozen=True)
class Fibration:
    """Reducible fiber types of one elliptic fibration plus forced-multiple flags."""

    fibers: Tuple[str, ...]
    multiple: Tuple[str, ...] = ()
    min_multiple_count: Optional[int] = None
    note: str = ""

    def __post_init__(self):
        counts: Dict[str, int] = {}
        for f in self.fibers:
            reduction_kind(f)
            counts[f] = counts.get(f, 0) + 1
        for m in self.multiple:
            reduction_kind(m)
            if counts.get(m, 0) < 1:
                raise MalformedFacts(f"forced-multiple fiber {m!r} not among {self.fibers}")
            counts[m] -= 1

    @property
    def forced_count(self) -> int:
        base = len(self.multiple)
        if self.min_multiple_count is not None:
            return max(base, self.min_multiple_count)
        return base


@dataclass(frozen=True)
class FibrationFacts:
    fibrations: Tuple[Fibration, ...]
    provenance: str = "paper-stated"  # or "computed"
    name: str = ""


def admissible_classes_for_fibration(f: Fibration) -> Set[str]:
    """Classes a surface carrying this fibration may still belong to."""
    allowed = set(ALL_CLASSES)
    kinds = [reduction_kind(m) for m in f.multiple]
    if any(k == "additive" for k in kinds):
        allowed.discard("singular")
    if any(k == "multiplicative" for k in kinds):
        allowed.discard("classical")
        allowed.discard("supersingular")
    if f.forced_count >= 2:
        allowed.discard("singular")
        allowed.discard("supersingular")
    return allowed


def classify(facts: FibrationFacts) -> Set[str]:
    allowed = set(ALL_CLASSES)
    for f in facts.fibrations:
        allowed &= admissible_classes_for_fibration(f)
    return allowed


def facts_from_graph(g: DualGraph, name: str = "") -> FibrationFacts:
    """Fibration facts computed from a dual graph passing the index criterion.

    Each rank-8 maximal parabolic subdiagram corresponds to an elliptic
    fibration; its reducible fiber types are the unique catalogue
    assignment of the component labels, and forced-multiple flags come from
    the odd-pairing parity test. Equal records are merged.
    """
    rep = vinberg_check(g)
    if not rep.finite_index:
        raise MalformedFacts("graph fails the finite-index criterion; no fibration facts")
    seen: Dict[Tuple[Tuple[str, ...], Tuple[str, ...]], Fibration] = {}
    for p in maximal_parabolics(g):
        if p.rank != 8:
            continue
        assignments = kodaira_assignments(p)
        if len(assignments) != 1:
            raise AmbiguousAssignment(p, assignments)
        labels = assignments[0]
        mult = tuple(
            sorted(
                lab
                for comp, lab in zip(p.components, labels)
                if multiple_fiber_test(g, p, comp)
            )
        )
        key = (tuple(sorted(labels)), mult)
        if key not in seen:
            seen[key] = Fibration(tuple(sorted(labels)), mult)
    fibs = tuple(seen[k] for k in sorted(seen))
    return FibrationFacts(fibs, provenance="computed", name=name)


# ---------------------------------------------------------------------------
# Built-in facts for the seven dual graph types.
#
# Types I, II and VI come with singular Enriques surfaces built from
# explicit equations; their decisive fibration carries a forced multiple
# fiber of multiplicative type. For types III, IV, V the known dual graphs
# force one fibration with two reducible multiple fibers (additive, from
# the parabolic subdiagrams listed below) and another fibration with a
# reducible multiple fiber of multiplicative type, which together exclude
# every class. Type VII facts are computed from the graph.


def _stated(name: str, fibrations: Sequence[Fibration]) -> FibrationFacts:
    return FibrationFacts(tuple(fibrations), provenance="paper-stated", name=name)


def builtin_facts(name: str) -> FibrationFacts:
    key = name.replace("facts", "")
    if key == "VII":
        return facts_from_graph(build_type_vii_graph(), name="VII")
    if key == "E10":
        return facts_from_graph(build_e10_graph(), name="E10")
    if key not in _STATED_FACTS:
        raise MalformedFacts(f"unknown built-in facts {name!r}")
    return _STATED_FACTS[key]


_STATED_FACTS = {
    "I": _stated("I", [
        Fibration(("I8", "III"), ("I8",),
                  note="pencil through the quadrangle; the ramification curve halves"),
    ]),
    "II": _stated("II", [
        Fibration(("I4", "I1*"), ("I4",),
                  note="pencil tangent to the quadrangle; ramification forces I4"),
    ]),
    "III": _stated("III", [
        Fibration(("I2*", "III", "III"), ("III", "III"),
                  note="fibration of shape D~6 + A~1 + A~1 with two multiple fibers"),
        Fibration(("I2",), ("I2",),
                  note="some fibration carries a reducible multiplicative multiple fiber"),
    ]),
    "IV": _stated("IV", [
        Fibration(("I4", "I4", "III", "III"), ("III", "III"),
                  note="fibration of shape A~3 + A~3 + A~1 + A~1 with two multiple fibers"),
        Fibration(("I2",), ("I2",),
                  note="some fibration carries a reducible multiplicative multiple fiber"),
    ]),
    "V": _stated("V", [
        Fibration(("I6", "IV", "III"), ("IV", "III"),
                  note="fibration of shape A~5 + A~2 + A~1 with two multiple fibers"),
        Fibration(("I2",), ("I2",),
                  note="some fibration carries a reducible multiplicative multiple fiber"),
    ]),
    "VI": _stated("VI", [
        Fibration(("I5",), ("I5",),
                  note="a pentagon of the Petersen configuration is a multiple fiber"),
    ]),
}

BUILTIN_FACTS_NAMES = ("factsI", "factsII", "factsIII", "factsIV",
                       "factsV", "factsVI", "factsVII")

TYPES = ("I", "II", "III", "IV", "V", "VI", "VII")
CLASS_ROWS = ("singular", "classical", "supersingular")

# Which (class, type) cells carry an explicit construction.
CONSTRUCTED = {
    ("singular", "I"),
    ("singular", "II"),
    ("singular", "VI"),
    ("classical", "VII"),
    ("supersingular", "VII"),
}


@dataclass(frozen=True)
class ExistenceCell:
    surface_class: str
    graph_type: str
    verdict: str  # "exists_by_construction" | "not_exists" | "exists"


def existence_table() -> Dict[Tuple[str, str], str]:
    """The 3 x 7 existence matrix keyed by (class, type).

    Non-existence comes from the rule engine; allowed cells are marked
    ``exists_by_construction`` when an explicit surface is known (all
    allowed cells are), and ``exists`` otherwise.
    """
    table: Dict[Tuple[str, str], str] = {}
    for typ in TYPES:
        allowed = classify(builtin_facts(typ))
        for cls in CLASS_ROWS:
            if cls not in allowed:
                table[(cls, typ)] = "not_exists"
            elif (cls, typ) in CONSTRUCTED:
                table[(cls, typ)] = "exists_by_construction"
            else:
                table[(cls, typ)] = "exists"
    return table


def existence_table_markdown() -> str:
    table = existence_table()
    mark = {"exists_by_construction": "O", "exists": "O", "not_exists": "x"}
    lines = ["| class | " + " | ".join(TYPES) + " |",
             "|---" * (len(TYPES) + 1) + "|"]
    for cls in CLASS_ROWS:
        cells = [mark[table[(cls, typ)]] for typ in TYPES]
        lines.append(f"| {cls} | " + " | ".join(cells) + " |")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# JSON format


def facts_from_json(data) -> FibrationFacts:
    """{"fibrations": [{"fibers": ["I6","IV","I2"], "multiple": ["IV"]}, ...]}"""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        fibs = []
        for f in data["fibrations"]:
            fibs.append(
                Fibration(
                    tuple(str(x) for x in f["fibers"]),
                    tuple(str(x) for x in f.get("multiple", ())),
                    f.get("min_multiple_count"),
                    str(f.get("note", "")),
                )
            )
    except (KeyError, TypeError) as exc:
        raise MalformedFacts(f"bad facts record: {exc}") from exc
    return FibrationFacts(tuple(fibs), provenance=str(data.get("provenance", "file")),
                          name=str(data.get("name", "")))


def facts_to_json(facts: FibrationFacts) -> dict:
    return {
        "name": facts.name,
        "provenance": facts.provenance,
        "fibrations": [
            {
                "fibers": list(f.fibers),
                "multiple": list(f.multiple),
                **({"note": f.note} if f.note else {}),
            }
            for f in facts.fibrations
        ],
    }
