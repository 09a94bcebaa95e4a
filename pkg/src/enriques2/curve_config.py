"""Exact intersection configurations of rational curves.

The central objects are a 34-curve configuration on an elliptic K3 surface
(two I10 fibers, two I2 fibers, ten sections) assembled purely
combinatorially from the fiber shapes and the section incidence table, and
the 20-curve configuration obtained from it by a degree-2 inseparable
quotient followed by blowing down the twelve (-1)-images of the integral
curves. Lattice invariants (rank, signature, discriminant of the spanned
lattice) are computed in exact arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import _intlinalg as la


class ConfigError(Exception):
    pass


class UnknownCurveName(ConfigError):
    pass


class IntegralSetInvalid(ConfigError):
    pass


DivisorClassCombination = Dict[str, int]


@dataclass(frozen=True)
class CurveConfig:
    """Named curve classes with a symmetric integer Gram matrix."""

    curves: Tuple[str, ...]
    gram: Tuple[Tuple[int, ...], ...]
    tags: Tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.curves)
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise ConfigError("Gram matrix size does not match curve count")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ConfigError("Gram matrix is not symmetric")
        if self.tags and len(self.tags) != n:
            raise ConfigError("tag count does not match curve count")

    def index(self, name: str) -> int:
        try:
            return self.curves.index(name)
        except ValueError:
            raise UnknownCurveName(name) from None

    def pairing(self, a: str, b: str) -> int:
        return self.gram[self.index(a)][self.index(b)]

    def size(self) -> int:
        return len(self.curves)


def _config(names: Sequence[str], pairs: Dict[Tuple[str, str], int],
            diag: Dict[str, int], tags: Optional[Dict[str, str]] = None) -> CurveConfig:
    n = len(names)
    idx = {name: i for i, name in enumerate(names)}
    g = [[0] * n for _ in range(n)]
    for name, d in diag.items():
        g[idx[name]][idx[name]] = d
    for (a, b), v in pairs.items():
        ia, ib = idx[a], idx[b]
        g[ia][ib] = g[ib][ia] = v
    tag_tuple = tuple(tags.get(name, "") for name in names) if tags else ()
    return CurveConfig(tuple(names), tuple(tuple(row) for row in g), tag_tuple)


# The component of each I10 fiber met by each section. Decagon order is
# F, E1, E2, ..., E9 around the cycle; component "0" denotes F itself.
SECTION_COMPONENT_T1 = {
    "s0": 0, "s1": 8, "s2": 6, "s3": 4, "s4": 2,
    "m0": 5, "m1": 3, "m2": 1, "m3": 9, "m4": 7,
}
SECTION_COMPONENT_TINF = {
    "s0": 0, "s1": 6, "s2": 2, "s3": 8, "s4": 4,
    "m0": 5, "m1": 1, "m2": 7, "m3": 3, "m4": 9,
}

SECTIONS = tuple(f"s{i}" for i in range(5)) + tuple(f"m{i}" for i in range(5))


def _decagon_names(prefix: str) -> List[str]:
    return [f"F{prefix}"] + [f"E{prefix},{i}" for i in range(1, 10)]


def build_k3_cover_config() -> CurveConfig:
    """The 34 nonsingular rational curves of the elliptic K3 cover.

    Curves: decagons F1 E1,1..E1,9 and Finf Einf,1..Einf,9 (the two I10
    fibers), the I2 pairs (Fw, Ew) and (Fw2, Ew2), and ten sections s0..s4,
    m0..m4. Pairings: decagon cycles with simple intersections, <F, E> = 2
    on each I2 fiber, section pairings <s_i, m_j> = delta_ij, and each
    section meets exactly one component of each fiber, with multiplicity 1.
    """
    dec1 = _decagon_names("1")
    decinf = _decagon_names("inf")
    i2 = ["Fw", "Ew", "Fw2", "Ew2"]
    names = dec1 + decinf + i2 + list(SECTIONS)
    diag = {n: -2 for n in names}
    pairs: Dict[Tuple[str, str], int] = {}
    for dec in (dec1, decinf):
        for i in range(10):
            pairs[(dec[i], dec[(i + 1) % 10])] = 1
    pairs[("Fw", "Ew")] = 2
    pairs[("Fw2", "Ew2")] = 2
    for i in range(5):
        pairs[(f"s{i}", f"m{i}")] = 1
    for sec, comp in SECTION_COMPONENT_T1.items():
        pairs[(sec, dec1[comp])] = 1
    for sec, comp in SECTION_COMPONENT_TINF.items():
        pairs[(sec, decinf[comp])] = 1
    for i in range(5):
        pairs[(f"s{i}", "Fw")] = 1
        pairs[(f"s{i}", "Fw2")] = 1
        pairs[(f"m{i}", "Ew")] = 1
        pairs[(f"m{i}", "Ew2")] = 1
    tags = {n: "fiber" for n in dec1 + decinf + i2}
    tags.update({n: "section" for n in SECTIONS})
    return _config(names, pairs, diag, tags)


def quotient_integral_curves() -> List[str]:
    """The twelve curves tangent to the built-in vector field on the cover."""
    return (
        ["F1"] + [f"E1,{i}" for i in (2, 4, 6, 8)]
        + ["Finf"] + [f"Einf,{i}" for i in (2, 4, 6, 8)]
        + ["Ew", "Ew2"]
    )


def divisor_pairing(cfg: CurveConfig, d1: DivisorClassCombination,
                    d2: DivisorClassCombination) -> int:
    """Bilinear extension of the Gram matrix to integer combinations."""
    total = 0
    for a, ca in d1.items():
        ia = cfg.index(a)
        for b, cb in d2.items():
            total += ca * cb * cfg.gram[ia][cfg.index(b)]
    return total


def fiber_class(cfg: CurveConfig, components: Sequence[str]) -> DivisorClassCombination:
    return {name: 1 for name in components}


def quotient_blowdown_gram(cfg: CurveConfig, integral_set: Sequence[str]) -> CurveConfig:
    """Push the configuration through the inseparable quotient and blowdowns.

    Every curve in ``integral_set`` is integral for the quotient (its image
    has self-intersection -1 and gets blown down); every other curve C maps
    to C' with

        <C', D'> = 2 <C, D> + sum_e <C, e> <D, e>      (C != D),
        C'^2     = 2 C^2    + sum_e <C, e>^2,

    the sum over the integral curves e: the degree-2 inseparable
    pushforward doubles pairings of non-integral curves and keeps mixed
    pairings, and contracting the disjoint (-1)-images e' adds the
    correction term. Images that are no longer (-2)-curves (the I1 fibers
    downstairs) are dropped.
    """
    integral = list(integral_set)
    idx = [cfg.index(e) for e in integral]
    for e, i in zip(integral, idx):
        if cfg.gram[i][i] != -2:
            raise IntegralSetInvalid(f"{e} has self-intersection {cfg.gram[i][i]}, not -2")
        for e2, j in zip(integral, idx):
            if i != j and cfg.gram[i][j] != 0:
                raise IntegralSetInvalid(
                    f"{e} and {e2} meet; their (-1)-images cannot be contracted together"
                )
    rest = [name for name in cfg.curves if name not in integral]
    out_names: List[str] = []
    out_gram_rows: List[List[int]] = []
    kept: List[int] = []
    for name in rest:
        i = cfg.index(name)
        self2 = 2 * cfg.gram[i][i] + sum(cfg.gram[i][e] ** 2 for e in idx)
        if self2 == -2:
            out_names.append(name)
            kept.append(i)
    for i in kept:
        row = []
        for j in kept:
            if i == j:
                row.append(2 * cfg.gram[i][i] + sum(cfg.gram[i][e] ** 2 for e in idx))
            else:
                row.append(2 * cfg.gram[i][j] + sum(cfg.gram[i][e] * cfg.gram[j][e] for e in idx))
        out_gram_rows.append(row)
    tags = tuple(cfg.tags[cfg.index(n)] for n in out_names) if cfg.tags else ()
    return CurveConfig(tuple(out_names), tuple(tuple(r) for r in out_gram_rows), tags)


@dataclass(frozen=True)
class LatticeInvariants:
    rank: int
    signature: Tuple[int, int, int]   # (n_plus, n_minus, n_zero)
    determinant: int                  # of the saturated spanned lattice

    def __repr__(self):
        return (
            f"LatticeInvariants(rank={self.rank}, signature={self.signature}, "
            f"det={self.determinant})"
        )


def lattice_invariants(cfg_or_gram) -> LatticeInvariants:
    """Exact rank, inertia signature, and spanned-lattice determinant."""
    gram = cfg_or_gram.gram if isinstance(cfg_or_gram, CurveConfig) else cfg_or_gram
    gram = [list(row) for row in gram]
    sig = la.inertia(gram)
    rank = sig[0] + sig[1]
    span = la.gram_of_span(gram)
    det = la.determinant(span) if span else 1
    return LatticeInvariants(rank, sig, det)


def build_e10_config() -> CurveConfig:
    """Ten (-2)-classes: a path of nine plus a branch at the third node."""
    names = [f"v{i}" for i in range(10)]
    pairs = {(f"v{i}", f"v{i+1}"): 1 for i in range(8)}
    pairs[("v2", "v9")] = 1
    return _config(names, pairs, {n: -2 for n in names})


BUILTIN_CONFIGS = {
    "Y34": build_k3_cover_config,
    "X20": lambda: quotient_blowdown_gram(build_k3_cover_config(), quotient_integral_curves()),
    "E10": build_e10_config,
}


def config_from_json(data) -> CurveConfig:
    """{"curves": ["F1", ...], "gram": [[...], ...]}"""
    if isinstance(data, str):
        data = json.loads(data)
    return CurveConfig(
        tuple(str(c) for c in data["curves"]),
        tuple(tuple(int(x) for x in row) for row in data["gram"]),
    )


def config_to_json(cfg: CurveConfig) -> dict:
    return {"curves": list(cfg.curves), "gram": [list(r) for r in cfg.gram]}
