"""Weighted intersection graphs of curves on a smooth surface, and blow-downs.

A vertex is a curve C with its self-intersection C^2 and canonical degree
K.C; an edge carries the intersection number of two distinct curves.  The
graph also records K^2 of the ambient surface.  Tangency is not
distinguished from several transverse meetings: only the numbers matter.

Contracting a smooth rational (-1)-curve E, with m_C = C.E for every other
curve C, changes the numbers by

    C^2  -> C^2 + m_C^2
    K.C  -> K.C - m_C
    A.B  -> A.B + m_A m_B
    K^2  -> K^2 + 1

Graphs are treated as immutable values; every operation returns a new graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    name: str
    self_int: int
    k_degree: int

    def __post_init__(self):
        if (self.self_int + self.k_degree) % 2:
            raise GraphError(f"{self.name}: C^2 + K.C must be even")
        if self.p_a < 0:
            raise GraphError(f"{self.name}: negative arithmetic genus")

    @property
    def p_a(self) -> int:
        return (self.self_int + self.k_degree) // 2 + 1

    @property
    def is_minus_one_curve(self) -> bool:
        return self.self_int == -1 and self.p_a == 0


def _key(a: str, b: str) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class IntersectionGraph:
    curves: Mapping[str, Curve]
    edges: Mapping[frozenset, int]
    ambient_k_squared: int

    def __post_init__(self):
        for k, m in self.edges.items():
            if len(k) != 2:
                raise GraphError("self-loops are not allowed")
            if m < 1:
                raise GraphError(f"edge {sorted(k)} must have positive multiplicity")
            for name in k:
                if name not in self.curves:
                    raise GraphError(f"edge refers to unknown curve {name!r}")

    @classmethod
    def build(cls, curves: Iterable[Curve], edges: Iterable[tuple[str, str, int]] = (),
              ambient_k_squared: int = 0) -> "IntersectionGraph":
        cs: dict[str, Curve] = {}
        for c in curves:
            if c.name in cs:
                raise GraphError(f"duplicate curve {c.name!r}")
            cs[c.name] = c
        es: dict[frozenset, int] = {}
        for a, b, m in edges:
            if a == b:
                raise GraphError(f"self-loop on {a!r}")
            k = _key(a, b)
            if k in es:
                raise GraphError(f"duplicate edge {a!r}-{b!r}")
            es[k] = m
        return cls(cs, es, ambient_k_squared)

    def __eq__(self, other):
        if not isinstance(other, IntersectionGraph):
            return NotImplemented
        return (dict(self.curves) == dict(other.curves)
                and dict(self.edges) == dict(other.edges)
                and self.ambient_k_squared == other.ambient_k_squared)

    def names(self) -> list[str]:
        return sorted(self.curves)

    def mult(self, a: str, b: str) -> int:
        return self.edges.get(_key(a, b), 0)

    def neighbors(self, v: str) -> dict[str, int]:
        out = {}
        for k, m in self.edges.items():
            if v in k:
                (w,) = k - {v}
                out[w] = m
        return out

    def __len__(self):
        return len(self.curves)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "curves": [
                {"name": c.name, "self_int": c.self_int, "k_degree": c.k_degree}
                for c in (self.curves[n] for n in self.names())
            ],
            "edges": [
                {"a": a, "b": b, "mult": m}
                for (a, b), m in sorted((tuple(sorted(k)), m) for k, m in self.edges.items())
            ],
            "ambient_k_squared": self.ambient_k_squared,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "IntersectionGraph":
        try:
            curves = [Curve(str(c["name"]), int(c["self_int"]), int(c["k_degree"]))
                      for c in data.get("curves", [])]
            edges = [(str(e["a"]), str(e["b"]), int(e["mult"])) for e in data.get("edges", [])]
            k2 = int(data.get("ambient_k_squared", 0))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"malformed graph: {exc}") from exc
        return cls.build(curves, edges, k2)

    @classmethod
    def loads(cls, text: str) -> "IntersectionGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise GraphError("graph JSON must be an object")
        return cls.from_json(data)

    def to_dot(self, title: str = "G") -> str:
        lines = [f'graph "{title}" {{', f'  label="K^2 = {self.ambient_k_squared}";']
        for n in self.names():
            c = self.curves[n]
            lines.append(f'  "{n}" [label="{n}\\n{c.self_int}"];')
        for (a, b), m in sorted((tuple(sorted(k)), m) for k, m in self.edges.items()):
            attr = f' [label="{m}"]' if m > 1 else ""
            lines.append(f'  "{a}" -- "{b}"{attr};')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ContractionRecord:
    curve: str
    neighbor_mults: dict[str, int]
    deltas: dict[str, tuple[int, int]]  # name -> (change of C^2, change of K.C)
    new_edges: dict[tuple[str, str], int]
    k_squared_before: int
    k_squared_after: int

    def to_json(self) -> dict:
        return {
            "curve": self.curve,
            "neighbor_mults": dict(sorted(self.neighbor_mults.items())),
            "deltas": {n: {"self_int": d[0], "k_degree": d[1]}
                       for n, d in sorted(self.deltas.items())},
            "new_edges": [{"a": a, "b": b, "added": m}
                          for (a, b), m in sorted(self.new_edges.items())],
            "k_squared_before": self.k_squared_before,
            "k_squared_after": self.k_squared_after,
        }

    def describe(self, after: IntersectionGraph) -> str:
        parts = [f"contract {self.curve}: K^2 {self.k_squared_before} -> {self.k_squared_after}"]
        for n in sorted(self.deltas):
            c = after.curves[n]
            parts.append(f"    {n}: C^2 = {c.self_int}, K.C = {c.k_degree}, p_a = {c.p_a}")
        for (a, b), m in sorted(self.new_edges.items()):
            parts.append(f"    {a}.{b} = {after.mult(a, b)} (+{m})")
        return "\n".join(parts)


def contract(G: IntersectionGraph, v: str) -> tuple[IntersectionGraph, ContractionRecord]:
    if v not in G.curves:
        raise GraphError(f"unknown curve {v!r}")
    c = G.curves[v]
    if c.p_a != 0:
        raise GraphError(f"{v} has arithmetic genus {c.p_a}; only smooth rational curves contract")
    if c.self_int != -1:
        raise GraphError(f"{v} has self-intersection {c.self_int}, not -1")
    nbrs = G.neighbors(v)
    curves = {}
    deltas = {}
    for n, cur in G.curves.items():
        if n == v:
            continue
        m = nbrs.get(n, 0)
        if m:
            curves[n] = Curve(n, cur.self_int + m * m, cur.k_degree - m)
            deltas[n] = (m * m, -m)
        else:
            curves[n] = cur
    edges = {k: m for k, m in G.edges.items() if v not in k}
    new_edges = {}
    ns = sorted(nbrs)
    for idx, a in enumerate(ns):
        for b in ns[idx + 1:]:
            add = nbrs[a] * nbrs[b]
            k = _key(a, b)
            edges[k] = edges.get(k, 0) + add
            new_edges[(a, b)] = add
    k2 = G.ambient_k_squared + 1
    rec = ContractionRecord(v, dict(nbrs), deltas, new_edges, G.ambient_k_squared, k2)
    return IntersectionGraph(curves, edges, k2), rec


def auto_candidates(G: IntersectionGraph) -> list[str]:
    """(-1)-curves whose contraction does not compete with another one.

    A (-1)-curve meeting another (-1)-curve is skipped: contracting either
    one makes the other non-exceptional, so the outcome would depend on an
    arbitrary choice.  The remaining candidates are pairwise disjoint, hence
    their contractions commute.
    """
    minus = {n for n, c in G.curves.items() if c.is_minus_one_curve}
    return sorted(n for n in minus if not (set(G.neighbors(n)) & minus))


def contract_all(G: IntersectionGraph, order: Sequence[str] | None = None
                 ) -> tuple[IntersectionGraph, list[ContractionRecord]]:
    """Contract an explicit ``order`` of curves, or run the automatic driver.

    The driver repeatedly contracts the lexicographically smallest entry of
    :func:`auto_candidates` until none is left.
    """
    trace: list[ContractionRecord] = []
    if order is not None:
        for v in order:
            G, rec = contract(G, v)
            trace.append(rec)
        return G, trace
    while True:
        cands = auto_candidates(G)
        if not cands:
            return G, trace
        G, rec = contract(G, cands[0])
        trace.append(rec)


def del_pezzo_degree(final: IntersectionGraph) -> int:
    return final.ambient_k_squared


def singular_curve_notes(G: IntersectionGraph, before: IntersectionGraph | None = None
                         ) -> dict[str, str]:
    """Describe curves whose arithmetic genus went up, i.e. that became singular.

    Without ``before`` every curve is assumed to have started smooth and rational.
    """
    notes = {}
    for n, c in G.curves.items():
        start = before.curves[n].p_a if before is not None and n in before.curves else 0
        gained = c.p_a - start
        if gained == 1:
            notes[n] = "acquired one cusp or node"
        elif gained > 1:
            notes[n] = f"acquired singular points (p_a {start} -> {c.p_a})"
    return notes
