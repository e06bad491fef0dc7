"""Simply-laced Dynkin diagrams, their affine extensions and marked data.

Vertex numbering (the extended vertex is always 0)::

    A_n   1 - 2 - ... - n              affine: 0 joined to 1 and n
    D_n   1 - 2 - ... - (n-2) - (n-1)  affine: 0 joined to 2
                          |
                          n
    E_n   1 - 2 - 3 - ... - (n-1)      affine: E_6: 0 joined to 6
                  |                            E_7: 0 joined to 1
                  n                            E_8: 0 joined to 7

The tail vertex n of E_n always hangs off vertex 3.  For E_7 this puts the
affine diagram on the line 0 - 1 - ... - 6 with 7 under 3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

FAMILIES = ("A", "D", "E")


class DiagramError(ValueError):
    """Unknown family, rank out of range or a bad vertex reference."""


@dataclass(frozen=True)
class DynkinDiagram:
    family: str
    rank: int
    affine: bool
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    extended_vertex: int | None = None

    @cached_property
    def _adj(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(n) for v, n in adj.items()}

    @cached_property
    def index(self) -> dict[int, int]:
        """Position of each vertex id in ``vertices``."""
        return {v: k for k, v in enumerate(self.vertices)}

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}" + ("~" if self.affine else "")

    def neighbours(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._adj[v]

    def _check(self, v: int) -> None:
        if v not in self.index:
            raise DiagramError(f"vertex {v} not in {self.name}")

    def cartan(self, i: int, j: int) -> int:
        return cartan_pairing(self, i, j)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        vs = self.vertices
        return tuple(tuple(cartan_pairing(self, a, b) for b in vs) for a in vs)

    def components(self, subset: Iterable[int]) -> list[tuple[int, ...]]:
        """Connected components of the full subgraph on ``subset``, sorted."""
        rest = set(subset)
        for v in rest:
            self._check(v)
        comps = []
        while rest:
            start = min(rest)
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self._adj[v]:
                    if w in rest and w not in seen:
                        seen.add(w)
                        stack.append(w)
            rest -= seen
            comps.append(tuple(sorted(seen)))
        return sorted(comps)

    def finite_part(self) -> "DynkinDiagram":
        """The underlying finite diagram (drops the extended vertex)."""
        if not self.affine:
            return self
        return build_diagram(self.family, self.rank, affine=False)

    @cached_property
    def labels(self) -> dict[int, int]:
        return kac_labels(self)

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "rank": self.rank,
            "affine": self.affine,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "labels": {},
        }
        if self.affine:
            out["labels"] = {str(v): d for v, d in sorted(self.labels.items())}
        return out


def _chain(vs: list[int]) -> list[tuple[int, int]]:
    return [(vs[k], vs[k + 1]) for k in range(len(vs) - 1)]


_E_BRANCH = {6: 3, 7: 3, 8: 3}
# where the extended vertex attaches
_E_EXTEND = {6: 6, 7: 1, 8: 7}


def build_diagram(family: str, rank: int, affine: bool = False) -> DynkinDiagram:
    family = family.upper()
    if family not in FAMILIES:
        raise DiagramError(f"unknown family {family!r}")
    if family == "A" and rank < 1:
        raise DiagramError("A_n needs n >= 1")
    if family == "D" and rank < 4:
        raise DiagramError("D_n needs n >= 4")
    if family == "E" and rank not in _E_BRANCH:
        raise DiagramError("E_n needs n in {6, 7, 8}")

    finite = list(range(1, rank + 1))
    if family == "A":
        edges = _chain(finite)
    elif family == "D":
        edges = _chain(finite[:-1]) + [(rank - 2, rank)]
    else:
        edges = _chain(finite[:-1]) + [(_E_BRANCH[rank], rank)]

    if affine:
        if family == "A":
            edges += [(0, 1)] if rank == 1 else [(0, 1), (0, rank)]
        elif family == "D":
            edges.append((0, 2))
        else:
            edges.append((0, _E_EXTEND[rank]))
        vertices = tuple([0] + finite)
    else:
        vertices = tuple(finite)

    edges = tuple(sorted(tuple(sorted(e)) for e in edges))
    return DynkinDiagram(family, rank, affine, vertices, edges,
                         0 if affine else None)


def parse_diagram(text: str) -> DynkinDiagram:
    """Parse names like ``A1~`` or ``E7`` (tilde marks the affine diagram)."""
    s = text.strip()
    affine = s.endswith("~")
    s = s.rstrip("~")
    if len(s) < 2 or not s[1:].isdigit():
        raise DiagramError(f"cannot parse diagram {text!r}")
    return build_diagram(s[0], int(s[1:]), affine)


def cartan_pairing(D: DynkinDiagram, i: int, j: int) -> int:
    D._check(i)
    D._check(j)
    if i == j:
        return 2
    if j in D._adj[i]:
        return -2 if (D.affine and D.family == "A" and D.rank == 1) else -1
    return 0


def kac_labels(D: DynkinDiagram) -> dict[int, int]:
    """Primitive positive kernel vector of the affine Cartan matrix."""
    if not D.affine:
        raise DiagramError("Kac labels need an affine diagram")
    import sympy

    C = sympy.Matrix(D.cartan_matrix)
    kernel = C.nullspace()
    if len(kernel) != 1:
        raise DiagramError("affine Cartan matrix must have a 1-dimensional kernel")
    vec = kernel[0]
    vec = vec / vec[D.index[0]]
    den = sympy.ilcm(*[sympy.fraction(x)[1] for x in vec])
    ints = [int(x * den) for x in vec]
    g = sympy.igcd(*ints)
    ints = [x // g for x in ints]
    if any(x <= 0 for x in ints):
        raise DiagramError("kernel vector is not positive")
    return dict(zip(D.vertices, ints))


def longest_involution(D: DynkinDiagram, subset: Iterable[int] | None = None) -> dict[int, int]:
    """Involution i -> inv(i) with w_G s_i w_G = s_inv(i), for G the full
    subgraph on ``subset`` (default: all of D).  Identity when W(G) is infinite."""
    from .rootlat import subgraph_involution

    verts = tuple(sorted(D.vertices if subset is None else subset))
    return dict(subgraph_involution(D, verts))


@dataclass(frozen=True)
class DynkinData:
    """Marked data J inside Delta = ambient minus the extended vertex."""

    ambient: DynkinDiagram
    marked: frozenset[int] = field(default_factory=frozenset)
    # mutated sets may contain the extended vertex; only the seed must avoid it
    anywhere: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.ambient.affine:
            raise DiagramError("ambient diagram must be affine")
        object.__setattr__(self, "marked", frozenset(self.marked))
        for v in self.marked:
            self.ambient._check(v)
        if self.anywhere:
            if len(self.ambient.vertices) - len(self.marked) < 2:
                raise DiagramError("at least two vertices must stay unmarked")
        elif not self.marked < frozenset(self.delta_part):
            raise DiagramError(
                f"marked set {sorted(self.marked)} must be a proper subset of "
                f"{sorted(self.delta_part)}")

    @property
    def delta_part(self) -> tuple[int, ...]:
        return tuple(v for v in self.ambient.vertices if v != 0)

    @property
    def unmarked(self) -> tuple[int, ...]:
        """Vertices of the restricted lattice, i.e. ambient minus J."""
        return tuple(v for v in self.ambient.vertices if v not in self.marked)

    @property
    def labels(self) -> Mapping[int, int]:
        return self.ambient.labels

    def with_marked(self, marked: Iterable[int]) -> "DynkinData":
        """Same ambient diagram with another marked set, e.g. a mutation of this one."""
        return DynkinData(self.ambient, frozenset(marked), anywhere=True)

    def __repr__(self) -> str:
        return f"DynkinData({self.ambient.name}, J={sorted(self.marked)})"


def make_context(diagram: str | DynkinDiagram, marked: Iterable[int] = ()) -> DynkinData:
    if isinstance(diagram, str):
        diagram = parse_diagram(diagram)
    return DynkinData(diagram, frozenset(marked))
