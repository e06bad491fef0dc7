"""Mutation of marked vertex sets, paths of mutations and exchange quivers."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .dynkin import DynkinData, DynkinDiagram
from .errors import ResourceCapExceeded
from .rootlat import subgraph_involution


class MutationError(ValueError):
    pass


def _diagram(ctx: DynkinData | DynkinDiagram) -> DynkinDiagram:
    return ctx.ambient if isinstance(ctx, DynkinData) else ctx


def canonical(J: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(J)))


def iota(ctx: DynkinData | DynkinDiagram, J: Iterable[int], i: int) -> int:
    """inv of the full subgraph on J + i, evaluated at i."""
    D = _diagram(ctx)
    J = frozenset(J)
    if i in J:
        raise MutationError(f"vertex {i} is already in {sorted(J)}")
    D._check(i)
    G = tuple(sorted(J | {i}))
    # only the component of i matters
    comp = next(c for c in D.components(G) if i in c)
    if D.affine and len(comp) == len(D.vertices):
        return i
    return dict(subgraph_involution(D, comp))[i]


def mutate(ctx: DynkinData | DynkinDiagram, J: Iterable[int], i: int) -> frozenset[int]:
    J = frozenset(J)
    return (J | {i}) - {iota(ctx, J, i)}


@dataclass(frozen=True)
class MutationPath:
    base: tuple[int, ...]
    steps: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "base", canonical(self.base))
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)


def path_trace(ctx, path: MutationPath) -> list[frozenset[int]]:
    """Every intermediate set, starting with the base."""
    cur = frozenset(path.base)
    trace = [cur]
    for k, i in enumerate(path.steps):
        if i in cur:
            raise MutationError(f"step {k} uses vertex {i} which lies in {sorted(cur)}")
        cur = mutate(ctx, cur, i)
        trace.append(cur)
    return trace


def apply_path(ctx, path: MutationPath) -> frozenset[int]:
    return path_trace(ctx, path)[-1]


def reverse_path(ctx, path: MutationPath) -> MutationPath:
    trace = path_trace(ctx, path)
    back = [iota(ctx, trace[k], i) for k, i in enumerate(path.steps)]
    return MutationPath(canonical(trace[-1]), tuple(reversed(back)))


@dataclass(frozen=True)
class ExchangeQuiver:
    vertices: tuple[tuple[int, ...], ...]
    arrows: tuple[tuple[tuple[int, ...], int, tuple[int, ...]], ...]

    def successors(self, J) -> list[tuple[int, tuple[int, ...]]]:
        J = canonical(J)
        return [(lab, dst) for src, lab, dst in self.arrows if src == J]

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices],
                "arrows": [[list(s), lab, list(d)] for s, lab, d in self.arrows]}


def complement_name(D: DynkinDiagram, J: Iterable[int]) -> str:
    """Node name listing the unmarked vertices, e.g. "014"."""
    J = set(J)
    sep = "" if max(D.vertices) < 10 else ","
    return sep.join(str(v) for v in D.vertices if v not in J)


def mutation_class(ctx: DynkinData | DynkinDiagram, J: Iterable[int] | None = None,
                   allowed: Iterable[int] | None = None,
                   max_vertices: int | None = None) -> ExchangeQuiver:
    """Breadth-first closure of J under mutation.

    ``allowed`` restricts the labels used (e.g. the finite part for
    spherical paths)."""
    D = _diagram(ctx)
    if J is None:
        if not isinstance(ctx, DynkinData):
            raise MutationError("a starting set is required")
        J = ctx.marked
    seed = canonical(J)
    labels = tuple(sorted(D.vertices if allowed is None else allowed))
    if len(seed) >= len(D.vertices):
        raise MutationError("the marked set must be a proper subset")
    order = [seed]
    seen = {seed}
    arrows = []
    queue = deque([seed])
    while queue:
        cur = queue.popleft()
        for i in labels:
            if i in cur:
                continue
            nxt = canonical(mutate(D, cur, i))
            arrows.append((cur, i, nxt))
            if nxt not in seen:
                if max_vertices is not None and len(seen) >= max_vertices:
                    raise ResourceCapExceeded(f"mutation class exceeds {max_vertices} vertices")
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return ExchangeQuiver(tuple(order), tuple(arrows))


def quiver_dot(D: DynkinDiagram, Q: ExchangeQuiver) -> str:
    lines = ["digraph exchange {"]
    for v in Q.vertices:
        lines.append(f'  "{complement_name(D, v)}";')
    for s, lab, d in Q.arrows:
        lines.append(f'  "{complement_name(D, s)}" -> "{complement_name(D, d)}" [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
