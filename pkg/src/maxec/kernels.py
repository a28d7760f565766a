"""Instance shrinking that preserves the threshold question.

Three independent rule sets, each returning a verdict plus enough lifting
information to pull a valid coloring of the reduced graph back to the
original:

* standard: after matching preprocessing, vertices outside the cover with
  identical neighborhoods are interchangeable, so each neighborhood class
  keeps only a bounded number of members;
* dual (threshold n - k for the deficit k): a graph with a vertex of degree
  above 3k + 6 is a No-instance, and an adjacent pair of degree-2 vertices
  can be contracted, shifting the optimum down by exactly one;
* four-cycle-free: private degree-1 neighbors of a cover vertex beyond the
  second are redundant, and the optimum is preserved exactly.

Reduced graphs are renumbered to contiguous ids; ``Lifting.vertex_map``
maps them back and ``lift_coloring`` replays deletions and contractions in
reverse.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import EdgeColoring, Graph, verify_coloring
from .matching import Continue, ForcedNo, ForcedYes, matching_preprocess

CLASS_FLOOR = 10
PRIVATE_KEEP = 2


class FourCycleError(ValueError):
    """The four-cycle-free rules were asked to run on a graph with a C4."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"graph contains the 4-cycle {self.cycle}")


@dataclass(frozen=True)
class Reduced:
    """A shrunken instance; ``k`` keeps the caller's parameter semantics
    (color target for the standard and four-cycle-free rules, vertex
    deficit for the dual rules)."""

    graph: Graph
    k: int


@dataclass(frozen=True)
class Lifting:
    """How to pull a reduced-graph coloring back to the original.

    ``vertex_map[i]`` is the original id of reduced vertex i. ``actions``
    are in application order, over original ids: ``("del", v, twin)``
    removed v whose edges can copy the colors of the surviving twin with
    the same neighborhood (twin is None for isolated vertices), and
    ``("contract", v, u, vprime)`` removed the degree-2 vertex v and
    bridged (u, vprime).
    """

    vertex_map: tuple[int, ...]
    actions: tuple[tuple, ...] = ()

    def sidecar_lines(self) -> tuple[str, ...]:
        """Line rendering of the actions, 1-based like the graph format."""
        out = []
        for action in self.actions:
            if action[0] == "del":
                out.append(f"del {action[1] + 1}")
            else:
                _, v, u, vp = action
                out.append(f"contract {v + 1} into {u + 1} via {vp + 1}")
        return tuple(out)


@dataclass(frozen=True)
class KernelResult:
    verdict: object
    lifting: Lifting | None


@dataclass(frozen=True)
class NeighborhoodClass:
    """Vertices outside the cover sharing the exact neighborhood ``T``."""

    T: tuple[int, ...]
    members: tuple[int, ...]


def neighborhood_classes(g: Graph, cover) -> tuple[NeighborhoodClass, ...]:
    """Partition of the non-cover vertices by neighborhood, sorted by T.

    Requires ``cover`` to be a vertex cover so the neighborhoods are
    subsets of it.
    """
    inside = set(cover)
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        if v in inside:
            continue
        t = tuple(sorted(g.neighbors(v)))
        if any(w not in inside for w in t):
            raise ValueError("the given set is not a vertex cover")
        groups.setdefault(t, []).append(v)
    return tuple(
        NeighborhoodClass(t, tuple(sorted(vs)))
        for t, vs in sorted(groups.items())
    )


def _compact(g: Graph, deleted: set[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph on the surviving vertices with contiguous ids."""
    keep = [v for v in range(g.n) if v not in deleted]
    index = {v: i for i, v in enumerate(keep)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u not in deleted and v not in deleted
    ]
    return Graph(len(keep), edges), tuple(keep)


def kernelize_standard(g: Graph, k: int) -> KernelResult:
    """Bound every neighborhood class outside the cover.

    Matching preprocessing may settle the instance outright. Otherwise
    each class I_T keeps its max(10, |T|+1) lowest members; the survivors
    can replay any role a deleted twin had, so the threshold question is
    unchanged and the parameter stays k.
    """
    if k < 2:
        raise ValueError("color target must be at least 2")
    pre = matching_preprocess(g, k)
    if isinstance(pre, (ForcedNo, ForcedYes)):
        return KernelResult(pre, None)
    assert isinstance(pre, Continue)
    deleted: set[int] = set()
    actions = []
    for cls in neighborhood_classes(g, pre.cover):
        bound = max(CLASS_FLOOR, len(cls.T) + 1)
        if len(cls.members) <= bound:
            continue
        twin = cls.members[0] if cls.T else None
        for v in cls.members[bound:]:
            deleted.add(v)
            actions.append(("del", v, twin))
    actions.sort(key=lambda a: a[1])
    reduced, vmap = _compact(g, deleted)
    return KernelResult(Reduced(reduced, k), Lifting(vmap, tuple(actions)))


def has_c4(g: Graph):
    """Some 4-cycle ``(a, w1, b, w2)`` in cycle order, or None.

    Two vertices with two common neighbors close a 4-cycle, so the scan
    records, per nonadjacent-or-adjacent pair, the first middle vertex.
    """
    seen: dict[tuple[int, int], int] = {}
    for w in range(g.n):
        nbrs = g.neighbors(w)
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                key = (a, b) if a < b else (b, a)
                if key in seen:
                    return (key[0], seen[key], key[1], w)
                seen[key] = w
    return None


def kernelize_c4free(g: Graph, k: int) -> KernelResult:
    """Trim private degree-1 neighbors of cover vertices to two apiece.

    Only meaningful without 4-cycles (otherwise refused): then distinct
    cover vertices share at most one neighbor, so degree-1 neighbors
    dominate the outside and the trim caps the instance at 2k(2k+2)
    vertices. Two survivors per cover vertex are enough to replay any
    palette the deleted ones supported, so the optimum is preserved
    exactly. Isolated vertices are dropped as well.
    """
    if k < 2:
        raise ValueError("color target must be at least 2")
    cycle = has_c4(g)
    if cycle is not None:
        raise FourCycleError(cycle)
    pre = matching_preprocess(g, k)
    if isinstance(pre, (ForcedNo, ForcedYes)):
        return KernelResult(pre, None)
    assert isinstance(pre, Continue)
    inside = set(pre.cover)
    deleted: set[int] = set()
    actions = []
    for v in sorted(inside):
        private = sorted(
            w for w in g.neighbors(v)
            if w not in inside and g.degree(w) == 1
        )
        twin = private[0] if private else None
        for w in private[PRIVATE_KEEP:]:
            deleted.add(w)
            actions.append(("del", w, twin))
    for v in range(g.n):
        if v not in inside and g.degree(v) == 0:
            deleted.add(v)
            actions.append(("del", v, None))
    actions.sort(key=lambda a: a[1])
    reduced, vmap = _compact(g, deleted)
    return KernelResult(Reduced(reduced, k), Lifting(vmap, tuple(actions)))


class _Scratch:
    """Mutable adjacency over original ids for the contraction loop."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.alive = set(range(g.n))
        self.nbrs = {v: set(g.neighbors(v)) for v in range(g.n)}

    def contract(self, v: int, u: int, vp: int) -> None:
        self.nbrs[u].discard(v)
        self.nbrs[vp].discard(v)
        del self.nbrs[v]
        self.alive.discard(v)
        self.nbrs[u].add(vp)
        self.nbrs[vp].add(u)

    def find_pair(self):
        """First (u, v, vprime) in scan order with u, v adjacent degree-2
        vertices and the bridge (u, vprime) not yet an edge."""
        for u in sorted(self.alive):
            if len(self.nbrs[u]) != 2:
                continue
            for v in sorted(self.nbrs[u]):
                if len(self.nbrs[v]) != 2:
                    continue
                (vp,) = self.nbrs[v] - {u}
                if vp not in self.nbrs[u]:
                    return u, v, vp
        return None

    def to_graph(self) -> tuple[Graph, tuple[int, ...]]:
        keep = sorted(self.alive)
        index = {v: i for i, v in enumerate(keep)}
        edges = sorted(
            (index[v], index[w])
            for v in keep
            for w in self.nbrs[v]
            if v < w
        )
        return Graph(len(keep), edges), tuple(keep)


def kernelize_dual(g: Graph, k: int) -> KernelResult:
    """Shrink for the threshold n - k, keeping the deficit k fixed.

    A vertex of degree above 3k + 6 already forces No. Otherwise every
    adjacent degree-2 pair (u, v) with the bridge (u, v') absent is
    contracted: the optimum drops by exactly one while n drops by one, so
    the question is unchanged. Pairs closing a triangle are skipped to
    stay simple.
    """
    if k < 0:
        raise ValueError("deficit must be nonnegative")
    if g.max_degree() > 3 * k + 6:
        return KernelResult(ForcedNo(), None)
    scratch = _Scratch(g)
    actions = []
    while True:
        hit = scratch.find_pair()
        if hit is None:
            break
        u, v, vp = hit
        scratch.contract(v, u, vp)
        actions.append(("contract", v, u, vp))
    reduced, vmap = scratch.to_graph()
    return KernelResult(Reduced(reduced, k), Lifting(vmap, tuple(actions)))


def contract_adjacent_degree_two(g: Graph):
    """One contraction step, or None when no pair qualifies.

    Returns ``(graph, lifting)``; the optimum of ``graph`` is exactly one
    below the optimum of ``g``.
    """
    scratch = _Scratch(g)
    hit = scratch.find_pair()
    if hit is None:
        return None
    u, v, vp = hit
    scratch.contract(v, u, vp)
    reduced, vmap = scratch.to_graph()
    return reduced, Lifting(vmap, (("contract", v, u, vp),))


def lift_coloring(original: Graph, reduced: Graph, lifting: Lifting,
                  coloring: EdgeColoring) -> EdgeColoring:
    """Valid coloring of ``original`` from one of ``reduced``.

    Deleted vertices copy their twin's edge colors, keeping every palette
    intact; each unwound contraction moves the bridge color onto the edge
    (v, v') and spends one fresh color on (u, v), which is fine because u
    has degree 2 there. The result keeps all reduced colors and gains one
    per contraction.
    """
    if len(coloring) != reduced.m:
        raise ValueError("coloring does not fit the reduced graph")
    col: dict[tuple[int, int], int] = {}
    for eid, (a, b) in enumerate(reduced.edges):
        pa, pb = lifting.vertex_map[a], lifting.vertex_map[b]
        col[(min(pa, pb), max(pa, pb))] = coloring[eid]
    fresh = coloring.k
    for action in reversed(lifting.actions):
        if action[0] == "del":
            _, v, twin = action
            for _, t in original.incident(v):
                key = (min(v, t), max(v, t))
                col[key] = col[(min(twin, t), max(twin, t))]
        else:
            _, v, u, vp = action
            bridge = (min(u, vp), max(u, vp))
            color = col.pop(bridge)
            col[(min(v, vp), max(v, vp))] = color
            col[(min(u, v), max(u, v))] = fresh
            fresh += 1
    if len(col) != original.m:
        raise ValueError("lifting does not reach the original edge set")
    lifted = EdgeColoring([col[e] for e in original.edges])
    check = verify_coloring(original, lifted)
    if not check.valid:
        raise AssertionError("lifted coloring failed verification")
    return lifted
